"""Mixins and core functionality."""
import logging
from contextlib import closing
from multiprocessing.pool import ThreadPool

from dwarith import CONFIG
from dwarith.core.errors import DWArithError
from dwarith.core.structure import CheckRecord

logger = logging.getLogger(__name__)


class SweepMixin(object):
    """
    Batch execution of independent checks.

    Workers receive one namedtuple message each and return a
    :class:`CheckRecord <dwarith.core.structure.CheckRecord>` (or a list of
    them). Results come back in message order regardless of scheduling.

    """
    _max_threads = CONFIG['general']['max_threads']

    def _process_messages(self, func, messages):
        n_messages = len(messages)
        logger.info('%s processing %s messages.', func.__name__, n_messages)
        if n_messages == 0:
            return []

        worker = _guarded(func)

        # Create thread pool
        with closing(ThreadPool(max(1, min(self._max_threads, n_messages)))) as thread_pool:
            results = thread_pool.map(worker, messages)

        records = []
        for result in results:
            if isinstance(result, CheckRecord):
                records.append(result)
            else:
                records.extend(result)

        n_successful = sum([True for x in records if x.ok])
        n_total = len(records)
        log_message = '{} out of {} checks passed'.format(n_successful, n_total)
        if n_successful == 0 and n_total:
            logger.error(log_message)
        elif n_successful < n_total:
            logger.warning(log_message)
        else:
            logger.info(log_message)

        return records


def _guarded(func):
    """Turn model errors raised by a worker into failed records."""

    def worker(msg):
        try:
            return func(msg)
        except DWArithError as e:
            name = getattr(msg, 'name', func.__name__)
            logger.error('%s failed: %s', name, e)
            return CheckRecord(name, message=e.message, error=e)

    worker.__name__ = func.__name__
    return worker
