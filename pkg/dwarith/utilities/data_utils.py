"""Utilities for working with check reports."""

from dwarith.core.structure import CheckReport


def concatenate_reports(reports, name=None):
    """
    Concatenates CheckReports.

    .. code-block:: python

        from dwarith.local_theory import check_local_axioms
        from dwarith.utilities.data_utils import concatenate_reports
        reports = [check_local_axioms(d, G, c) for d in data]
        combined = concatenate_reports(reports, 'locals')

    Args:
        reports (sequence): CheckReports to be combined.
        name (str, optional): Name of the combined report. Defaults to the
            input names joined with ``+``.

    Returns:
        CheckReport: Report holding every record of the inputs, in order.

    """
    if not all(isinstance(x, CheckReport) for x in reports):
        raise TypeError('Only CheckReports can be concatenated.')

    records = []
    for report in reports:
        records.extend(report.records)

    return CheckReport(name or '+'.join(r.name for r in reports), records)
