"""Base data structures for verification results."""


class CheckReport(object):
    """
    Class for handling check records.

    Args:
        name (str): Report name, e.g. the model or datum being checked.
        records (list of :class:`CheckRecord <dwarith.core.structure.CheckRecord>`):
            Individual check outcomes.

    """

    def __init__(self, name, records=None):
        self.name = name
        self._records = list(records or [])

    def __iter__(self):
        return iter(self._records)

    def __len__(self):
        return len(self._records)

    @property
    def records(self):
        """All records in insertion order."""
        return list(self._records)

    @property
    def failed(self):
        """Records for checks that failed."""
        return [x for x in self._records if not x.ok]

    @property
    def succeeded(self):
        """Records for checks that passed."""
        return [x for x in self._records if x.ok]

    @property
    def ok(self):
        """True if every check passed."""
        return not self.failed

    def add(self, record):
        """Append a record and return it."""
        self._records.append(record)
        return record

    def extend(self, records):
        """Append several records."""
        self._records.extend(records)

    def check(self, name, passed, message=None, content=None, error=None):
        """
        Record a boolean outcome.

        Args:
            name (str): Check name.
            passed (bool): Outcome.
            message (str, optional): Description of a failure.
            content: Values worth reporting, e.g. both sides of an equality.
            error (exception, optional): Error to attach. If omitted and the
                check failed, ``message`` becomes the error.

        Returns:
            :class:`CheckRecord <dwarith.core.structure.CheckRecord>`

        """
        if not passed and error is None:
            error = message or 'check failed'
        return self.add(CheckRecord(name, message=message, content=content,
                                    error=error))

    def to_json(self):
        """Structured form with stable ordering."""
        return {'name': self.name,
                'ok': self.ok,
                'passed': len(self.succeeded),
                'total': len(self._records),
                'records': [x.to_json() for x in self._records]}


class CheckRecord(object):
    """
    Individual check record.

    Args:
        name (str): Check name.
        message (str): Free-form note.
        content: Reported values. Must be JSON-serializable or expose
            ``to_json``.
        error (exception or str): Failure, if any.

    """

    def __init__(self, name, message=None, content=None, error=None):
        self.name = name
        self.message = message
        self.content = content
        self.error = error

    @property
    def ok(self):
        """
        Check if failure occurred.

        Returns:
            bool: False if error occurred, and True otherwise.

        """
        if self.error:
            return False
        return True

    def to_json(self):
        data = {'name': self.name, 'ok': self.ok}
        if self.message:
            data['message'] = self.message
        if self.content is not None:
            data['content'] = _to_json(self.content)
        if self.error:
            if hasattr(self.error, 'to_json'):
                data['error'] = self.error.to_json()
            else:
                data['error'] = {'code': 'check_failed', 'message': str(self.error)}
        return data


def _to_json(value):
    if hasattr(value, 'to_json'):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): _to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_json(x) for x in value]
    return value
