"""
Exceptions raised by dwarith.

Every exception carries a machine-readable ``code`` and the process exit
status the command line uses when it escapes a command: 1 for model
violations, 2 for schema errors and 3 for internal invariant failures.

"""

MODEL_VIOLATION = 1
SCHEMA_ERROR = 2
INTERNAL_FAILURE = 3


class DWArithError(Exception):
    """
    Base class for all dwarith errors.

    Args:
        message (str): Human readable description.
        **details: Structured context (offending tuples, names, values).

    Attributes:
        code (str): Machine-readable error code.
        exit_status (int): Exit status used by the command line.
        details (dict): Structured context.

    """
    code = 'dwarith_error'
    exit_status = INTERNAL_FAILURE

    def __init__(self, message, **details):
        super(DWArithError, self).__init__(message)
        self.message = message
        self.details = details

    def to_json(self):
        """Structured representation used in reports."""
        return {'code': self.code,
                'message': self.message,
                'details': _jsonable(self.details)}


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_jsonable(x) for x in value]
    if isinstance(value, (str, bool)) or value is None:
        return value
    try:
        return int(value)
    except (TypeError, ValueError):
        return str(value)


class ModelError(DWArithError):
    """A supplied model violates a mathematical requirement."""
    code = 'model_violation'
    exit_status = MODEL_VIOLATION


class NotAGroup(ModelError):
    code = 'not_a_group'


class GeneratorsDontGenerate(ModelError):
    code = 'generators_dont_generate'


class NotAHomomorphism(ModelError):
    code = 'not_a_homomorphism'


class DegreeTooLow(ModelError):
    code = 'degree_too_low'


class NotACocycle(ModelError):
    code = 'not_a_cocycle'


class MismatchedFiber(ModelError):
    code = 'mismatched_fiber'


class ModelViolation(ModelError):
    code = 'model_violation'


class ReciprocityViolation(ModelError):
    code = 'reciprocity_violation'


class BetaDependence(ModelError):
    code = 'beta_dependence'


class ModulusMismatch(ModelError):
    code = 'modulus_mismatch'


class BaseMismatch(ModelError):
    code = 'base_mismatch'


class InvalidWitness(ModelError):
    code = 'invalid_witness'


class ResourceLimit(ModelError):
    code = 'resource_limit'


class SchemaError(DWArithError):
    """
    The model document is malformed.

    Args:
        errors (list of tuple): ``(path, message)`` pairs.

    """
    code = 'schema_error'
    exit_status = SCHEMA_ERROR

    def __init__(self, errors):
        self.errors = list(errors)
        lines = ['{}: {}'.format(path, msg) for path, msg in self.errors]
        super(SchemaError, self).__init__('; '.join(lines), errors=self.errors)


class DanglingReference(DWArithError):
    code = 'dangling_reference'
    exit_status = SCHEMA_ERROR


class InvariantFailure(DWArithError):
    """An identity that must hold by construction did not."""
    code = 'invariant_failure'
    exit_status = INTERNAL_FAILURE
