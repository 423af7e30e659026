"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class StratamonError(Exception):
    exit_code = 1
    kind = "error"


class InputError(StratamonError, ValueError):
    """Malformed or inconsistent input (exit code 1)."""

    exit_code = 1
    kind = "invalid_input"


class UnsupportedInstance(StratamonError):
    """The instance is valid but outside what the algorithms handle (exit code 2)."""

    exit_code = 2
    kind = "unsupported_instance"


class ConsistencyError(StratamonError, RuntimeError):
    """An internal certificate failed to re-verify (exit code 3)."""

    exit_code = 3
    kind = "internal_consistency"
