"""Exceptions with CLI exit-code significance."""


class ParseError(ValueError):
    """Malformed textual input (CLI exit code 2)."""


class HardFault(RuntimeError):
    """An invariant the theory guarantees was observed broken (CLI exit code 3)."""
