"""Exception types shared by the library and the command line."""


class OpdkitError(Exception):
    """Base class for library errors."""


class InputError(OpdkitError):
    """Malformed or dangling input data (exit code 2 at the CLI)."""


class EnumerationLimitError(InputError):
    """A bounded enumeration would exceed the configured cap."""


class InternalInconsistency(OpdkitError):
    """Two independent decision procedures disagreed (exit code 3)."""
