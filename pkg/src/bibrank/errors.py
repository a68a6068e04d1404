"""Exception types shared across the package."""


class UndefinedInputError(ValueError):
    """The requested value is mathematically undefined for the given input.

    Raised for zero denominators (e.g. ratio with 0% ICP) and zero-variance
    vectors fed to a correlation.
    """


class SchemaError(ValueError):
    """Input does not match the expected file schema (wrong header, bad row)."""


class UnknownGroupError(ValueError):
    """A subject group name is not defined by the active scheme."""


class FixtureIntegrityError(RuntimeError):
    """A bundled data asset does not match its recorded checksum."""
