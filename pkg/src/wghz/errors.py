"""Exception hierarchy shared by the library and the CLI."""


class DiagnosticsError(ValueError):
    """Base class for every rejected input."""


class DimensionError(DiagnosticsError):
    pass


class NotHermitianError(DiagnosticsError):
    pass


class TraceError(DiagnosticsError):
    pass


class NotPositiveError(DiagnosticsError):
    pass


class DensityParseError(DiagnosticsError):
    pass


class DomainError(DiagnosticsError):
    """Parameter outside the domain of an operation (n, p, qubit index...)."""


class CertificationError(RuntimeError):
    """A closed-form result disagreed with its independent numerical check."""
