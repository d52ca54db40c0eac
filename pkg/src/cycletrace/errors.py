"""Exception types raised across the package."""


class CycleTraceError(Exception):
    """Base class for all package errors."""


class ResourceLimitError(CycleTraceError):
    """A Groebner computation exceeded its configured basis or pair bound."""


class NotFiniteError(CycleTraceError):
    """The ideal does not define a finite covering or algebra."""


class NotZeroDimensional(NotFiniteError):
    """A residue problem whose ideal is not zero-dimensional over the base."""


class LiftFailure(CycleTraceError):
    """No lift to a separated system was found within the degree cap."""


class EliminantDegenerate(CycleTraceError):
    """Random linear forms kept failing to separate fiber points."""


class AllProjectionsDegenerate(CycleTraceError):
    """No trial projection was finite on the cycle."""


class FamilyError(CycleTraceError):
    """A family file is malformed or inconsistent.

    ``line`` and ``column`` are 1-based when known.
    """

    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if line is not None:
            where = f"{source or '<input>'}:{line}"
            if column is not None:
                where += f":{column}"
            where += ": "
        super().__init__(where + message)


class ParseError(FamilyError):
    """Text could not be parsed as a polynomial, rational function or form."""
