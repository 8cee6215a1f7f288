"""Exception hierarchy shared by every module."""


class ExoticaError(Exception):
    """Base class; ``code`` is the stable name reported by the CLI."""

    @property
    def code(self):
        return type(self).__name__


class NotAUnit(ExoticaError, ZeroDivisionError):
    pass


class ZeroScale(ExoticaError, ValueError):
    pass


class InvalidDivisor(ExoticaError, ValueError):
    pass


class NotInVD(ExoticaError, ValueError):
    """A function that should lie in V_D does not."""


class DivisorMismatch(ExoticaError, ValueError):
    pass


class NotInSubalgebra(ExoticaError, ValueError):
    pass


class NotASubdivisor(ExoticaError, ValueError):
    pass


class ZeroNotInSupport(ExoticaError, ValueError):
    pass


class NotInSupport(ExoticaError, ValueError):
    pass


class BadMultiplicity(ExoticaError, ValueError):
    pass


class ChainMismatch(ExoticaError, ValueError):
    pass


class UnsupportedFirstComponent(ExoticaError, ValueError):
    pass


class UnsupportedSubstitution(ExoticaError, ValueError):
    pass


class NotInCatalogGauge(ExoticaError, ValueError):
    pass


class InvalidLattice(ExoticaError, ValueError):
    pass


class InvalidKodairaGroup(ExoticaError, ValueError):
    pass


class ParseError(ExoticaError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        elif column is not None:
            where = f"column {column}: "
        super().__init__(where + message)


class UnboundName(ExoticaError, NameError):
    def __init__(self, name, line=None):
        self.name = name
        self.line = line
        super().__init__(f"line {line}: unbound name {name!r}" if line else f"unbound name {name!r}")


class TypeMismatch(ExoticaError, TypeError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)
