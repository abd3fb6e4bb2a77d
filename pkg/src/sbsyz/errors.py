"""Exception hierarchy shared across the package."""


class SbsyzError(Exception):
    """Base class for all package errors."""


class DSLSyntaxError(SbsyzError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)


class CompositionError(SbsyzError):
    """Two paths were composed whose endpoints do not match."""


class AlgebraError(SbsyzError):
    pass


class NotAdmissible(AlgebraError):
    pass


class NotSpecialBiserial(AlgebraError):
    def __init__(self, axiom, where, detail=""):
        self.axiom = axiom
        self.where = where
        msg = f"axiom '{axiom}' fails at {where}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class InconsistentRelations(AlgebraError):
    pass


class WordError(SbsyzError):
    """A word violates one of the validity rules; `rule` names which one."""

    def __init__(self, rule, position, detail=""):
        self.rule = rule
        self.position = position
        msg = f"invalid word ({rule}) at pair {position}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class WordSyntaxError(SbsyzError):
    pass


class EngineError(SbsyzError):
    """Internal inconsistency of the combinatorial engine."""


class OracleError(SbsyzError):
    pass
