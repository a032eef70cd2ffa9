"""Exception hierarchy shared by every stage of the synthesizer."""


class SynthError(Exception):
    pass


# typing
class TypingError(SynthError):
    pass


class UnknownPrimitive(TypingError):
    pass


class TypeMismatch(TypingError):
    pass


class ArityMismatch(TypeMismatch):
    """Application of a non-function, or a wrong argument count."""


class VariableOutOfRange(TypingError):
    pass


# evaluation
class EvaluationError(SynthError):
    pass


class NoMatch(EvaluationError):
    pass


class KgResolution(EvaluationError):
    pass


# grammars and enumeration
class EmptyGrammar(SynthError):
    pass


class NotDerivable(SynthError):
    pass


class TooLarge(SynthError):
    pass


class GenerationExhausted(SynthError):
    pass


# inputs
class ParseError(SynthError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class EmptyGraph(SynthError):
    pass


class NoPath(SynthError):
    pass


class InconsistentSplit(SynthError):
    pass
