"""FlashFill-style string DSL: regex values, primitives, typing, evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from . import kernels
from .errors import (
    ArityMismatch,
    EvaluationError,
    KgResolution,
    NoMatch,
    TypeMismatch,
    UnknownPrimitive,
    VariableOutOfRange,
)
from .program import Apply, Constant, INPUT, KgPath, Primitive, Program, Variable, spine
from .types import (
    CONSTANT_IN,
    CONSTANT_OUT,
    REGEXP,
    STRING,
    Arrow,
    SemType,
    accepts,
    arguments,
    arrow,
)

# ---- regex values ----------------------------------------------------------


class RegexValue:
    __slots__ = ()

    @property
    def anchored(self) -> bool:
        """True when the pattern can only match at the end of the string."""
        return False


@dataclass(frozen=True)
class EndAnchor(RegexValue):
    @property
    def anchored(self) -> bool:
        return True

    def __str__(self) -> str:
        return "$"


@dataclass(frozen=True)
class AnyChar(RegexValue):
    def __str__(self) -> str:
        return "."


@dataclass(frozen=True)
class NotChars(RegexValue):
    excluded: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not self.excluded:
            raise ValueError("excluded character set must be non-empty")

    def __str__(self) -> str:
        return f"[^{''.join(sorted(self.excluded))}]+"


@dataclass(frozen=True)
class NotCharsEnd(RegexValue):
    excluded: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not self.excluded:
            raise ValueError("excluded character set must be non-empty")

    @property
    def anchored(self) -> bool:
        return True

    def __str__(self) -> str:
        return f"[^{''.join(sorted(self.excluded))}]+$"


@dataclass(frozen=True)
class Concat(RegexValue):
    left: RegexValue
    right: RegexValue

    def __post_init__(self) -> None:
        if self.left.anchored:
            raise ValueError("an end-anchored pattern must be the rightmost part")

    @property
    def anchored(self) -> bool:
        return self.right.anchored

    def __str__(self) -> str:
        return f"{self.left}{self.right}"


END_ANCHOR = EndAnchor()
ANY_CHAR = AnyChar()


@lru_cache(maxsize=4096)
def flatten(regex: RegexValue) -> tuple:
    """Kernel encoding of a regex: a tuple of ``(kind, excluded)`` parts."""
    if isinstance(regex, Concat):
        return flatten(regex.left) + flatten(regex.right)
    if isinstance(regex, EndAnchor):
        return ((kernels.END, ""),)
    if isinstance(regex, AnyChar):
        return ((kernels.ANY, ""),)
    if isinstance(regex, NotChars):
        return ((kernels.RUN, "".join(sorted(regex.excluded))),)
    if isinstance(regex, NotCharsEnd):
        return ((kernels.RUN, "".join(sorted(regex.excluded))), (kernels.END, ""))
    raise TypeMismatch(f"not a regex value: {regex!r}")


def search(s: str, regex: RegexValue) -> tuple[int, int]:
    if not isinstance(s, str):
        raise TypeMismatch(f"expected a string, got {type(s).__name__}")
    span = kernels.regex_search(s, flatten(regex))
    if span is None:
        raise NoMatch(f"{regex} does not occur in {s!r}")
    return span


# ---- primitives -------------------------------------------------------------


def _concat(a: str, b: str) -> str:
    return a + b


def _concat_if(a: str, b: str) -> str:
    return a if b in a else a + b


def _match(s: str, r: RegexValue) -> str:
    i, j = search(s, r)
    return s[i:j]


def _split_fst(s: str, r: RegexValue) -> str:
    i, _ = search(s, r)
    return s[:i]


def _split_snd(s: str, r: RegexValue) -> str:
    _, j = search(s, r)
    return s[j:]


def _compose(r1: RegexValue, r2: RegexValue) -> RegexValue:
    if not isinstance(r1, RegexValue) or not isinstance(r2, RegexValue):
        raise TypeMismatch("compose expects two regexes")
    if r1.anchored:
        raise NoMatch(f"{r1}{r2} can never match: {r1} is anchored at the end")
    return Concat(r1, r2)


def _not_chars(x: str) -> RegexValue:
    if not x:
        raise NoMatch("[^]+ excludes nothing")
    return NotChars(frozenset(x))


def _not_chars_end(x: str) -> RegexValue:
    if not x:
        raise NoMatch("[^]+$ excludes nothing")
    return NotCharsEnd(frozenset(x))


@dataclass(frozen=True)
class PrimitiveSpec:
    name: str
    type: SemType
    impl: Callable | None
    value: object = None
    # argument positions with a duplicated variant taking a constant type
    constant_slots: Mapping[int, SemType] = field(default_factory=dict)

    @property
    def arity(self) -> int:
        return len(arguments(self.type))

    def variants(self) -> list[tuple[SemType, ...]]:
        """Argument type lists the grammar offers for this primitive."""
        base = tuple(arguments(self.type))
        out = [base]
        for pos, ctype in sorted(self.constant_slots.items()):
            out.append(base[:pos] + (ctype,) + base[pos + 1:])
        return out


def _flashfill() -> dict[str, PrimitiveSpec]:
    specs = [
        PrimitiveSpec("$", REGEXP, None, END_ANCHOR),
        PrimitiveSpec(".", REGEXP, None, ANY_CHAR),
        PrimitiveSpec("not_chars", arrow(STRING, REGEXP), _not_chars, constant_slots={0: CONSTANT_IN}),
        PrimitiveSpec("not_chars_end", arrow(STRING, REGEXP), _not_chars_end,
                      constant_slots={0: CONSTANT_IN}),
        PrimitiveSpec("compose", arrow(REGEXP, REGEXP, REGEXP), _compose),
        PrimitiveSpec("concat", arrow(STRING, STRING, STRING), _concat, constant_slots={1: CONSTANT_OUT}),
        PrimitiveSpec("concat_if", arrow(STRING, STRING, STRING), _concat_if,
                      constant_slots={1: CONSTANT_OUT}),
        PrimitiveSpec("match", arrow(STRING, REGEXP, STRING), _match),
        PrimitiveSpec("split_fst", arrow(STRING, REGEXP, STRING), _split_fst),
        PrimitiveSpec("split_snd", arrow(STRING, REGEXP, STRING), _split_snd),
    ]
    return {s.name: s for s in specs}


FLASHFILL: dict[str, PrimitiveSpec] = _flashfill()
DSLS = {"flashfill": FLASHFILL}

KG_PATH_TYPE = Arrow(STRING, STRING)


# ---- typing -----------------------------------------------------------------


def type_of(program: Program, arity: int, dsl: Mapping[str, PrimitiveSpec] = FLASHFILL) -> SemType:
    if isinstance(program, Primitive):
        spec = dsl.get(program.name)
        if spec is None:
            raise UnknownPrimitive(program.name)
        return spec.type
    if isinstance(program, Variable):
        if not 0 <= program.index < arity:
            raise VariableOutOfRange(f"variable {program.index} with {arity} inputs")
        return STRING
    if isinstance(program, Constant):
        return CONSTANT_IN if program.flavor == INPUT else CONSTANT_OUT
    if isinstance(program, KgPath):
        return KG_PATH_TYPE
    assert isinstance(program, Apply)
    ftype = type_of(program.function, arity, dsl)
    if not isinstance(ftype, Arrow):
        raise ArityMismatch(f"{program.function.sexpr} has type {ftype} and cannot be applied")
    atype = type_of(program.argument, arity, dsl)
    if not accepts(ftype.argument, atype):
        raise TypeMismatch(f"{program.argument.sexpr}: expected {ftype.argument}, got {atype}")
    return ftype.result


def constants_well_placed(program: Program, dsl: Mapping[str, PrimitiveSpec] = FLASHFILL) -> bool:
    """True iff every constant sits in a slot whose primitive has a constant variant."""
    head, args = spine(program)
    if not args:
        return not isinstance(head, Constant)
    slots = dsl[head.name].constant_slots if isinstance(head, Primitive) and head.name in dsl else {}
    for i, a in enumerate(args):
        if isinstance(a, Constant):
            want = CONSTANT_IN if a.flavor == INPUT else CONSTANT_OUT
            if slots.get(i) != want:
                return False
        elif not constants_well_placed(a, dsl):
            return False
    return True


# ---- evaluation ---------------------------------------------------------------

KgEnv = Mapping[str, Callable[[str], str]]


def evaluate(
    program: Program,
    inputs: Sequence[str],
    kg_env: KgEnv | None = None,
    dsl: Mapping[str, PrimitiveSpec] = FLASHFILL,
):
    try:
        return _eval(program, inputs, kg_env or {}, dsl)
    except TypeError as exc:
        raise TypeMismatch(str(exc)) from exc


def _eval(program: Program, inputs: Sequence[str], kg_env: KgEnv, dsl) -> object:
    head, args = spine(program)
    if isinstance(head, Variable):
        if args:
            raise TypeMismatch("a variable cannot be applied")
        if not 0 <= head.index < len(inputs):
            raise VariableOutOfRange(f"variable {head.index} with {len(inputs)} inputs")
        return inputs[head.index]
    if isinstance(head, Constant):
        if args:
            raise TypeMismatch("a constant cannot be applied")
        return head.text
    if isinstance(head, KgPath):
        if len(args) != 1:
            raise ArityMismatch(f"{head.sexpr} takes exactly one argument")
        return _follow(kg_env, head.path_id, _eval(args[0], inputs, kg_env, dsl))
    spec = dsl.get(head.name)
    if spec is None:
        raise UnknownPrimitive(head.name)
    if spec.impl is None:
        if args:
            raise ArityMismatch(f"{head.name} takes no arguments")
        return spec.value
    if len(args) != spec.arity:
        raise ArityMismatch(f"{head.name} expects {spec.arity} arguments, got {len(args)}")
    return spec.impl(*[_eval(a, inputs, kg_env, dsl) for a in args])


def _follow(kg_env: KgEnv, path_id: str, value: object) -> str:
    if not isinstance(value, str):
        raise TypeMismatch("knowledge paths take a string")
    try:
        fn = kg_env[path_id]
    except KeyError:
        raise KgResolution(f"no knowledge function for path {path_id!r}") from None
    return fn(value)


_FAIL = object()


class BatchEvaluator:
    """Evaluates programs on a fixed list of input tuples, memoizing subprograms.

    Programs produced by enumeration share subtrees, so caching per node turns
    most evaluations into a single primitive call per example.
    """

    def __init__(self, inputs: Sequence[Sequence[str]], kg_env: KgEnv | None = None,
                 dsl: Mapping[str, PrimitiveSpec] = FLASHFILL, cache_limit: int = 500_000):
        self.inputs = [list(i) for i in inputs]
        self.kg_env = kg_env or {}
        self.dsl = dsl
        self.cache_limit = cache_limit
        self._cache: dict[Program, object] = {}

    def values(self, program: Program) -> tuple | None:
        """Per-example outputs, or None if evaluation fails on any example."""
        try:
            out = self._values(program)
        except TypeError as exc:
            raise TypeMismatch(str(exc)) from exc
        return None if out is _FAIL else out

    def _values(self, program: Program):
        cache = self._cache
        hit = cache.get(program)
        if hit is not None:
            return hit
        head, args = spine(program)
        if isinstance(head, Variable) and not args:
            out = tuple(i[head.index] for i in self.inputs)
        elif isinstance(head, Constant) and not args:
            out = (head.text,) * len(self.inputs)
        else:
            arg_values = []
            for a in args:
                v = self._values(a)
                if v is _FAIL:
                    out = _FAIL
                    break
                arg_values.append(v)
            else:
                out = self._apply(head, args, arg_values)
        if len(cache) >= self.cache_limit:
            cache.clear()
        cache[program] = out
        return out

    def _apply(self, head: Program, args: list, arg_values: list):
        n = len(self.inputs)
        try:
            if isinstance(head, KgPath):
                if len(args) != 1:
                    raise ArityMismatch(f"{head.sexpr} takes exactly one argument")
                return tuple(_follow(self.kg_env, head.path_id, v) for v in arg_values[0])
            if not isinstance(head, Primitive):
                raise TypeMismatch(f"{head.sexpr} cannot be applied")
            spec = self.dsl.get(head.name)
            if spec is None:
                raise UnknownPrimitive(head.name)
            if spec.impl is None:
                if args:
                    raise ArityMismatch(f"{head.name} takes no arguments")
                return (spec.value,) * n
            if len(args) != spec.arity:
                raise ArityMismatch(f"{head.name} expects {spec.arity} arguments, got {len(args)}")
            impl = spec.impl
            return tuple(impl(*vals) for vals in zip(*arg_values))
        except EvaluationError:
            return _FAIL
