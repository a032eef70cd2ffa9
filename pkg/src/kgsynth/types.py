"""Semantic types: four atoms and a curried arrow."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Arrow:
    argument: "SemType"
    result: "SemType"

    def __str__(self) -> str:
        arg = f"({self.argument})" if isinstance(self.argument, Arrow) else str(self.argument)
        return f"{arg} -> {self.result}"


SemType = Atom | Arrow

STRING = Atom("STRING")
REGEXP = Atom("REGEXP")
CONSTANT_IN = Atom("CONSTANT_IN")
CONSTANT_OUT = Atom("CONSTANT_OUT")

# constant types are accepted wherever a STRING is expected
CONSTANT_TYPES = frozenset({CONSTANT_IN, CONSTANT_OUT})


def arrow(*types: SemType) -> SemType:
    """Right-nested arrow: ``arrow(a, b, c) == Arrow(a, Arrow(b, c))``."""
    if len(types) == 1:
        return types[0]
    return Arrow(types[0], arrow(*types[1:]))


def arguments(t: SemType) -> list[SemType]:
    out = []
    while isinstance(t, Arrow):
        out.append(t.argument)
        t = t.result
    return out


def final_result(t: SemType) -> SemType:
    while isinstance(t, Arrow):
        t = t.result
    return t


def accepts(expected: SemType, actual: SemType) -> bool:
    if expected == actual:
        return True
    return expected == STRING and actual in CONSTANT_TYPES
