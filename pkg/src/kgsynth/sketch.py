"""Constant extraction and decomposition of a task into constants and holes."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .errors import InconsistentSplit

MIN_CONSTANT_LENGTH = 3


def longest_common_factor(strings: Sequence[str]) -> str:
    """Longest substring shared by all strings.

    Ties go to the earliest occurrence in the first string; two factors of the
    same length cannot start at the same place, so no further tie-break is
    ever needed.
    """
    if not strings:
        raise ValueError("longest_common_factor needs at least one string")
    return kernels.longest_common_factor(list(strings))


def get_constants(strings: Sequence[str]) -> list[str]:
    """Recursive longest-common-factor extraction, left to right.

    Factors of length 2 or less are rejected, as is any split containing an
    empty string. The leftmost occurrence of the factor splits each string.
    """
    if not strings:
        raise ValueError("get_constants needs at least one string")
    if any(s == "" for s in strings):
        return []
    factor = longest_common_factor(strings)
    if len(factor) < MIN_CONSTANT_LENGTH:
        return []
    cuts = [s.index(factor) for s in strings]
    left = [s[:i] for s, i in zip(strings, cuts)]
    right = [s[i + len(factor):] for s, i in zip(strings, cuts)]
    return get_constants(left) + [factor] + get_constants(right)


def align(text: str, constants: Sequence[str]) -> list[str]:
    """Gaps of ``text`` around the leftmost in-order occurrences of ``constants``."""
    gaps = []
    pos = 0
    for c in constants:
        i = text.find(c, pos)
        if i < 0:
            raise InconsistentSplit(c)
        gaps.append(text[pos:i])
        pos = i + len(c)
    gaps.append(text[pos:])
    return gaps


@dataclass(frozen=True)
class Hole:
    index: int


@dataclass
class Sketch:
    segments: list  # str constants and Hole markers, in output order
    holes: list[list[str]]  # per hole, per example
    input_entities: list[list[list[str]]]  # per example, per input position

    def fragments(self, example: int) -> list[str]:
        return [s if isinstance(s, str) else self.holes[s.index][example] for s in self.segments]

    def reconstruct(self, example: int) -> str:
        return "".join(self.fragments(example))

    @property
    def constants(self) -> list[str]:
        return [s for s in self.segments if isinstance(s, str)]

    def dump(self) -> str:
        parts = []
        for s in self.segments:
            if isinstance(s, str):
                parts.append(f"const({json.dumps(s, ensure_ascii=False)})")
            else:
                parts.append(f"hole#{s.index}")
        return " · ".join(parts)


def _split_all(texts: Sequence[str], constants: list[str]) -> tuple[list[str], list[list[str]]]:
    """Prunes constants (longest offender first) until every text aligns."""
    constants = list(constants)
    while constants:
        offenders = set()
        gaps = []
        for t in texts:
            try:
                gaps.append(align(t, constants))
            except InconsistentSplit as exc:
                offenders.add(exc.args[0])
        if not offenders:
            return constants, gaps
        worst = max(offenders, key=lambda c: (len(c), -constants.index(c)))
        constants.remove(worst)
    return [], [[t] for t in texts]


def input_candidates(values: Sequence[str]) -> list[list[str]]:
    """Per value: fragments left after removing shared constants, then the value itself."""
    constants, gaps = _split_all(values, get_constants(values))
    out = []
    for value, g in zip(values, gaps):
        cands = [x for x in g if x and x != value] if constants else []
        cands.append(value)
        out.append(cands)
    return out


def decompose(examples: Sequence[tuple[Sequence[str], str]]) -> Sketch:
    if len(examples) < 2:
        raise ValueError("decomposition needs at least two examples")
    outputs = [out for _, out in examples]
    if any(o == "" for o in outputs):
        raise ValueError("decomposition needs non-empty outputs")
    constants, gaps = _split_all(outputs, get_constants(outputs))

    segments: list = []
    holes: list[list[str]] = []
    for k in range(len(constants) + 1):
        column = [g[k] for g in gaps]
        if any(column):
            segments.append(Hole(len(holes)))
            holes.append(column)
        if k < len(constants):
            if segments and isinstance(segments[-1], str):
                segments[-1] += constants[k]
            else:
                segments.append(constants[k])

    arity = len(examples[0][0])
    per_position = [input_candidates([ins[j] for ins, _ in examples]) for j in range(arity)]
    input_entities = [[per_position[j][e] for j in range(arity)] for e in range(len(examples))]
    return Sketch(segments, holes, input_entities)
