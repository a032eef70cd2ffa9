"""Depth-bounded typed grammars compiled from a DSL, and their weighted variants.

Depth is measured on the curried tree: a leaf has depth 1 and ``Apply(f, a)``
has depth ``1 + max(depth f, depth a)``. A primitive with ``k`` arguments
applied at remaining depth ``d`` therefore puts its ``i``-th argument
(0-based) at remaining depth ``d - (k - i)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .dsl import FLASHFILL, KG_PATH_TYPE, PrimitiveSpec
from .errors import EmptyGrammar, NotDerivable
from .program import INPUT, OUTPUT, Constant, KgPath, Primitive, Program, Variable, apply, spine
from .types import CONSTANT_IN, CONSTANT_OUT, STRING, SemType, arguments, final_result


@dataclass(frozen=True)
class NonTerminal:
    type: SemType
    depth: int

    def __str__(self) -> str:
        return f"NT({self.type},{self.depth})"

    def sort_key(self) -> tuple[str, int]:
        return str(self.type), self.depth


@dataclass(frozen=True)
class Rule:
    head: Program
    children: tuple[NonTerminal, ...]
    key: str

    def build(self, args: Sequence[Program]) -> Program:
        return apply(self.head, *args)

    def __str__(self) -> str:
        rhs = " ".join(str(c) for c in self.children)
        return f"{self.head.sexpr} -> {rhs}" if rhs else self.head.sexpr


class TypedGrammar:
    def __init__(self, start: NonTerminal, rules: Mapping[NonTerminal, Sequence[Rule]], arity: int):
        self.start = start
        self.rules: dict[NonTerminal, tuple[Rule, ...]] = {nt: tuple(rs) for nt, rs in rules.items()}
        self.arity = arity

    @property
    def max_depth(self) -> int:
        return self.start.depth

    def nonterminals(self) -> list[NonTerminal]:
        return sorted(self.rules, key=NonTerminal.sort_key)

    def dump(self) -> str:
        lines = []
        for nt in self.nonterminals():
            for rule in self.rules[nt]:
                lines.append(f"{nt}: {rule}")
        return "\n".join(lines) + "\n"

    def count_programs(self) -> int:
        counts: dict[NonTerminal, int] = {}
        for nt in sorted(self.rules, key=lambda n: n.depth):
            total = 0
            for rule in self.rules[nt]:
                n = 1
                for c in rule.children:
                    n *= counts[c]
                total += n
            counts[nt] = total
        return counts[self.start]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TypedGrammar)
            and self.start == other.start
            and self.arity == other.arity
            and self.rules == other.rules
        )


def _dedupe(items: Iterable[str]) -> list[str]:
    seen: dict[str, None] = {}
    for x in items:
        seen.setdefault(x, None)
    return list(seen)


def rule_key(name: str, arg_types: tuple[SemType, ...], base: tuple[SemType, ...]) -> str:
    if arg_types == base:
        return name
    return f"{name}:{','.join(str(t) for t in arg_types)}"


def compile_grammar(
    dsl: Mapping[str, PrimitiveSpec] = FLASHFILL,
    arity: int = 1,
    constants_in: Sequence[str] = (),
    constants_out: Sequence[str] = (),
    kg_paths: Sequence[str] = (),
    max_depth: int = 6,
    start_type: SemType = STRING,
) -> TypedGrammar:
    if max_depth < 1:
        raise ValueError("max_depth must be positive")

    leaves: dict[SemType, list[Rule]] = {}
    functions: list[tuple[SemType, Program, tuple[SemType, ...], str]] = []

    for i in range(arity):
        leaves.setdefault(STRING, []).append(Rule(Variable(i), (), f"var{i}"))
    for c in _dedupe(constants_in):
        leaves.setdefault(CONSTANT_IN, []).append(Rule(Constant(c, INPUT), (), "cst_in"))
    for c in _dedupe(constants_out):
        leaves.setdefault(CONSTANT_OUT, []).append(Rule(Constant(c, OUTPUT), (), "cst_out"))
    for name, spec in dsl.items():
        if spec.arity == 0:
            leaves.setdefault(spec.type, []).append(Rule(Primitive(name), (), name))
            continue
        base = tuple(arguments(spec.type))
        for variant in spec.variants():
            functions.append((final_result(spec.type), Primitive(name), variant, rule_key(name, variant, base)))
    for path_id in _dedupe(kg_paths):
        functions.append((final_result(KG_PATH_TYPE), KgPath(path_id), (STRING,), "kg_path"))

    types = set(leaves) | {start_type}
    for result, _, args, _ in functions:
        types.add(result)
        types.update(args)

    rules: dict[NonTerminal, list[Rule]] = {}
    for t in types:
        for d in range(1, max_depth + 1):
            nt = NonTerminal(t, d)
            out = list(leaves.get(t, ()))
            for result, head, args, key in functions:
                k = len(args)
                if result != t or d < k + 1:
                    continue
                children = tuple(NonTerminal(a, d - (k - i)) for i, a in enumerate(args))
                out.append(Rule(head, children, key))
            rules[nt] = out

    start = NonTerminal(start_type, max_depth)
    trimmed = _trim(rules, start)
    if start not in trimmed:
        raise EmptyGrammar(f"no program of type {start_type} with depth <= {max_depth}")
    return TypedGrammar(start, trimmed, arity)


def _trim(rules: dict[NonTerminal, list[Rule]], start: NonTerminal) -> dict[NonTerminal, list[Rule]]:
    productive: set[NonTerminal] = set()
    changed = True
    while changed:
        changed = False
        for nt, rs in rules.items():
            if nt not in productive and any(all(c in productive for c in r.children) for r in rs):
                productive.add(nt)
                changed = True
    kept = {
        nt: [r for r in rs if all(c in productive for c in r.children)]
        for nt, rs in rules.items()
        if nt in productive
    }
    if start not in kept:
        return {}
    reachable = {start}
    stack = [start]
    while stack:
        for r in kept[stack.pop()]:
            for c in r.children:
                if c not in reachable:
                    reachable.add(c)
                    stack.append(c)
    return {nt: kept[nt] for nt in sorted(reachable, key=NonTerminal.sort_key)}


# ---- weights ----------------------------------------------------------------


# Rule log-probabilities quantized to multiples of 2**-40 (about 9e-13). Program
# scores are integer sums, so equal-probability programs tie exactly whatever the
# summation order, and the enumeration order is a strict total order.
SCALE = 2 ** 40


def quantize(log_prob: float) -> int:
    return round(log_prob * SCALE)


def combine(rule_log_prob: float, child_log_probs: Iterable[float]) -> float:
    """Log-probability of a derivation from its rule and its children."""
    total = rule_log_prob
    for lp in child_log_probs:
        total += lp
    return total


class WeightedGrammar:
    def __init__(self, grammar: TypedGrammar, log_probs: Mapping[NonTerminal, Sequence[float]]):
        self.grammar = grammar
        self.log_probs: dict[NonTerminal, tuple[float, ...]] = {
            nt: tuple(log_probs[nt]) for nt in grammar.rules
        }
        self.scores: dict[NonTerminal, tuple[int, ...]] = {
            nt: tuple(quantize(lp) for lp in lps) for nt, lps in self.log_probs.items()
        }

    @classmethod
    def from_weights(cls, grammar: TypedGrammar,
                     weights: Mapping[NonTerminal, Sequence[float]]) -> "WeightedGrammar":
        """Normalizes positive per-rule weights into log-probabilities."""
        log_probs = {}
        for nt, rs in grammar.rules.items():
            w = list(weights[nt])
            if len(w) != len(rs) or any(x <= 0 for x in w):
                raise ValueError(f"weights for {nt} must be {len(rs)} positive numbers")
            total = math.fsum(w)
            log_probs[nt] = [math.log(x / total) for x in w]
        return cls(grammar, log_probs)

    def probabilities(self, nt: NonTerminal) -> list[float]:
        return [math.exp(lp) for lp in self.log_probs[nt]]

    def dump(self) -> str:
        lines = []
        for nt in self.grammar.nonterminals():
            for rule, lp in zip(self.grammar.rules[nt], self.log_probs[nt]):
                lines.append(f"{nt}: {rule}  p={math.exp(lp):.6g}")
        return "\n".join(lines) + "\n"


def uniform_weights(grammar: TypedGrammar) -> WeightedGrammar:
    return WeightedGrammar(
        grammar, {nt: [-math.log(len(rs))] * len(rs) for nt, rs in grammar.rules.items()}
    )


def sample(weighted: WeightedGrammar, rng: random.Random) -> Program:
    """Top-down sampling; the depth bound is built into the non-terminals."""
    return _sample(weighted, weighted.grammar.start, rng)


def _sample(weighted: WeightedGrammar, nt: NonTerminal, rng: random.Random) -> Program:
    rules = weighted.grammar.rules[nt]
    probs = weighted.probabilities(nt)
    u = rng.random()
    index = len(rules) - 1
    acc = 0.0
    for i, p in enumerate(probs):
        acc += p
        if u < acc:
            index = i
            break
    rule = rules[index]
    return rule.build([_sample(weighted, c, rng) for c in rule.children])


def derivation(grammar: TypedGrammar, program: Program,
               nt: NonTerminal | None = None) -> list[tuple[NonTerminal, int]]:
    """Pre-order list of ``(non-terminal, rule index)`` used to derive ``program``."""
    out = _derive(grammar, program, grammar.start if nt is None else nt)
    if out is None:
        raise NotDerivable(program.sexpr)
    return out


def _derive(grammar: TypedGrammar, program: Program, nt: NonTerminal):
    head, args = spine(program)
    for i, rule in enumerate(grammar.rules.get(nt, ())):
        if rule.head != head or len(rule.children) != len(args):
            continue
        steps = [(nt, i)]
        for child_nt, arg in zip(rule.children, args):
            sub = _derive(grammar, arg, child_nt)
            if sub is None:
                break
            steps.extend(sub)
        else:
            return steps
    return None


def log_probability(weighted: WeightedGrammar, program: Program) -> float:
    lp = _log_probability(weighted, program, weighted.grammar.start)
    if lp is None:
        raise NotDerivable(program.sexpr)
    return lp


def _log_probability(weighted: WeightedGrammar, program: Program, nt: NonTerminal) -> float | None:
    head, args = spine(program)
    rules = weighted.grammar.rules.get(nt, ())
    for i, rule in enumerate(rules):
        if rule.head != head or len(rule.children) != len(args):
            continue
        child_lps = []
        for child_nt, arg in zip(rule.children, args):
            lp = _log_probability(weighted, arg, child_nt)
            if lp is None:
                break
            child_lps.append(lp)
        else:
            return combine(weighted.log_probs[nt][i], child_lps)
    return None
