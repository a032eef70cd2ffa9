"""Best-first enumeration of a weighted grammar, plus an exhaustive oracle.

Programs come out by non-increasing probability; equal probabilities are
ordered by their S-expression. Each non-terminal owns a heap of candidate
derivations and a successor table. Popping a derivation pushes its neighbours:
the same rule with one child replaced by that child's successor in the
child's own stream. Streams are built on demand, so the first programs of a
huge grammar are cheap.
"""

from __future__ import annotations

import heapq
import itertools
from typing import Iterator, Mapping, Sequence

from .dsl import FLASHFILL, BatchEvaluator, KgEnv, PrimitiveSpec
from .errors import TooLarge, TypingError
from .grammar import SCALE, NonTerminal, WeightedGrammar
from .program import Program

BRUTE_FORCE_LIMIT = 100_000


def order_key(score: int, program: Program) -> tuple[int, str]:
    return -score, program.sexpr


class _Stream:
    __slots__ = ("heap", "seen", "succ", "score", "derivation")

    def __init__(self) -> None:
        self.heap: list = []
        self.seen: set[Program] = set()
        self.succ: dict[Program | None, Program | None] = {}
        self.score: dict[Program, int] = {}
        self.derivation: dict[Program, tuple[int, tuple[Program, ...]]] = {}


class HeapSearch:
    def __init__(self, weighted: WeightedGrammar):
        self.weighted = weighted
        self.rules = weighted.grammar.rules
        self.scores = weighted.scores
        self._streams: dict[NonTerminal, _Stream] = {}

    def __iter__(self) -> Iterator[tuple[Program, float]]:
        start = self.weighted.grammar.start
        if start not in self.rules:
            return
        stream = self._stream(start)
        current = None
        while True:
            current = self._next(start, current)
            if current is None:
                return
            yield current, stream.score[current] / SCALE

    def _stream(self, nt: NonTerminal) -> _Stream:
        stream = self._streams.get(nt)
        if stream is None:
            stream = self._streams[nt] = _Stream()
            for i, rule in enumerate(self.rules[nt]):
                children = tuple(self._next(c, None) for c in rule.children)
                if any(c is None for c in children):
                    continue
                self._push(nt, stream, i, children)
        return stream

    def _push(self, nt: NonTerminal, stream: _Stream, rule_index: int,
              children: tuple[Program, ...]) -> None:
        rule = self.rules[nt][rule_index]
        program = rule.build(children)
        if program in stream.seen:
            return
        stream.seen.add(program)
        score = self.scores[nt][rule_index]
        for child_nt, child in zip(rule.children, children):
            score += self._streams[child_nt].score[child]
        stream.score[program] = score
        stream.derivation[program] = (rule_index, children)
        heapq.heappush(stream.heap, (-score, program.sexpr, program))

    def _next(self, nt: NonTerminal, program: Program | None) -> Program | None:
        """Successor of ``program`` in the stream of ``nt`` (first one for None)."""
        stream = self._stream(nt)
        if program in stream.succ:
            return stream.succ[program]
        if not stream.heap:
            stream.succ[program] = None
            return None
        _, _, best = heapq.heappop(stream.heap)
        stream.succ[program] = best
        rule_index, children = stream.derivation[best]
        rule = self.rules[nt][rule_index]
        for i, child in enumerate(children):
            nxt = self._next(rule.children[i], child)
            if nxt is not None:
                self._push(nt, stream, rule_index, children[:i] + (nxt,) + children[i + 1:])
        return best


def heap_search(weighted: WeightedGrammar) -> Iterator[tuple[Program, float]]:
    """Lazy stream of ``(program, log-probability)`` in non-increasing probability."""
    return iter(HeapSearch(weighted))


def brute_force_enumerate(weighted: WeightedGrammar,
                          limit: int = BRUTE_FORCE_LIMIT) -> list[tuple[Program, float]]:
    """Every derivable program with its log-probability, sorted like ``heap_search``."""
    grammar = weighted.grammar
    if grammar.start not in grammar.rules:
        return []
    if grammar.count_programs() > limit:
        raise TooLarge(f"grammar derives more than {limit} programs")
    table: dict[NonTerminal, list[tuple[Program, int]]] = {}
    for nt in sorted(grammar.rules, key=lambda n: n.depth):
        out = []
        for i, rule in enumerate(grammar.rules[nt]):
            options = [table[c] for c in rule.children]
            for combo in itertools.product(*options):
                score = weighted.scores[nt][i] + sum(s for _, s in combo)
                out.append((rule.build([p for p, _ in combo]), score))
        table[nt] = out
    ranked = sorted(table[grammar.start], key=lambda e: order_key(e[1], e[0]))
    return [(p, s / SCALE) for p, s in ranked]


def verify(program: Program, task, kg_env: KgEnv | None = None,
           dsl: Mapping[str, PrimitiveSpec] = FLASHFILL) -> bool:
    """True iff ``program`` reproduces every example output of ``task``."""
    evaluator = BatchEvaluator([ex.inputs for ex in task.examples], kg_env, dsl)
    return outputs_match(evaluator, program, [ex.output for ex in task.examples])


def outputs_match(evaluator: BatchEvaluator, program: Program, outputs: Sequence[str]) -> bool:
    try:
        values = evaluator.values(program)
    except (TypingError, IndexError):
        return False
    return values is not None and list(values) == list(outputs)
