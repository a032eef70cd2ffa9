"""End-to-end synthesis: sketch, graph paths per hole, syntactic fallback, assembly."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .dsl import FLASHFILL, BatchEvaluator, PrimitiveSpec
from .errors import ArityMismatch, EmptyGrammar, NoPath, SynthError
from .grammar import compile_grammar
from .heap_search import heap_search, outputs_match, verify
from .knowledge import KgEnvironment, KnowledgeGraph, path_id
from .prediction import UNIFORM, PredictionModel, predict_weights
from .pretty import pretty_print
from .program import OUTPUT, Constant, KgPath, Primitive, Program, Variable, apply
from .sketch import Sketch, decompose, get_constants
from .task import Task

SOLVED = "Solved"
TIMEOUT = "Timeout"
NO_PROGRAM = "NoProgram"

KIND_PATH = "kg-path"
KIND_EXTRACTOR = "kg-path-with-extractor"
KIND_SYNTACTIC = "syntactic"

GRAPH_SHARE = 0.2
CHECK_EVERY = 64


@dataclass(frozen=True)
class SolverConfig:
    timeout: float = 60.0
    max_path_len: int = 2
    max_depth: int = 6
    extractor_budget: int = 500
    extractor_depth: int = 4
    literal_budget: int = 5000

    def __post_init__(self) -> None:
        if self.timeout <= 0 or self.max_path_len < 1 or self.max_depth < 2 \
                or self.extractor_budget < 0 or self.extractor_depth < 2:
            raise ValueError(f"invalid solver configuration: {self}")


@dataclass
class SolveStats:
    programs_enumerated: int = 0
    paths_queried: int = 0
    wall_time: float = 0.0
    hole_kinds: list[str | None] = field(default_factory=list)


@dataclass
class SolveResult:
    outcome: str
    program: Program | None
    stats: SolveStats

    @property
    def solved(self) -> bool:
        return self.outcome == SOLVED

    def to_json(self) -> dict:
        program = None
        if self.program is not None:
            program = {"sexpr": self.program.sexpr, "pretty": pretty_print(self.program)}
        return {
            "outcome": self.outcome,
            "program": program,
            "stats": {
                "programs_enumerated": self.stats.programs_enumerated,
                "paths_queried": self.stats.paths_queried,
                "wall_time": round(self.stats.wall_time, 6),
                "hole_kinds": self.stats.hole_kinds,
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)


class _Deadline(Exception):
    pass


def assemble(sketch: Sketch, hole_programs: Sequence[Program]) -> Program:
    """Right-nested concat chain of constant segments and hole programs."""
    if len(hole_programs) != len(sketch.holes):
        raise ArityMismatch(f"sketch has {len(sketch.holes)} holes, got {len(hole_programs)} programs")
    parts = [Constant(s, OUTPUT) if isinstance(s, str) else hole_programs[s.index]
             for s in sketch.segments]
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = apply(Primitive("concat"), p, out)
    return out


def separator_constants(values: Sequence[str]) -> list[str]:
    """Non-alphanumeric characters shared by all values, singly and joined in order."""
    common = set(values[0])
    for v in values[1:]:
        common &= set(v)
    ordered = [c for c in dict.fromkeys(values[0]) if c in common and not c.isalnum()]
    out = list(ordered)
    if len(ordered) > 1:
        out.append("".join(ordered))
    return out


def _input_constants(task: Task) -> list[str]:
    out: list[str] = []
    for j in range(task.arity):
        values = [ex.inputs[j] for ex in task.examples]
        out += get_constants(values) + separator_constants(values)
    return list(dict.fromkeys(out))


def _output_constants(fragments: Sequence[str]) -> list[str]:
    chars = set(fragments[0])
    for f in fragments[1:]:
        chars &= set(f)
    shared = sorted(c for c in chars if not c.isalnum())
    return list(dict.fromkeys(get_constants(fragments) + shared))


def _characters_available(task: Task, fragments: Sequence[str], constants_out: Sequence[str]) -> bool:
    """False when some fragment character can come neither from its inputs nor a constant."""
    pool = set("".join(constants_out))
    for ex, frag in zip(task.examples, fragments):
        have = pool.union(*ex.inputs)
        if not set(frag) <= have:
            return False
    return True


class _Solver:
    def __init__(self, task: Task, kg: KnowledgeGraph, model: PredictionModel,
                 config: SolverConfig, dsl: Mapping[str, PrimitiveSpec]):
        self.task = task
        self.kg = kg
        self.env: KgEnvironment = kg.environment()
        self.model = model
        self.config = config
        self.dsl = dsl
        self.stats = SolveStats()
        self.start = time.perf_counter()
        self.deadline = self.start + config.timeout
        self.graph_deadline = self.start + GRAPH_SHARE * config.timeout
        self.inputs = [ex.inputs for ex in task.examples]
        self.evaluator = BatchEvaluator(self.inputs, self.env, dsl)
        self._extractors: list[tuple[Program, tuple[str, ...]]] | None = None
        self.constants_in = _input_constants(task)

    def _check(self, graph_phase: bool = False) -> None:
        now = time.perf_counter()
        if now > self.deadline or (graph_phase and now > self.graph_deadline):
            raise _Deadline

    def run(self) -> SolveResult:
        try:
            program = self._run()
        except _Deadline:
            program = None
        now = time.perf_counter()
        self.stats.wall_time = now - self.start
        # a program found after the deadline is still a timeout
        if now > self.deadline:
            return SolveResult(TIMEOUT, None, self.stats)
        if program is not None:
            return SolveResult(SOLVED, program, self.stats)
        return SolveResult(NO_PROGRAM, None, self.stats)

    def _run(self) -> Program | None:
        if not all(ex.output for ex in self.task.examples):
            return None
        sketch = decompose(self.task.pairs)
        n = len(sketch.holes)
        self.stats.hole_kinds = [None] * n
        programs: list[Program | None] = [None] * n

        for k, fragments in enumerate(sketch.holes):
            programs[k] = self._bare_variable(fragments)
            if programs[k] is None and self._literal(fragments):
                programs[k] = self._syntactic_hole(fragments, self.config.literal_budget)
            if programs[k] is not None:
                self.stats.hole_kinds[k] = KIND_SYNTACTIC

        try:
            for k, fragments in enumerate(sketch.holes):
                if programs[k] is None:
                    found = self._graph_hole(fragments)
                    if found is not None:
                        programs[k], self.stats.hole_kinds[k] = found
        except _Deadline:
            self._check()

        for k, fragments in enumerate(sketch.holes):
            if programs[k] is None:
                programs[k] = self._syntactic_hole(fragments)
                if programs[k] is None:
                    return None
                self.stats.hole_kinds[k] = KIND_SYNTACTIC

        program = assemble(sketch, programs)
        if not verify(program, self.task, self.env, self.dsl):
            return None
        return program

    def _bare_variable(self, fragments: Sequence[str]) -> Program | None:
        for j in range(self.task.arity):
            if all(ins[j] == f for ins, f in zip(self.inputs, fragments)):
                return Variable(j)
        return None

    def _literal(self, fragments: Sequence[str]) -> bool:
        """True when each fragment occurs verbatim in one of its example's inputs."""
        return all(any(f in x for x in ins) for ins, f in zip(self.inputs, fragments))

    # -- graph phase ---------------------------------------------------------

    def _path_program(self, source: Program, sources: Sequence[str],
                      fragments: Sequence[str]) -> Program | None:
        if not all(s in self.kg.entities for s in sources):
            return None
        self.stats.paths_queried += 1
        try:
            paths = self.kg.find_paths(list(zip(sources, fragments)), self.config.max_path_len)
        except NoPath:
            return None
        ranked = sorted(paths, key=lambda p: (self.kg.count_hits(p, sources), p))
        for path in ranked:
            program = apply(KgPath(path_id(path)), source)
            if outputs_match(self.evaluator, program, fragments):
                return program
        return None

    def _graph_hole(self, fragments: Sequence[str]) -> tuple[Program, str] | None:
        if not all(f in self.kg.entities for f in fragments):
            return None
        for j in range(self.task.arity):
            self._check(graph_phase=True)
            program = self._path_program(Variable(j), [ins[j] for ins in self.inputs], fragments)
            if program is not None:
                return program, KIND_PATH
        for extractor, values in self._extractor_outputs():
            self._check(graph_phase=True)
            if list(values) == list(fragments):
                return extractor, KIND_SYNTACTIC
            program = self._path_program(extractor, values, fragments)
            if program is not None:
                return program, KIND_EXTRACTOR
        return None

    def _extractor_outputs(self) -> list[tuple[Program, tuple[str, ...]]]:
        """First extractor programs with distinct, fully defined outputs (computed once per task)."""
        if self._extractors is not None:
            return self._extractors
        self._extractors = []
        if self.config.extractor_budget == 0:
            return self._extractors
        grammar = compile_grammar(self.dsl, self.task.arity, constants_in=self.constants_in,
                                  max_depth=self.config.extractor_depth)
        weighted = predict_weights(self.model, grammar, self.task)
        seen: set[tuple[str, ...]] = {tuple(ins[j] for ins in self.inputs) for j in range(self.task.arity)}
        for i, (program, _) in enumerate(heap_search(weighted)):
            if i >= self.config.extractor_budget:
                break
            self.stats.programs_enumerated += 1
            if i % CHECK_EVERY == 0:
                self._check(graph_phase=True)
            try:
                values = self.evaluator.values(program)
            except SynthError:
                continue
            if values is None or values in seen or not all(values):
                continue
            seen.add(values)
            self._extractors.append((program, values))
        return self._extractors

    # -- syntactic phase -----------------------------------------------------

    def _syntactic_hole(self, fragments: Sequence[str], budget: int | None = None) -> Program | None:
        constants_out = _output_constants(fragments)
        if not _characters_available(self.task, fragments, constants_out):
            return None
        try:
            grammar = compile_grammar(self.dsl, self.task.arity, constants_in=self.constants_in,
                                      constants_out=constants_out, max_depth=self.config.max_depth)
        except EmptyGrammar:
            return None
        weighted = predict_weights(self.model, grammar, self.task)
        for i, (program, _) in enumerate(heap_search(weighted)):
            if budget is not None and i >= budget:
                break
            self.stats.programs_enumerated += 1
            if i % CHECK_EVERY == 0:
                self._check()
            if outputs_match(self.evaluator, program, fragments):
                return program
        return None


def solve(task: Task, kg: KnowledgeGraph, model: PredictionModel = UNIFORM,
          config: SolverConfig | None = None,
          dsl: Mapping[str, PrimitiveSpec] = FLASHFILL) -> SolveResult:
    return _Solver(task.validate(), kg, model, config or SolverConfig(), dsl).run()
