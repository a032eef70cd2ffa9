"""Per-rule weight prediction: a uniform model and a count-based model.

The count model is trained on synthetic tasks: programs are sampled from a
weighted grammar, run on random inputs, and the rules used by each solution
are tallied per non-terminal type. It looks at the grammar only, not at the
task's examples.
"""

from __future__ import annotations

import random
import string
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .dsl import FLASHFILL, PrimitiveSpec, evaluate
from .errors import EvaluationError, GenerationExhausted, ParseError
from .grammar import TypedGrammar, WeightedGrammar, compile_grammar, rule_key, sample, uniform_weights
from .program import INPUT, Constant, KgPath, Primitive, Program, Variable, spine
from .task import Example, Metadata, Task
from .types import CONSTANT_IN, CONSTANT_OUT, STRING, SemType, arguments

MODEL_HEADER = "kgsynth-model v1"
INPUT_ALPHABET = string.ascii_letters + string.digits + " ,"
INPUT_LENGTHS = (3, 12)
INPUT_RETRIES = 10
# skipped programs tolerated before giving up, at least half of n
MIN_SKIP_BUDGET = 10


@dataclass(frozen=True)
class PredictionModel:
    kind: str = "uniform"
    counts: Mapping[tuple[str, str], int] = field(default_factory=dict)
    smoothing: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in ("uniform", "counts"):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.smoothing <= 0:
            raise ValueError("smoothing must be positive")
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("counts must be non-negative")

    def count(self, nt_type: SemType | str, key: str) -> int:
        return self.counts.get((str(nt_type), key), 0)


UNIFORM = PredictionModel()


# ---- training data ----------------------------------------------------------


def random_input(rng: random.Random) -> str:
    n = rng.randint(*INPUT_LENGTHS)
    return "".join(rng.choice(INPUT_ALPHABET) for _ in range(n))


def generate_training_tasks(weighted: WeightedGrammar, n: int, examples_per_task: int = 4,
                            rng: random.Random | None = None,
                            dsl: Mapping[str, PrimitiveSpec] = FLASHFILL) -> list[tuple[Task, Program]]:
    """Samples ``n`` (task, solution) pairs; failing programs get fresh inputs a few times."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if examples_per_task < 1:
        raise ValueError("examples_per_task must be at least 1")
    rng = rng or random.Random(0)
    arity = weighted.grammar.arity
    corpus: list[tuple[Task, Program]] = []
    skipped = 0
    while len(corpus) < n:
        program = sample(weighted, rng)
        examples = None
        for _ in range(INPUT_RETRIES):
            inputs = [tuple(random_input(rng) for _ in range(arity)) for _ in range(examples_per_task)]
            try:
                examples = tuple(Example(i, evaluate(program, i, dsl=dsl)) for i in inputs)
                break
            except EvaluationError:
                continue
        if examples is None:
            skipped += 1
            if skipped > max(n / 2, MIN_SKIP_BUDGET):
                raise GenerationExhausted(f"skipped {skipped} programs while generating {n} tasks")
            continue
        name = f"synthetic-{len(corpus):05d}"
        corpus.append((Task(name, examples, Metadata()), program))
    return corpus


def rule_uses(program: Program, dsl: Mapping[str, PrimitiveSpec] = FLASHFILL,
              expected: SemType = STRING) -> Iterable[tuple[SemType, str]]:
    """(non-terminal type, rule key) for every rule in the derivation of ``program``."""
    head, args = spine(program)
    if isinstance(head, Variable):
        yield expected, f"var{head.index}"
    elif isinstance(head, Constant):
        yield (CONSTANT_IN if head.flavor == INPUT else CONSTANT_OUT), \
            ("cst_in" if head.flavor == INPUT else "cst_out")
    elif isinstance(head, KgPath):
        yield expected, "kg_path"
        for a in args:
            yield from rule_uses(a, dsl, STRING)
    else:
        assert isinstance(head, Primitive)
        spec = dsl[head.name]
        base = tuple(arguments(spec.type))
        variant = list(base)
        for pos, ctype in spec.constant_slots.items():
            if pos < len(args) and isinstance(args[pos], Constant):
                variant[pos] = ctype
        yield expected, rule_key(head.name, tuple(variant), base) if args else head.name
        for a, t in zip(args, variant):
            yield from rule_uses(a, dsl, t)


def train_counts(corpus: Iterable[tuple[Task, Program]], smoothing: float = 1.0,
                 dsl: Mapping[str, PrimitiveSpec] = FLASHFILL) -> PredictionModel:
    tally: Counter[tuple[str, str]] = Counter()
    empty = True
    for _, solution in corpus:
        empty = False
        for t, key in rule_uses(solution, dsl):
            tally[(str(t), key)] += 1
    if empty:
        raise ValueError("cannot train on an empty corpus")
    return PredictionModel("counts", dict(sorted(tally.items())), smoothing)


def predict_weights(model: PredictionModel, grammar: TypedGrammar, task: Task | None = None) -> WeightedGrammar:
    """Weighted grammar for ``task``; the task is unused by both models here."""
    if model.kind == "uniform":
        return uniform_weights(grammar)
    weights = {
        nt: [model.count(nt.type, r.key) + model.smoothing for r in rules]
        for nt, rules in grammar.rules.items()
    }
    return WeightedGrammar.from_weights(grammar, weights)


# ---- model file -------------------------------------------------------------


def dumps_model(model: PredictionModel) -> str:
    lines = [MODEL_HEADER, f"kind\t{model.kind}", f"smoothing\t{model.smoothing!r}"]
    for (t, key), c in sorted(model.counts.items()):
        lines.append(f"count\t{t}\t{key}\t{c}")
    return "\n".join(lines) + "\n"


def loads_model(text: str, source: str | None = None) -> PredictionModel:
    lines = text.splitlines()
    if not lines or lines[0] != MODEL_HEADER:
        raise ParseError(f"expected header {MODEL_HEADER!r}", line=1, source=source)
    kind, smoothing, counts = None, None, {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        fields = line.split("\t")
        try:
            if fields[0] == "kind" and len(fields) == 2:
                kind = fields[1]
            elif fields[0] == "smoothing" and len(fields) == 2:
                smoothing = float(fields[1])
            elif fields[0] == "count" and len(fields) == 4:
                counts[(fields[1], fields[2])] = int(fields[3])
            else:
                raise ValueError(f"unrecognized record {fields[0]!r}")
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno, source=source) from exc
    if kind is None or smoothing is None:
        raise ParseError("model file lacks kind or smoothing", source=source)
    try:
        return PredictionModel(kind, counts, smoothing)
    except ValueError as exc:
        raise ParseError(str(exc), source=source) from exc


def save_model(model: PredictionModel, path: str | Path) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")


def load_model(path: str | Path) -> PredictionModel:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read model file: {exc.strerror}", source=str(path)) from exc
    return loads_model(text, source=str(path))


# ---- training grammar -------------------------------------------------------

TRAINING_CONSTANTS_IN = (" ", ",", ", ")
TRAINING_CONSTANTS_OUT = (" ", ", ", "-", ".")


def training_grammar(max_depth: int = 5, dsl: Mapping[str, PrimitiveSpec] = FLASHFILL) -> TypedGrammar:
    return compile_grammar(dsl, arity=1, constants_in=TRAINING_CONSTANTS_IN,
                           constants_out=TRAINING_CONSTANTS_OUT, max_depth=max_depth)
