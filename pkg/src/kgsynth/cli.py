"""Command-line front end: solve, eval, train, emit-sparql."""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .dsl import DSLS
from .errors import EmptyGraph, GenerationExhausted, ParseError, SynthError
from .grammar import uniform_weights
from .knowledge import KnowledgeGraph, bundled_graph, emit_sparql, load_graph
from .prediction import UNIFORM, PredictionModel, generate_training_tasks, load_model, save_model, \
    train_counts, training_grammar
from .pretty import pretty_print
from .sketch import decompose
from .solver import SOLVED, SolverConfig, solve
from .task import Task, load_task

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

CSV_COLUMNS = ("name", "entity_extraction", "relation_complexity", "postprocessing", "outcome", "wall_time_s")
TRAIN_DEPTH = 5


class _UsageError(Exception):
    pass


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kg", help="knowledge graph TSV file (default: bundled graph)")
    parser.add_argument("--model", help="prediction model file (default: uniform weights)")
    parser.add_argument("--timeout", type=_positive_float, default=60.0, help="seconds per task")
    parser.add_argument("--max-path-len", type=_positive_int, default=2)
    parser.add_argument("--max-depth", type=_positive_int, default=None,
                        help="grammar depth bound (solve/eval: 6, train: 5)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=_positive_int, default=1)
    parser.add_argument("--out", help="output file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kgsynth", description="Knowledge-powered programming by example.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="synthesize a program for one task file")
    p.add_argument("task")
    _common(p)

    p = sub.add_parser("eval", help="solve every task in a directory and write a CSV report")
    p.add_argument("directory")
    _common(p)

    p = sub.add_parser("train", help="train a count-based prediction model on synthetic tasks")
    p.add_argument("--dsl", default="flashfill", choices=sorted(DSLS))
    p.add_argument("--n", type=int, default=2500, help="number of synthetic tasks")
    p.add_argument("--examples-per-task", type=_positive_int, default=4)
    p.add_argument("--smoothing", type=_positive_float, default=1.0)
    _common(p)

    p = sub.add_parser("emit-sparql", help="print the path query for a task's first hole")
    p.add_argument("task")
    p.add_argument("--distance", type=_positive_int, default=2)
    p.add_argument("--source", type=int, default=0, help="input position used as query source")
    _common(p)
    return parser


def _graph(args) -> KnowledgeGraph:
    return load_graph(args.kg) if args.kg else bundled_graph()


def _model(args) -> PredictionModel:
    return load_model(args.model) if args.model else UNIFORM


def _config(args) -> SolverConfig:
    return SolverConfig(timeout=args.timeout, max_path_len=args.max_path_len,
                        max_depth=args.max_depth or SolverConfig.max_depth)


def _write(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---- solve ------------------------------------------------------------------


def cmd_solve(args) -> int:
    task = load_task(args.task)
    result = solve(task, _graph(args), _model(args), _config(args))
    if result.program is not None:
        print(pretty_print(result.program), end="")
    _write(args, result.dumps() + "\n")
    return EXIT_OK if result.solved else EXIT_FAILED


# ---- eval -------------------------------------------------------------------


@dataclass(frozen=True)
class ReportRow:
    name: str
    metadata: tuple[int, int, int] | None
    outcome: str
    wall_time: float


@dataclass
class BenchmarkReport:
    rows: list[ReportRow]

    @property
    def solved(self) -> int:
        return sum(r.outcome == SOLVED for r in self.rows)

    @property
    def total(self) -> int:
        return len(self.rows)

    def cumulative_times(self) -> list[float]:
        """Running total of solve times over solved tasks, fastest first."""
        out, acc = [], 0.0
        for t in sorted(r.wall_time for r in self.rows if r.outcome == SOLVED):
            acc += t
            out.append(acc)
        return out

    def summary(self) -> str:
        return f"solved {self.solved}/{self.total}"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            meta = list(r.metadata) if r.metadata else ["", "", ""]
            writer.writerow([r.name, *meta, r.outcome, f"{r.wall_time:.3f}"])
        return buf.getvalue()


def _eval_one(job: tuple[Path, KnowledgeGraph, PredictionModel, SolverConfig]) -> ReportRow:
    path, kg, model, config = job
    start = time.perf_counter()
    try:
        task = load_task(path)
    except ParseError:
        return ReportRow(path.stem, None, "Error", time.perf_counter() - start)
    try:
        result = solve(task, kg, model, config)
    except (SynthError, ValueError):
        return ReportRow(task.name, task.metadata.as_tuple(), "Error", time.perf_counter() - start)
    return ReportRow(task.name, task.metadata.as_tuple(), result.outcome, result.stats.wall_time)


def run_eval(files: Sequence[Path], kg: KnowledgeGraph, model: PredictionModel,
             config: SolverConfig, workers: int = 1) -> BenchmarkReport:
    jobs = [(f, kg, model, config) for f in files]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_eval_one, jobs))
    else:
        rows = [_eval_one(j) for j in jobs]
    rows.sort(key=lambda r: r.name)
    return BenchmarkReport(rows)


def cmd_eval(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        raise _UsageError(f"{directory}: not a directory")
    files = sorted(directory.glob("*.json"))
    if not files:
        raise _UsageError(f"{directory}: no task files (*.json)")
    report = run_eval(files, _graph(args), _model(args), _config(args), args.workers)
    if args.out:
        Path(args.out).write_text(report.to_csv(), encoding="utf-8")
    else:
        sys.stdout.write(report.to_csv())
    print(report.summary())
    return EXIT_OK


# ---- train ------------------------------------------------------------------


def cmd_train(args) -> int:
    if args.n < 1:
        raise _UsageError("--n must be at least 1")
    if not args.out:
        raise _UsageError("train needs --out")
    grammar = training_grammar(args.max_depth or TRAIN_DEPTH, DSLS[args.dsl])
    try:
        corpus = generate_training_tasks(uniform_weights(grammar), args.n, args.examples_per_task,
                                         random.Random(args.seed), DSLS[args.dsl])
    except GenerationExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    save_model(train_counts(corpus, args.smoothing, DSLS[args.dsl]), args.out)
    print(f"trained on {len(corpus)} tasks, model written to {args.out}")
    return EXIT_OK


# ---- emit-sparql ------------------------------------------------------------


def first_hole_pairs(task: Task, source: int = 0) -> list[tuple[str, str]]:
    if not 0 <= source < task.arity:
        raise _UsageError(f"--source {source} out of range for arity {task.arity}")
    sketch = decompose(task.pairs)
    if not sketch.holes:
        raise ValueError("task has no hole")
    return [(ex.inputs[source], frag) for ex, frag in zip(task.examples, sketch.holes[0])]


def cmd_emit_sparql(args) -> int:
    task = load_task(args.task)
    try:
        pairs = first_hole_pairs(task, args.source)
    except ValueError as exc:
        print(f"error: cannot decompose {task.name}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    _write(args, emit_sparql(pairs, args.distance))
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "eval": cmd_eval, "train": cmd_train, "emit-sparql": cmd_emit_sparql}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, EmptyGraph) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
