"""Programming-by-example tasks and their JSON file format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError


@dataclass(frozen=True)
class Example:
    inputs: tuple[str, ...]
    output: str


@dataclass(frozen=True)
class Metadata:
    entity_extraction: int = 0
    relation_complexity: int = 0
    postprocessing: int = 0

    def as_tuple(self) -> tuple[int, int, int]:
        return self.entity_extraction, self.relation_complexity, self.postprocessing


@dataclass(frozen=True)
class Task:
    name: str
    examples: tuple[Example, ...]
    metadata: Metadata = field(default_factory=Metadata)

    @property
    def arity(self) -> int:
        return len(self.examples[0].inputs)

    @property
    def pairs(self) -> list[tuple[tuple[str, ...], str]]:
        return [(ex.inputs, ex.output) for ex in self.examples]

    def validate(self) -> "Task":
        if len(self.examples) < 2:
            raise ValueError(f"task {self.name!r} needs at least two examples")
        arity = self.arity
        if arity < 1:
            raise ValueError(f"task {self.name!r} needs at least one input")
        for ex in self.examples:
            if len(ex.inputs) != arity:
                raise ValueError(f"task {self.name!r} mixes example arities")
            if not all(isinstance(x, str) for x in ex.inputs) or not isinstance(ex.output, str):
                raise ValueError(f"task {self.name!r} has non-text values")
        m = self.metadata
        if m.entity_extraction not in (0, 1, 2) or m.relation_complexity not in (0, 1, 2) \
                or m.postprocessing not in (0, 1):
            raise ValueError(f"task {self.name!r} has metadata out of range: {m.as_tuple()}")
        return self

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "examples": [{"inputs": list(ex.inputs), "output": ex.output} for ex in self.examples],
            "metadata": {
                "entity_extraction": self.metadata.entity_extraction,
                "relation_complexity": self.metadata.relation_complexity,
                "postprocessing": self.metadata.postprocessing,
            },
        }


def make_task(name: str, pairs, metadata: tuple[int, int, int] = (0, 0, 0)) -> Task:
    """Builds a task from ``(inputs, output)`` pairs; a bare string input means arity 1."""
    examples = tuple(
        Example((ins,) if isinstance(ins, str) else tuple(ins), out) for ins, out in pairs
    )
    return Task(name, examples, Metadata(*metadata)).validate()


def task_from_json(data: dict, source: str | None = None) -> Task:
    try:
        meta = data.get("metadata", {})
        task = Task(
            name=str(data["name"]),
            examples=tuple(Example(tuple(ex["inputs"]), ex["output"]) for ex in data["examples"]),
            metadata=Metadata(
                int(meta.get("entity_extraction", 0)),
                int(meta.get("relation_complexity", 0)),
                int(meta.get("postprocessing", 0)),
            ),
        )
        return task.validate()
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise ParseError(f"invalid task: {exc}", source=source) from exc


def load_task(path: str | Path) -> Task:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read task file: {exc.strerror}", source=str(path)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, source=str(path)) from exc
    return task_from_json(data, source=str(path))


def save_task(task: Task, path: str | Path) -> None:
    Path(path).write_text(json.dumps(task.to_json(), indent=2, ensure_ascii=False) + "\n",
                          encoding="utf-8")


def bundled_tasks_dir() -> Path:
    return Path(__file__).parent / "data" / "tasks"
