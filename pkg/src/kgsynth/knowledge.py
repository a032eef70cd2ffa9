"""In-memory knowledge graph: labelled triples, relation paths, SPARQL text."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EmptyGraph, KgResolution, NoPath, ParseError

RelationPath = tuple[str, ...]

SPARQL_PREFIX = "PREFIX w: <https://en.wikipedia.org/wiki/>"


def path_id(path: Sequence[str]) -> str:
    return "/".join(path)


def parse_path(text: str) -> RelationPath:
    """Accepts ``"R1/R2"`` or ``"R1-R2"``."""
    sep = "/" if "/" in text else "-"
    return tuple(p for p in text.split(sep) if p)


def render_path(path: Sequence[str]) -> str:
    return "-".join(path)


class KnowledgeGraph:
    def __init__(self, triples: Iterable[tuple[str, str, str]]):
        self.triples = frozenset(triples)
        forward: dict[str, dict[str, set[str]]] = defaultdict(lambda: defaultdict(set))
        backward: dict[str, dict[str, set[str]]] = defaultdict(lambda: defaultdict(set))
        for s, r, o in self.triples:
            forward[s][r].add(o)
            backward[o][r].add(s)
        self.forward = {s: {r: frozenset(os) for r, os in rs.items()} for s, rs in forward.items()}
        self.backward = {o: {r: frozenset(ss) for r, ss in rs.items()} for o, rs in backward.items()}
        self.entities = frozenset(self.forward) | frozenset(self.backward)
        self.relations = tuple(sorted({r for _, r, _ in self.triples}))

    def __len__(self) -> int:
        return len(self.triples)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, KnowledgeGraph) and self.triples == other.triples

    def follow_path(self, start: str, path: Sequence[str]) -> frozenset[str]:
        frontier = {start}
        for relation in path:
            nxt: set[str] = set()
            for node in frontier:
                nxt.update(self.forward.get(node, {}).get(relation, ()))
            if not nxt:
                return frozenset()
            frontier = nxt
        return frozenset(frontier)

    def _paths_from(self, start: str, length: int) -> Iterable[tuple[RelationPath, frozenset[str]]]:
        stack: list[tuple[RelationPath, frozenset[str]]] = [((), frozenset({start}))]
        while stack:
            prefix, frontier = stack.pop()
            if len(prefix) == length:
                yield prefix, frontier
                continue
            steps: dict[str, set[str]] = defaultdict(set)
            for node in frontier:
                for relation, objects in self.forward.get(node, {}).items():
                    steps[relation].update(objects)
            for relation in sorted(steps, reverse=True):
                stack.append((prefix + (relation,), frozenset(steps[relation])))

    def find_paths(self, pairs: Sequence[tuple[str, str]], max_len: int = 2) -> list[RelationPath]:
        """Shortest relation paths linking every (source, target) pair.

        Lengths are tried in increasing order; the first length with at least
        one path consistent with all pairs wins.
        """
        if not pairs:
            raise ValueError("find_paths needs at least one pair")
        first_source, first_target = pairs[0]
        for length in range(1, max_len + 1):
            found = []
            for path, frontier in self._paths_from(first_source, length):
                if first_target not in frontier:
                    continue
                if all(t in self.follow_path(s, path) for s, t in pairs[1:]):
                    found.append(path)
            if found:
                return sorted(found)
        raise NoPath(f"no path of length <= {max_len} relates {len(pairs)} example pair(s)")

    def count_hits(self, path: Sequence[str], sources: Iterable[str]) -> int:
        return sum(len(self.follow_path(s, path)) for s in sources)

    def least_ambiguous(self, paths: Sequence[RelationPath], sources: Sequence[str]) -> RelationPath:
        if not paths:
            raise ValueError("least_ambiguous needs at least one path")
        return min(paths, key=lambda p: (self.count_hits(p, sources), tuple(p)))

    def environment(self) -> "KgEnvironment":
        return KgEnvironment(self)


class KgEnvironment:
    """Maps path ids to single-valued lookup functions over a graph."""

    def __init__(self, graph: KnowledgeGraph):
        self.graph = graph
        self._functions: dict[str, object] = {}

    def __contains__(self, key: str) -> bool:
        return True

    def __getitem__(self, key: str):
        fn = self._functions.get(key)
        if fn is None:
            path = parse_path(key)
            graph = self.graph

            def fn(entity: str, _path=path, _key=key) -> str:
                targets = graph.follow_path(entity, _path)
                if len(targets) != 1:
                    raise KgResolution(f"{_key} from {entity!r} gives {len(targets)} entities")
                return next(iter(targets))

            self._functions[key] = fn
        return fn


def parse_graph(text: str, source: str | None = None) -> KnowledgeGraph:
    triples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3 or not all(fields):
            raise ParseError(f"expected subject<TAB>relation<TAB>object, got {len(fields)} field(s)",
                             line=lineno, source=source)
        triples.append((fields[0], fields[1], fields[2]))
    if not triples:
        raise EmptyGraph(f"no triples in {source or 'graph text'}")
    return KnowledgeGraph(triples)


def load_graph(path: str | Path) -> KnowledgeGraph:
    path = Path(path)
    return parse_graph(path.read_text(encoding="utf-8"), source=str(path))


def bundled_graph() -> KnowledgeGraph:
    return load_graph(Path(__file__).parent / "data" / "graph.tsv")


# ---- SPARQL text ------------------------------------------------------------


def _entity(label: str) -> str:
    return "w:" + label.replace(" ", "_")


def emit_sparql(pairs: Sequence[tuple[str, str]], length: int) -> str:
    """Query for the relations linking every pair through ``length`` edges."""
    if not pairs or length < 1:
        raise ValueError("emit_sparql needs pairs and a positive length")
    variables = " ".join(f"?p{k}" for k in range(length))
    lines = [SPARQL_PREFIX, f"SELECT {variables} WHERE {{"]
    for i, (src, dst) in enumerate(pairs, start=1):
        nodes = [_entity(src)] + [f"?o_{i}_{k}" for k in range(length - 1)] + [_entity(dst)]
        for k in range(length):
            lines.append(f"   {nodes[k]} ?p{k} {nodes[k + 1]} .")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_hits_sparql(source: str, path: Sequence[str]) -> str:
    """Query listing every entity reached from ``source`` along ``path``."""
    if not path:
        raise ValueError("emit_hits_sparql needs a non-empty path")
    nodes = [_entity(source)] + [f"?e{k}" for k in range(len(path) - 1)] + ["?dst"]
    lines = [SPARQL_PREFIX, "SELECT ?dst WHERE {"]
    for k, relation in enumerate(path):
        lines.append(f"   {nodes[k]} {_entity(relation)} {nodes[k + 1]} .")
    lines.append("}")
    return "\n".join(lines) + "\n"
