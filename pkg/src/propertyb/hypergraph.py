"""Uniform hypergraph data model, disjoint unions and (de)serialization."""

from __future__ import annotations

import enum
import io
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, TextIO, Union

# Bitmask colorings are stored in a 64-bit word; bit 63 is never used.
MAX_BITMASK_VERTICES = 63


class HypergraphError(ValueError):
    """Raised for malformed hypergraphs, edges or serialized input."""


class Role(str, enum.Enum):
    CORE = "Core"
    U = "U"
    V = "V"
    U_PRIME = "UPrime"
    V_PRIME = "VPrime"
    SUB_A = "SubA"
    SUB_B = "SubB"
    SUB_C = "SubC"


@dataclass(frozen=True, order=True)
class VertexLabel:
    """Human-facing name of a vertex, e.g. ``VertexLabel(Role.U, 3)`` for u_3.

    ``index`` is 1-based.
    """

    role: Role
    index: int

    def __str__(self) -> str:
        return f"{self.role.value}[{self.index}]"


def core_labels(count: int) -> list[VertexLabel]:
    return [VertexLabel(Role.CORE, i) for i in range(1, count + 1)]


Edge = tuple[int, ...]


class UniformHypergraph:
    """An n-uniform hypergraph on vertices ``0 .. vertex_count - 1``.

    Edges are stored as sorted tuples with set semantics, so inserting any
    permutation of an existing edge is a no-op.  Iteration over ``edges`` is
    lexicographic.
    """

    def __init__(self, n: int, vertex_count: int, labels: Sequence[VertexLabel] | None = None,
                 name: str = ""):
        if n < 1:
            raise HypergraphError(f"uniformity must be >= 1, got {n}")
        if vertex_count < 1:
            raise HypergraphError("a hypergraph needs at least one vertex")
        if labels is None:
            labels = core_labels(vertex_count)
        labels = list(labels)
        if len(labels) != vertex_count:
            raise HypergraphError(
                f"got {len(labels)} labels for {vertex_count} vertices")
        if len(set(labels)) != len(labels):
            raise HypergraphError("vertex labels must be unique")
        self.n = n
        self.vertex_count = vertex_count
        self.labels = labels
        self.name = name
        self._edges: set[Edge] = set()
        self._sorted: list[Edge] | None = None
        self._index: dict[VertexLabel, int] | None = None

    def add_edge(self, vertices: Iterable[int]) -> bool:
        """Insert an edge; return False if it was already present."""
        edge = tuple(sorted(vertices))
        if len(edge) != self.n:
            raise HypergraphError(f"edge {edge} does not have {self.n} vertices")
        if len(set(edge)) != self.n:
            raise HypergraphError(f"edge {edge} repeats a vertex")
        if edge[0] < 0 or edge[-1] >= self.vertex_count:
            raise HypergraphError(f"edge {edge} has a vertex outside [0, {self.vertex_count})")
        return self._insert(edge)

    def _insert(self, edge: Edge) -> bool:
        # Trusted fast path for generators that already emit sorted valid edges.
        if edge in self._edges:
            return False
        self._edges.add(edge)
        self._sorted = None
        return True

    def add_edges(self, edges: Iterable[Iterable[int]]) -> int:
        return sum(self.add_edge(e) for e in edges)

    def remove_edge(self, vertices: Iterable[int]) -> None:
        self._edges.remove(tuple(sorted(vertices)))
        self._sorted = None

    @property
    def edges(self) -> list[Edge]:
        if self._sorted is None:
            self._sorted = sorted(self._edges)
        return self._sorted

    def __len__(self) -> int:
        return len(self._edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self._edges

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniformHypergraph):
            return NotImplemented
        return (self.n == other.n and self.vertex_count == other.vertex_count
                and self.labels == other.labels and self._edges == other._edges)

    def __repr__(self) -> str:
        name = f" {self.name!r}" if self.name else ""
        return (f"<UniformHypergraph{name} n={self.n} vertices={self.vertex_count} "
                f"edges={len(self)}>")

    def vertex(self, role: Role, index: int) -> int:
        """Resolve a label such as (Role.U, 2) to its vertex id."""
        if self._index is None:
            self._index = {label: i for i, label in enumerate(self.labels)}
        return self._index[VertexLabel(Role(role), index)]

    def edge_masks(self) -> list[int]:
        return [sum(1 << v for v in e) for e in self.edges]

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for e in self._edges:
            for v in e:
                deg[v] += 1
        return deg

    def copy(self, name: str | None = None) -> "UniformHypergraph":
        h = UniformHypergraph(self.n, self.vertex_count, self.labels,
                              self.name if name is None else name)
        h._edges = set(self._edges)
        return h

    def without_edges(self, edges: Iterable[Iterable[int]]) -> "UniformHypergraph":
        h = self.copy()
        for e in edges:
            h.remove_edge(e)
        return h

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "vertex_count": self.vertex_count,
            "labels": [{"role": lab.role.value, "index": lab.index} for lab in self.labels],
            "edges": [list(e) for e in self.edges],
        }
        if self.name:
            d["name"] = self.name
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "UniformHypergraph":
        try:
            labels = None
            if d.get("labels") is not None:
                labels = [VertexLabel(Role(lab["role"]), int(lab["index"])) for lab in d["labels"]]
            h = cls(int(d["n"]), int(d["vertex_count"]), labels, d.get("name", ""))
            for e in d["edges"]:
                h.add_edge(int(v) for v in e)
        except (KeyError, TypeError) as exc:
            raise HypergraphError(f"malformed hypergraph JSON: {exc}") from exc
        return h

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.vertex_count} {len(self)}"]
        lines.extend(" ".join(map(str, e)) for e in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text: str) -> "UniformHypergraph":
        rows = [line.split() for line in text.splitlines()
                if line.strip() and not line.lstrip().startswith("#")]
        if not rows or len(rows[0]) != 3:
            raise HypergraphError("edge list must start with 'n vertex_count edge_count'")
        try:
            n, vertex_count, edge_count = map(int, rows[0])
            h = cls(n, vertex_count)
            for row in rows[1:]:
                h.add_edge(int(v) for v in row)
        except ValueError as exc:
            raise HypergraphError(f"malformed edge list: {exc}") from exc
        if len(rows) - 1 != edge_count:
            raise HypergraphError(f"header announces {edge_count} edges, found {len(rows) - 1}")
        return h


def loads(text: str) -> UniformHypergraph:
    """Parse either the JSON or the plain edge-list format."""
    if text.lstrip().startswith("{"):
        try:
            return UniformHypergraph.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise HypergraphError(f"invalid JSON: {exc}") from exc
    return UniformHypergraph.from_edge_list(text)


def load(source: Union[str, TextIO]) -> UniformHypergraph:
    if isinstance(source, io.TextIOBase) or hasattr(source, "read"):
        return loads(source.read())
    with open(source) as fh:
        return loads(fh.read())


def dumps(h: UniformHypergraph, fmt: str = "json") -> str:
    if fmt == "json":
        return h.to_json() + "\n"
    if fmt == "edgelist":
        return h.to_edge_list()
    raise ValueError(f"unknown format {fmt!r}")


# -- disjoint unions ---------------------------------------------------

Part = tuple[Role, Union[UniformHypergraph, int]]


def disjoint_union_embed(parts: Sequence[Part], n: int, copy_edges: bool = False,
                         name: str = "") -> tuple[UniformHypergraph, list[int]]:
    """Place vertex-disjoint blocks side by side.

    Each part is ``(role, block)`` where ``block`` is a hypergraph or a bare
    vertex count.  Returns the n-uniform skeleton and the id offset of every
    part.  Label indices continue across parts that share a role, so two
    Core blocks of 3 vertices become Core[1..3] and Core[4..6].  Edges of
    hypergraph parts are copied only with ``copy_edges=True`` (and then must
    already be n-uniform).
    """
    if not parts:
        raise HypergraphError("disjoint_union_embed needs at least one part")
    labels: list[VertexLabel] = []
    offsets: list[int] = []
    used: dict[Role, int] = {}
    for role, block in parts:
        role = Role(role)
        size = block.vertex_count if isinstance(block, UniformHypergraph) else int(block)
        if size < 0:
            raise HypergraphError("block sizes must be non-negative")
        offsets.append(len(labels))
        start = used.get(role, 0)
        labels.extend(VertexLabel(role, start + i) for i in range(1, size + 1))
        used[role] = start + size
    h = UniformHypergraph(n, len(labels), labels, name)
    if copy_edges:
        for (_, block), off in zip(parts, offsets):
            if isinstance(block, UniformHypergraph):
                for e in block.edges:
                    h.add_edge(v + off for v in e)
    return h, offsets
