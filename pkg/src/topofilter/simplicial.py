"""Line complexes: unbranched chains of vertices (0-simplices) and edges (1-simplices).

Edge ``t`` joins vertex ``t`` to vertex ``t + 1``; increasing index is the
direction of traversal. Optional metric labels (timestamps) may be attached to
the vertices, but nothing in this package ever reads them for computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import EmptyComplex, InvalidMetric, UnknownSimplex

__all__ = [
    "LineComplex",
    "SimplexId",
    "vertex",
    "edge",
    "build_line_complex",
    "boundary",
    "face",
    "directly_connected",
]


@dataclass(frozen=True, order=True)
class SimplexId:
    dimension: int
    index: int

    def __post_init__(self):
        if self.dimension not in (0, 1):
            raise UnknownSimplex(f"line complexes only have 0- and 1-simplices, got dimension {self.dimension}")
        if self.index < 0:
            raise UnknownSimplex(f"negative simplex index {self.index}")

    def __str__(self):
        return f"{'v' if self.dimension == 0 else 'e'}{self.index}"


def vertex(index: int) -> SimplexId:
    return SimplexId(0, index)


def edge(index: int) -> SimplexId:
    return SimplexId(1, index)


@dataclass(frozen=True)
class LineComplex:
    """An unbranched chain with ``vertex_count`` vertices and ``vertex_count - 1`` edges.

    Build instances with :func:`build_line_complex`, which validates the input.
    """

    vertex_count: int
    metric_labels: Optional[tuple[float, ...]] = None

    @property
    def edge_count(self) -> int:
        return self.vertex_count - 1

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(t, t + 1) for t in range(self.edge_count)]

    def vertices(self) -> list[SimplexId]:
        return [vertex(t) for t in range(self.vertex_count)]

    def edge_ids(self) -> list[SimplexId]:
        return [edge(t) for t in range(self.edge_count)]

    def contains(self, s: SimplexId) -> bool:
        if s.dimension == 0:
            return s.index < self.vertex_count
        return s.index < self.edge_count

    def _check(self, s: SimplexId) -> None:
        if not self.contains(s):
            raise UnknownSimplex(f"{s} is not a simplex of a {self.vertex_count}-vertex line complex")


def build_line_complex(n_vertices: int, metric_labels: Optional[Sequence[float]] = None) -> LineComplex:
    """Glue ``n_vertices - 1`` edges end to end into a line complex.

    Raises EmptyComplex for ``n_vertices < 1`` and InvalidMetric when the
    labels have the wrong length, are non-finite or are not strictly increasing.
    """
    if n_vertices < 1:
        raise EmptyComplex(f"a line complex needs at least one vertex, got {n_vertices}")
    labels = None
    if metric_labels is not None:
        labels = tuple(float(x) for x in metric_labels)
        if len(labels) != n_vertices:
            raise InvalidMetric(f"expected {n_vertices} metric labels, got {len(labels)}")
        if not all(math.isfinite(x) for x in labels):
            raise InvalidMetric("metric labels must be finite")
        if any(b <= a for a, b in zip(labels, labels[1:])):
            raise InvalidMetric("metric labels must be strictly increasing")
    return LineComplex(n_vertices, labels)


def boundary(c: LineComplex, e: SimplexId) -> list[SimplexId]:
    """Vertices bounding edge ``e``, in traversal order."""
    if e.dimension != 1:
        raise UnknownSimplex(f"boundary is only defined on edges here, got {e}")
    c._check(e)
    return [vertex(e.index), vertex(e.index + 1)]


def face(c: LineComplex, v: SimplexId) -> list[SimplexId]:
    """Edges having ``v`` on their boundary, ordered [left edge, right edge]."""
    if v.dimension != 0:
        raise UnknownSimplex(f"face is only defined on vertices here, got {v}")
    c._check(v)
    out = []
    if v.index > 0:
        out.append(edge(v.index - 1))
    if v.index < c.edge_count:
        out.append(edge(v.index))
    return out


def directly_connected(c: LineComplex, p: SimplexId, q: SimplexId) -> bool:
    c._check(p)
    c._check(q)
    if p.dimension == q.dimension:
        return False
    v, e = (p, q) if p.dimension == 0 else (q, p)
    return v in boundary(c, e)
