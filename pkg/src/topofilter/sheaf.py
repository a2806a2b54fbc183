"""Filter sheaves over line complexes.

Every vertex carries a state stalk of dimension N+1 and every edge a
consistency stalk of dimension N. Input and output stalks are 1-dimensional
over vertices and zero over edges, so they impose no gluing constraints and
are not stored. A state section is a global section when, on every edge ``t``,

    s(state[t]) == edge_value[t] == r(state[t + 1])
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ShapeError
from .simplicial import LineComplex

__all__ = [
    "LinearMap",
    "apply_map",
    "SheafDiagram",
    "StateSection",
    "Violation",
    "ViolationReport",
    "DEFAULT_TOL",
    "section_from_states",
    "verify_section",
]

DEFAULT_TOL = 1e-9


class LinearMap:
    """Dense real matrix acting on column vectors; zero rows or columns are allowed."""

    __slots__ = ("_entries", "_rows")

    def __init__(self, entries, cols: Optional[int] = None):
        arr = np.array(entries, dtype=np.float64)
        if arr.size == 0 and arr.ndim < 2:
            if cols is None:
                raise ShapeError("an empty LinearMap needs an explicit column count")
            arr = arr.reshape(0, cols)
        if arr.ndim != 2:
            raise ShapeError(f"LinearMap entries must be 2-D, got shape {arr.shape}")
        if cols is not None and arr.shape[1] != cols:
            raise ShapeError(f"expected {cols} columns, got {arr.shape[1]}")
        arr.setflags(write=False)
        self._entries = arr
        # plain float rows for the hot loop; summation order is fixed (ascending column)
        self._rows = tuple(tuple(float(x) for x in row) for row in arr)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "LinearMap":
        return cls(np.zeros((rows, cols)))

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def rows(self) -> int:
        return self._entries.shape[0]

    @property
    def cols(self) -> int:
        return self._entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._entries.shape

    def __call__(self, v) -> list[float]:
        return apply_map(self, v)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._entries, other._entries))

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"LinearMap({self._entries.tolist()!r}, cols={self.cols})"


def apply_map(m: LinearMap, v: Sequence[float]) -> list[float]:
    """Return ``m @ v`` with each row summed in increasing column order.

    The fixed order makes repeated applications bit-reproducible, which
    gluing checks at zero tolerance rely on.
    """
    if len(v) != m.cols:
        raise ShapeError(f"map expects a vector of length {m.cols}, got {len(v)}")
    out = []
    for row in m._rows:
        acc = 0.0
        for a, x in zip(row, v):
            acc += a * x
        out.append(acc)
    return out


@dataclass(frozen=True, eq=True)
class SheafDiagram:
    """The four sheaf maps of a translation-invariant filter of order N.

    ``map_s`` and ``map_r`` send a vertex state to the consistency stalk of
    its right and left edge respectively; ``map_i`` and ``map_o`` read the
    input and output sample at the vertex. One diagram serves every simplex.
    """

    order: int
    map_s: LinearMap
    map_r: LinearMap
    map_i: LinearMap
    map_o: LinearMap

    input_dim = 1
    output_dim = 1

    def __post_init__(self):
        n = self.order
        if n < 0:
            raise ShapeError(f"filter order must be nonnegative, got {n}")
        expected = {
            "map_s": (n, n + 1),
            "map_r": (n, n + 1),
            "map_i": (1, n + 1),
            "map_o": (1, n + 1),
        }
        for name, shape in expected.items():
            got = getattr(self, name).shape
            if got != shape:
                raise ShapeError(f"{name} must have shape {shape} for order {n}, got {got}")

    @property
    def state_dim(self) -> int:
        return self.order + 1

    @property
    def consistency_dim(self) -> int:
        return self.order

    def maps(self) -> dict[str, LinearMap]:
        return {"s": self.map_s, "r": self.map_r, "i": self.map_i, "o": self.map_o}


@dataclass(frozen=True, eq=False)
class StateSection:
    """Candidate global section: one state per vertex and one value per edge.

    ``vertex_states`` has shape (vertices, N+1) and ``edge_values`` has shape
    (vertices - 1, N), or (0, N) when there are no vertices.
    """

    vertex_states: np.ndarray
    edge_values: np.ndarray

    def __post_init__(self):
        vs = np.array(self.vertex_states, dtype=np.float64)
        ev = np.array(self.edge_values, dtype=np.float64)
        if vs.ndim != 2 or ev.ndim != 2:
            raise ShapeError("vertex_states and edge_values must be 2-D arrays")
        if vs.shape[1] != ev.shape[1] + 1:
            raise ShapeError(
                f"state dimension {vs.shape[1]} must exceed consistency dimension {ev.shape[1]} by one"
            )
        if ev.shape[0] != max(vs.shape[0] - 1, 0):
            raise ShapeError(f"{vs.shape[0]} vertex states need {max(vs.shape[0] - 1, 0)} edge values, got {ev.shape[0]}")
        vs.setflags(write=False)
        ev.setflags(write=False)
        object.__setattr__(self, "vertex_states", vs)
        object.__setattr__(self, "edge_values", ev)

    @property
    def vertex_count(self) -> int:
        return self.vertex_states.shape[0]

    @property
    def edge_count(self) -> int:
        return self.edge_values.shape[0]

    @property
    def state_dim(self) -> int:
        return self.vertex_states.shape[1]

    @property
    def consistency_dim(self) -> int:
        return self.edge_values.shape[1]

    def perturbed(self, vertex: int, component: int, delta: float) -> "StateSection":
        vs = self.vertex_states.copy()
        vs[vertex, component] += delta
        return StateSection(vs, self.edge_values)

    @classmethod
    def empty(cls, order: int) -> "StateSection":
        return cls(np.zeros((0, order + 1)), np.zeros((0, order)))


@dataclass(frozen=True)
class Violation:
    edge: int
    side: str  # "left": s(state[t]) vs edge value, "right": r(state[t+1]) vs edge value
    residual: tuple[float, ...]
    max_abs_residual: float


@dataclass(frozen=True)
class ViolationReport:
    tol: float
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def consistent(self) -> bool:
        return not self.violations

    def __bool__(self):
        return bool(self.violations)

    def __len__(self):
        return len(self.violations)

    def edges(self) -> list[int]:
        return sorted({v.edge for v in self.violations})


def _check_dims(c: Optional[LineComplex], d: SheafDiagram, sec: StateSection) -> None:
    if sec.state_dim != d.state_dim or sec.consistency_dim != d.consistency_dim:
        raise ShapeError(
            f"section stalks ({sec.state_dim}, {sec.consistency_dim}) do not match "
            f"diagram stalks ({d.state_dim}, {d.consistency_dim})"
        )
    n_vertices = 0 if c is None else c.vertex_count
    if sec.vertex_count != n_vertices:
        raise ShapeError(f"section has {sec.vertex_count} vertex states for a {n_vertices}-vertex complex")


def section_from_states(c: LineComplex, d: SheafDiagram, vertex_states) -> StateSection:
    """Complete vertex states to a section by setting each edge value to s(left state)."""
    states = np.array(vertex_states, dtype=np.float64)
    if states.size == 0:
        states = states.reshape(0, d.state_dim)
    if states.ndim != 2 or states.shape[1] != d.state_dim:
        raise ShapeError(f"vertex states must have length {d.state_dim}")
    if states.shape[0] != c.vertex_count:
        raise ShapeError(f"need {c.vertex_count} vertex states, got {states.shape[0]}")
    rows = [apply_map(d.map_s, states[t].tolist()) for t in range(c.edge_count)]
    edges = np.array(rows, dtype=np.float64).reshape(c.edge_count, d.consistency_dim)
    return StateSection(states, edges)


def verify_section(
    c: Optional[LineComplex], d: SheafDiagram, sec: StateSection, tol: float = DEFAULT_TOL
) -> ViolationReport:
    """Check the gluing equations on every edge of ``c``.

    ``c`` may be None only for the empty section. A residual counts as a
    violation when its infinity norm exceeds ``tol``.
    """
    if tol < 0:
        raise ValueError(f"tolerance must be nonnegative, got {tol}")
    _check_dims(c, d, sec)
    found = []
    states = sec.vertex_states.tolist()
    edge_values = sec.edge_values.tolist()
    for t, value in enumerate(edge_values):
        for side, m, state in (("left", d.map_s, states[t]), ("right", d.map_r, states[t + 1])):
            residual = tuple(a - b for a, b in zip(apply_map(m, state), value))
            worst = max((abs(x) for x in residual), default=0.0)
            if worst > tol or worst != worst:
                found.append(Violation(t, side, residual, worst))
    return ViolationReport(tol, tuple(found))
