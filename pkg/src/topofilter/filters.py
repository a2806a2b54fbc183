"""Coefficient sets and their sheaf / state-space realizations.

Sign convention: ``a[j-1]`` is the a_j of

    y[n] = sum_{i=0..N} b_i x[n-i] - sum_{j=1..N} a_j y[n-j]

so a one-pole smoother y[n] = 0.5 y[n-1] + x[n] has ``a = (-0.5,)``.

The vertex state is (w[n-N], ..., w[n-1], x[n]) where w is the internal
Direct Form II signal, w[n] = x[n] - sum_j a_j w[n-j]. The consistency map
``s`` advances the memory and produces w[n]; ``r`` forgets the current input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateFilter,
    EmptyFilter,
    InvalidCoefficient,
    NoState,
    NotAllPole,
    NotFIR,
    ShapeError,
)
from .sheaf import LinearMap, SheafDiagram

__all__ = [
    "FilterCoefficients",
    "StateSpaceModel",
    "normalize_coefficients",
    "shift_matrix",
    "fir_maps",
    "allpole_maps",
    "polezero_maps",
    "state_space",
]


@dataclass(frozen=True)
class FilterCoefficients:
    """Feedforward ``b`` (b_0..b_N) and feedback ``a`` (a_1..a_N), already padded to a common order."""

    b: tuple[float, ...]
    a: tuple[float, ...]

    def __post_init__(self):
        b = tuple(float(x) for x in self.b)
        a = tuple(float(x) for x in self.a)
        if len(b) != len(a) + 1:
            raise ShapeError(f"need len(b) == len(a) + 1 after padding, got {len(b)} and {len(a)}")
        if not all(math.isfinite(x) for x in b + a):
            raise InvalidCoefficient("filter coefficients must be finite")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", a)

    @property
    def order(self) -> int:
        return len(self.a)

    @property
    def is_fir(self) -> bool:
        return all(x == 0.0 for x in self.a)

    @property
    def is_allpole(self) -> bool:
        return self.b[0] == 1.0 and all(x == 0.0 for x in self.b[1:])

    @property
    def kind(self) -> str:
        if self.is_fir:
            return "fir"
        if self.is_allpole:
            return "all-pole"
        return "pole-zero"


def normalize_coefficients(
    b_raw: Sequence[float], a_raw: Sequence[float] = (), *, includes_a0: bool = False
) -> FilterCoefficients:
    """Build padded coefficients from raw ``b`` and ``a`` lists.

    With ``includes_a0`` the first entry of ``a_raw`` is a_0; everything is
    divided by it and it is dropped. The shorter list is zero-padded so both
    describe the same order N = max(len(b) - 1, len(a)).
    """
    b = [float(x) for x in b_raw]
    a = [float(x) for x in a_raw]
    if not all(math.isfinite(x) for x in b + a):
        raise InvalidCoefficient("filter coefficients must be finite")
    if includes_a0:
        if not a:
            raise DegenerateFilter("a_0 was flagged present but the a list is empty")
        a0 = a.pop(0)
        if a0 == 0.0:
            raise DegenerateFilter("a_0 must be nonzero")
        b = [x / a0 for x in b]
        a = [x / a0 for x in a]
    if not b and not a:
        raise EmptyFilter("no coefficients given")
    order = max(len(b) - 1, len(a))
    b += [0.0] * (order + 1 - len(b))
    a += [0.0] * (order - len(a))
    return FilterCoefficients(tuple(b), tuple(a))


def shift_matrix(order: int) -> np.ndarray:
    """The N x (N+1) matrix dropping the oldest of N+1 components."""
    return np.eye(order, order + 1, k=1)


def _forget_input(order: int) -> LinearMap:
    return LinearMap(np.eye(order, order + 1), cols=order + 1)


def _read_input(order: int) -> LinearMap:
    row = np.zeros((1, order + 1))
    row[0, order] = 1.0
    return LinearMap(row)


def _feedback_shift(coeffs: FilterCoefficients) -> LinearMap:
    n = coeffs.order
    s = shift_matrix(n)
    if n:
        # last row produces w[n] = x - sum_j a_j * (memory at lag j)
        s[n - 1, :n] = [0.0 - x for x in reversed(coeffs.a)]
    return LinearMap(s, cols=n + 1)


def _output_row(coeffs: FilterCoefficients) -> LinearMap:
    # y = b0*w[n] + sum_i b_i w[n-i] with w[n] expanded through the feedback row
    b0 = coeffs.b[0]
    lagged = [bi - b0 * ai for bi, ai in zip(coeffs.b[1:], coeffs.a)]
    return LinearMap([list(reversed(lagged)) + [b0]])


def fir_maps(coeffs: FilterCoefficients) -> SheafDiagram:
    if not coeffs.is_fir:
        raise NotFIR(f"FIR maps need all feedback coefficients zero, got a={coeffs.a}")
    n = coeffs.order
    o = LinearMap([list(reversed(coeffs.b[1:])) + [coeffs.b[0]]])
    return SheafDiagram(n, LinearMap(shift_matrix(n), cols=n + 1), _forget_input(n), _read_input(n), o)


def allpole_maps(coeffs: FilterCoefficients) -> SheafDiagram:
    if coeffs.order < 1:
        raise NotAllPole("an all-pole filter needs order >= 1")
    if not coeffs.is_allpole:
        raise NotAllPole(f"all-pole maps need b = (1, 0, ..., 0), got b={coeffs.b}")
    n = coeffs.order
    o = LinearMap([[0.0 - x for x in reversed(coeffs.a)] + [1.0]])
    return SheafDiagram(n, _feedback_shift(coeffs), _forget_input(n), _read_input(n), o)


def polezero_maps(coeffs: FilterCoefficients) -> SheafDiagram:
    """Direct Form II sheaf: feedback in ``s``, feedforward on the shared memory in ``o``."""
    n = coeffs.order
    return SheafDiagram(n, _feedback_shift(coeffs), _forget_input(n), _read_input(n), _output_row(coeffs))


@dataclass(frozen=True, eq=False)
class StateSpaceModel:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        A, B, C, D = (np.array(m, dtype=np.float64, ndmin=2) for m in (self.A, self.B, self.C, self.D))
        n = A.shape[0]
        if A.shape != (n, n) or B.shape != (n, 1) or C.shape != (1, n) or D.shape != (1, 1):
            raise ShapeError(f"inconsistent state-space shapes A{A.shape} B{B.shape} C{C.shape} D{D.shape}")
        for name, m in zip("ABCD", (A, B, C, D)):
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    @property
    def order(self) -> int:
        return self.A.shape[0]


def state_space(coeffs: FilterCoefficients) -> StateSpaceModel:
    """Controllability canonical realization with B = e_N."""
    n = coeffs.order
    if n == 0:
        raise NoState("an order-0 filter has no state")
    A = np.eye(n, k=1)
    A[n - 1, :] = [0.0 - x for x in reversed(coeffs.a)]
    B = np.zeros((n, 1))
    B[n - 1, 0] = 1.0
    b0 = coeffs.b[0]
    C = np.array([[coeffs.b[n - k + 1] - b0 * coeffs.a[n - k] for k in range(1, n + 1)]])
    D = np.array([[b0]])
    return StateSpaceModel(A, B, C, D)
