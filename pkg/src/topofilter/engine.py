"""Causal execution of filter sheaves, plus classical oracles to check them against."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidMetric, InvalidSignal, NoState, ShapeError
from .filters import FilterCoefficients, StateSpaceModel
from .sheaf import SheafDiagram, StateSection, apply_map
from .simplicial import LineComplex, build_line_complex

__all__ = [
    "RunResult",
    "Comparison",
    "as_signal",
    "run_filter",
    "direct_form_oracle",
    "run_state_space",
    "impulse_response",
    "unit_impulse",
    "compare",
    "metric_invariance_check",
]


def as_signal(samples) -> np.ndarray:
    """Copy ``samples`` into a 1-D float64 array, rejecting non-finite values."""
    try:
        x = np.array(samples, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidSignal(f"signal samples must be real numbers: {exc}") from None
    if x.ndim != 1:
        raise InvalidSignal(f"a signal is one-dimensional, got shape {x.shape}")
    bad = np.flatnonzero(~np.isfinite(x))
    if bad.size:
        raise InvalidSignal(f"non-finite sample at index {bad[0]}")
    return x


def unit_impulse(length: int) -> np.ndarray:
    x = np.zeros(length)
    if length:
        x[0] = 1.0
    return x


@dataclass(frozen=True, eq=False)
class RunResult:
    output: np.ndarray
    section: StateSection
    complex: Optional[LineComplex]  # None for an empty input

    @property
    def diagram_order(self) -> int:
        return self.section.consistency_dim


def run_filter(
    d: SheafDiagram,
    signal,
    init_state: Optional[Sequence[float]] = None,
    metric_labels: Optional[Sequence[float]] = None,
) -> RunResult:
    """Compute the global section forced by ``signal`` and return it with the output.

    Vertex ``t`` gets the state whose memory is ``s`` of the previous state
    (so the right gluing holds by copy) and whose input component is
    ``signal[t]``. The first vertex has no left edge; its memory comes from
    ``init_state`` (zeros by default; the last entry of ``init_state`` is
    ignored because it is overwritten by the first sample).
    """
    x = as_signal(signal)
    n = d.order
    if init_state is None:
        memory = [0.0] * n
    else:
        init = list(init_state)
        if len(init) != d.state_dim:
            raise ShapeError(f"init_state must have length {d.state_dim}, got {len(init)}")
        if not all(math.isfinite(v) for v in init):
            raise InvalidSignal("init_state must be finite")
        memory = [float(v) for v in init[:n]]

    if x.size == 0:
        if metric_labels is not None and len(metric_labels):
            raise InvalidMetric(f"expected 0 metric labels, got {len(metric_labels)}")
        return RunResult(np.zeros(0), StateSection.empty(n), None)
    c = build_line_complex(x.size, metric_labels)

    states, edges, out = [], [], []
    last = x.size - 1
    for t, u in enumerate(x.tolist()):
        state = memory + [u]
        states.append(state)
        out.append(apply_map(d.map_o, state)[0])
        if t < last:
            memory = apply_map(d.map_s, state)
            edges.append(memory)

    section = StateSection(
        np.array(states, dtype=np.float64),
        np.array(edges, dtype=np.float64).reshape(last, n),
    )
    return RunResult(np.array(out, dtype=np.float64), section, c)


def direct_form_oracle(coeffs: FilterCoefficients, signal) -> np.ndarray:
    """Evaluate the difference equation directly, keeping past inputs and outputs.

    Zero initial history. Feedforward terms are summed by ascending lag, then
    feedback terms by ascending lag.
    """
    x = as_signal(signal).tolist()
    b, a = coeffs.b, coeffs.a
    y: list[float] = []
    for k in range(len(x)):
        acc = 0.0
        for i, bi in enumerate(b):
            if k - i >= 0:
                acc += bi * x[k - i]
        for j, aj in enumerate(a, start=1):
            if k - j >= 0:
                acc -= aj * y[k - j]
        y.append(acc)
    return np.array(y, dtype=np.float64)


def run_state_space(m: StateSpaceModel, signal) -> np.ndarray:
    """Iterate y = C x + D u, then x <- A x + B u, from x = 0."""
    if m.order < 1:
        raise NoState("state-space iteration needs at least one state")
    u = as_signal(signal)
    A, b, c, d = m.A, m.B[:, 0], m.C[0], m.D[0, 0]
    state = np.zeros(m.order)
    y = np.empty(u.size)
    for t, ut in enumerate(u):
        y[t] = c @ state + d * ut
        state = A @ state + b * ut
    return y


def impulse_response(d: SheafDiagram, length: int) -> np.ndarray:
    if length < 1:
        raise ValueError(f"impulse response length must be positive, got {length}")
    return run_filter(d, unit_impulse(length)).output


@dataclass(frozen=True)
class Comparison:
    """Deviation of a signal from a reference.

    ``max_rel`` is normwise: the largest absolute deviation divided by the
    largest reference magnitude.
    """

    max_abs: float
    max_rel: float
    rel_tol: float
    abs_tol: float

    @property
    def passed(self) -> bool:
        return self.max_abs <= self.abs_tol or self.max_rel <= self.rel_tol

    def __bool__(self):
        return self.passed


def compare(x, reference, rel_tol: float = 1e-9, abs_tol: float = 0.0) -> Comparison:
    x = np.asarray(x, dtype=np.float64)
    ref = np.asarray(reference, dtype=np.float64)
    if x.shape != ref.shape:
        raise ShapeError(f"cannot compare signals of shapes {x.shape} and {ref.shape}")
    if x.size == 0:
        return Comparison(0.0, 0.0, rel_tol, abs_tol)
    max_abs = float(np.max(np.abs(x - ref)))
    scale = float(np.max(np.abs(ref)))
    if scale > 0.0:
        max_rel = max_abs / scale
    else:
        max_rel = 0.0 if max_abs == 0.0 else math.inf
    return Comparison(max_abs, max_rel, rel_tol, abs_tol)


def metric_invariance_check(d: SheafDiagram, signal, labels_a, labels_b) -> bool:
    """Run over two differently timestamped complexes; True iff outputs are bit-identical."""
    ra = run_filter(d, signal, metric_labels=labels_a)
    rb = run_filter(d, signal, metric_labels=labels_b)
    return (
        ra.output.tobytes() == rb.output.tobytes()
        and ra.section.vertex_states.tobytes() == rb.section.vertex_states.tobytes()
        and ra.section.edge_values.tobytes() == rb.section.edge_values.tobytes()
    )
