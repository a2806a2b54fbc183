import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from topofilter import (
    compare,
    direct_form_oracle,
    impulse_response,
    metric_invariance_check,
    normalize_coefficients,
    polezero_maps,
    run_filter,
    run_state_space,
    state_space,
    verify_section,
)
from topofilter.engine import unit_impulse
from topofilter.errors import InvalidMetric, InvalidSignal, NoState, ShapeError
from topofilter.filters import StateSpaceModel

from population import random_labels, random_stable_filter


def hand_recurrence(n, pole=0.5):
    """y[k] = pole * y[k-1] + x[k] on an impulse, by plain iteration."""
    y, prev = [], 0.0
    for k in range(n):
        prev = pole * prev + (1.0 if k == 0 else 0.0)
        y.append(prev)
    return y


ONE_POLE = normalize_coefficients([1.0, 0.0], [-0.5])


class TestRunFilter:
    def test_identity(self):
        d = polezero_maps(normalize_coefficients([1.0]))
        assert run_filter(d, [1.0, 2.0, 3.0]).output.tolist() == [1.0, 2.0, 3.0]

    def test_one_pole_impulse(self):
        out = run_filter(polezero_maps(ONE_POLE), [1.0, 0.0, 0.0, 0.0]).output
        assert out.tolist() == hand_recurrence(4) == [1.0, 0.5, 0.25, 0.125]

    def test_fir_impulse(self):
        d = polezero_maps(normalize_coefficients([1.0, 1.0]))
        assert run_filter(d, [1.0, 0.0, 0.0]).output.tolist() == np.convolve([1, 0, 0], [1, 1])[:3].tolist()

    def test_section_layout(self):
        d = polezero_maps(ONE_POLE)
        res = run_filter(d, [1.0, 0.0, 0.0])
        # states: (w[-1], x[0]) ... ; edges: w[t]
        assert res.section.vertex_states.tolist() == [[0.0, 1.0], [1.0, 0.0], [0.5, 0.0]]
        assert res.section.edge_values.tolist() == [[1.0], [0.5]]
        assert res.complex.vertex_count == 3
        assert res.diagram_order == 1

    def test_init_state(self):
        # w[-1] = 2 -> y[0] = 0.5 * 2 + x[0]
        out = run_filter(polezero_maps(ONE_POLE), [0.0, 0.0], init_state=[2.0, 99.0]).output
        assert out.tolist() == [1.0, 0.5]
        with pytest.raises(ShapeError):
            run_filter(polezero_maps(ONE_POLE), [0.0], init_state=[1.0])

    def test_empty_signal(self):
        d = polezero_maps(ONE_POLE)
        res = run_filter(d, [])
        assert res.output.size == 0 and res.complex is None
        assert verify_section(None, d, res.section, tol=0.0).consistent

    @pytest.mark.parametrize("bad", [[1.0, float("nan")], [float("inf")], [[1.0, 2.0]], ["x"]])
    def test_invalid_signal(self, bad):
        with pytest.raises(InvalidSignal):
            run_filter(polezero_maps(ONE_POLE), bad)

    def test_labels_validated(self):
        with pytest.raises(InvalidMetric):
            run_filter(polezero_maps(ONE_POLE), [1.0, 2.0], metric_labels=[1.0, 1.0])


class TestOracle:
    def test_identity(self):
        x = np.random.default_rng(0).standard_normal(9)
        assert direct_form_oracle(normalize_coefficients([1.0]), x).tolist() == x.tolist()

    def test_moving_average(self):
        out = direct_form_oracle(normalize_coefficients([0.5, 0.5], [0.0]), np.ones(4))
        assert out.tolist() == [0.5, 1.0, 1.0, 1.0]

    def test_one_pole(self):
        assert direct_form_oracle(ONE_POLE, unit_impulse(6)).tolist() == hand_recurrence(6)

    def test_agrees_with_scipy(self):
        signal = pytest.importorskip("scipy.signal")
        rng = np.random.default_rng(5)
        for _ in range(10):
            c = random_stable_filter(rng)
            x = rng.standard_normal(100)
            ref = signal.lfilter(c.b, (1.0,) + c.a, x)
            assert compare(direct_form_oracle(c, x), ref, rel_tol=1e-9)


class TestStateSpace:
    def test_one_pole(self):
        out = run_state_space(state_space(ONE_POLE), unit_impulse(5))
        assert np.allclose(out, hand_recurrence(5), rtol=0, atol=1e-15)

    def test_iteration_order(self):
        # A = 0, B = (1), C = (1), D = (1): y_t = x_t + u_t with x_t = u_{t-1}
        m = StateSpaceModel([[0.0]], [[1.0]], [[1.0]], [[1.0]])
        assert run_state_space(m, [1.0, 0.0, 0.0, 0.0]).tolist() == [1.0, 1.0, 0.0, 0.0]

    def test_zero_input(self):
        c = random_stable_filter(np.random.default_rng(8), order=4)
        assert not np.any(run_state_space(state_space(c), np.zeros(20)))

    def test_no_state(self):
        with pytest.raises(NoState):
            state_space(normalize_coefficients([2.0]))


class TestImpulse:
    def test_fir(self):
        out = impulse_response(polezero_maps(normalize_coefficients([3.0, 2.0, 1.0])), 6)
        assert out.tolist() == [3.0, 2.0, 1.0, 0.0, 0.0, 0.0]

    def test_identity(self):
        assert impulse_response(polezero_maps(normalize_coefficients([1.0])), 4).tolist() == [1, 0, 0, 0]

    def test_one_pole(self):
        out = impulse_response(polezero_maps(ONE_POLE), 10)
        assert out.tolist() == [0.5**k for k in range(10)]

    def test_length(self):
        with pytest.raises(ValueError):
            impulse_response(polezero_maps(ONE_POLE), 0)


class TestCompare:
    def test_identical(self):
        r = compare([1.0, 2.0], [1.0, 2.0])
        assert r.max_abs == 0.0 and r.passed

    def test_within_abs(self):
        assert compare([1.0], [1.0 + 1e-12], rel_tol=0.0, abs_tol=1e-9).passed

    def test_outside(self):
        r = compare([1.0], [1.1], rel_tol=0.0, abs_tol=1e-9)
        assert not r.passed
        assert r.max_abs == pytest.approx(0.1)

    def test_zero_reference(self):
        assert compare([0.0], [0.0]).max_rel == 0.0
        assert compare([1e-3], [0.0]).max_rel == np.inf

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            compare([1.0], [1.0, 2.0])


class TestMetricInvariance:
    def test_uniform_vs_exponential(self):
        d = polezero_maps(random_stable_filter(np.random.default_rng(2), order=3))
        x = np.random.default_rng(3).standard_normal(16)
        assert metric_invariance_check(d, x, np.arange(16.0), np.exp(np.arange(16) / 4.0))

    def test_same_labels(self):
        d = polezero_maps(ONE_POLE)
        assert metric_invariance_check(d, [1.0, 2.0], [0.0, 1.0], [0.0, 1.0])

    def test_invalid_labels(self):
        with pytest.raises(InvalidMetric):
            metric_invariance_check(polezero_maps(ONE_POLE), [1.0, 2.0], [0.0, 1.0], [1.0, 0.0])

    @settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_random_draws(self, seed):
        rng = np.random.default_rng(seed)
        d = polezero_maps(random_stable_filter(rng))
        x = rng.standard_normal(128)
        assert metric_invariance_check(d, x, random_labels(rng, 128), random_labels(rng, 128))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=1, max_value=10))
def test_shift_commutes(seed, k):
    rng = np.random.default_rng(seed)
    d = polezero_maps(random_stable_filter(rng))
    u = rng.standard_normal(64)
    y = run_filter(d, np.concatenate([u, np.zeros(k)])).output
    y_shift = run_filter(d, np.concatenate([np.zeros(k), u])).output
    assert np.array_equal(y_shift[k:], y[: u.size])
    assert not np.any(y_shift[:k])
