import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neofuzzy.errors import DegenerateRegressor, InvalidArgument
from neofuzzy.membership import build_basis
from neofuzzy.neuron import NeoFuzzyNode, gain_step, new_node
from neofuzzy.metrics import rmse

unit = st.floats(0.0, 1.0)


@pytest.fixture
def hat2():
    return build_basis(2, 2)


def test_regressor_examples(hat2):
    node = NeoFuzzyNode(hat2)
    np.testing.assert_allclose(node.regressor(0.0, 1.0), [1, 0, 0, 1])
    np.testing.assert_allclose(node.regressor(0.5, 0.5), [0.5] * 4)


@given(unit, unit)
def test_regressor_halves_sum_to_one(a, b):
    phi = new_node((5, 3)).regressor(a, b)
    assert abs(phi[:5].sum() - 1) < 1e-12 and abs(phi[5:].sum() - 1) < 1e-12
    assert 0 < phi @ phi <= 2 + 1e-12


def test_forward_examples(hat2):
    assert new_node((4, 2)).forward(0.3, 0.9) == 0.0
    h = 4
    node = NeoFuzzyNode(build_basis(2, h), weights=[1] * h + [2] * h)
    for a, b in [(0, 0), (0.37, 0.91), (1, 1)]:
        assert node.forward(a, b) == pytest.approx(3.0)
    node = NeoFuzzyNode(hat2, weights=[0, 1, 0, 2])
    assert node.forward(0.5, 0.5) == pytest.approx(1.5)
    assert node.synapses(0.5, 0.5) == pytest.approx((0.5, 1.0))


@settings(deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=8, max_size=8), unit, unit)
def test_forward_bounded_by_weights(w, a, b):
    node = NeoFuzzyNode(build_basis(2, 4), weights=w)
    y = node.forward(a, b)
    assert min(w[:4]) + min(w[4:]) - 1e-9 <= y <= max(w[:4]) + max(w[4:]) + 1e-9


def test_two_step_hand_example():
    phi = np.array([0.6, 0.8])
    pred, w, r = gain_step(np.zeros(2), 0.0, phi, 1.0, 1.0)
    assert pred == 0.0
    assert r == pytest.approx(1.0)
    np.testing.assert_allclose(w, [0.6, 0.8])
    assert 1.0 - w @ phi == pytest.approx(0.0, abs=1e-15)
    pred, w2, r = gain_step(w, r, phi, 1.0, 1.0)
    assert r == pytest.approx(2.0)
    assert pred == pytest.approx(1.0)
    np.testing.assert_allclose(w2, w, atol=1e-15)


def test_zero_innovation_keeps_weights():
    node = NeoFuzzyNode(build_basis(2, 3), alpha=0.7, weights=[0.1, 0.2, 0.3, 0.4, 0.5, 0.6], gain=2.0)
    w0 = node.weights.copy()
    target = node.forward(0.2, 0.8)
    node.update(0.2, 0.8, target)
    np.testing.assert_allclose(node.weights, w0, atol=1e-15)
    phi = node.regressor(0.2, 0.8)
    assert node.gain == pytest.approx(0.7 * 2.0 + phi @ phi)


def test_update_returns_prior_prediction():
    node = NeoFuzzyNode(build_basis(2, 3), weights=np.arange(6.0))
    prior = node.forward(0.4, 0.6)
    assert node.update(0.4, 0.6, 10.0) == prior
    assert node.forward(0.4, 0.6) != prior


def test_first_update_interpolates():
    for alpha in (0.0, 0.5, 1.0):
        node = new_node((4, 2), alpha)
        node.update(0.3, 0.7, 0.42)
        assert node.forward(0.3, 0.7) == pytest.approx(0.42, abs=1e-15)


def test_invalid_alpha():
    with pytest.raises(InvalidArgument):
        new_node((4, 2), 1.5)
    with pytest.raises(InvalidArgument):
        new_node((4, 2), -0.1)


def test_weight_shape_checked():
    with pytest.raises(InvalidArgument):
        NeoFuzzyNode(build_basis(2, 4), weights=[0.0] * 7)


def test_degenerate_gain_guard():
    with pytest.raises(DegenerateRegressor):
        gain_step(np.zeros(2), 0.0, np.zeros(2), 1.0, 0.5)
    # no innovation, nothing to divide
    pred, w, r = gain_step(np.zeros(2), 0.0, np.zeros(2), 0.0, 0.5)
    assert r == 0.0 and not w.any()


def kaczmarz(w, phi, y):
    return w + (y - w @ phi) / (phi @ phi) * phi


@settings(deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_alpha_zero_is_kaczmarz(seed):
    rng = np.random.default_rng(seed)
    w = rng.normal(size=6)
    r = rng.uniform(0, 10)
    for _ in range(20):
        phi = rng.uniform(0, 1, 6)
        y = rng.normal()
        expected = kaczmarz(w, phi, y)
        _, w, r = gain_step(w, r, phi, y, 0.0)
        np.testing.assert_allclose(w, expected, atol=1e-12)
        assert abs(y - w @ phi) <= 1e-12 * (abs(y) + 1)


@settings(deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([0.0, 0.3, 0.9, 1.0]))
def test_error_contraction(seed, alpha):
    rng = np.random.default_rng(seed)
    node = NeoFuzzyNode(build_basis(3, 5), alpha, weights=rng.normal(size=10),
                        gain=rng.uniform(0, 3))
    for _ in range(50):
        a, b, y = rng.uniform(), rng.uniform(), rng.normal()
        prior = y - node.update(a, b, y)
        phi = node.regressor(a, b)
        post = y - node.forward(a, b)
        assert abs(post) <= abs(prior) + 1e-12
        assert post == pytest.approx(prior * (1 - phi @ phi / node.gain), abs=1e-12)


def _teacher_run(alpha, n, seed=0, h=4, q=2):
    rng = np.random.default_rng(seed)
    basis = build_basis(q, h)
    teacher = NeoFuzzyNode(basis, weights=rng.uniform(-1, 1, 2 * h))
    student = NeoFuzzyNode(basis, alpha)
    errors = []
    for a, b in rng.uniform(0, 1, (n, 2)):
        y = teacher.forward(a, b)
        errors.append(y - student.update(a, b, y))
    return np.array(errors)


@pytest.mark.parametrize("alpha", [0.0, 0.9, 0.99])
def test_student_learns_teacher_with_forgetting(alpha):
    e = _teacher_run(alpha, 5000)
    assert rmse(e[-500:]) <= 1e-2


def test_full_memory_error_still_decreases():
    # alpha=1 shrinks the step like 1/k: slow, but it must keep improving
    e = _teacher_run(1.0, 20000)
    windows = [rmse(e[k - 500:k]) for k in (1000, 5000, 20000)]
    assert windows[0] > windows[1] > windows[2]


def test_deterministic():
    a, b = _teacher_run(0.9, 300, seed=3), _teacher_run(0.9, 300, seed=3)
    assert np.array_equal(a, b)


def test_copy_is_independent():
    node = new_node((4, 2), 0.5)
    twin = node.copy()
    node.update(0.1, 0.2, 1.0)
    assert not twin.weights.any() and twin.gain == 0.0
