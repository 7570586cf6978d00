import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from onsfourier import G2, breakpoints, cosine, double_system, eval_phi, g, haar, parse_system
from onsfourier.quadrature import integrate
from onsfourier.systems import breakpoints_upto

from conftest import dyadic_grid, ref_quad

SQRT2 = np.sqrt(2.0)


def test_eval_phi_examples():
    assert eval_phi(cosine(), 1, 0.0) == pytest.approx(SQRT2, abs=1e-15)
    assert eval_phi(haar(), 2, 0.25) == 1.0
    assert eval_phi(haar(), 2, 0.75) == -1.0


def test_doubled_cosine_brute_force():
    # piecewise definition written out by hand
    def brute(k, u):
        if u < 0.5:
            return SQRT2 * np.cos(2 * np.pi * k * 2 * u)
        return -SQRT2 * np.cos(2 * np.pi * k * (2 * u - 1))

    dc = double_system(cosine())
    assert eval_phi(dc, 1, 0.75) == pytest.approx(SQRT2, abs=1e-14)
    for k in (1, 2, 7):
        for u in np.linspace(0.01, 0.99, 23):
            if u != 0.5:
                assert eval_phi(dc, k, u) == pytest.approx(brute(k, u), abs=1e-13)
        # the jump at 1/2 takes the mean of the one-sided limits
        assert eval_phi(dc, k, 0.5) == pytest.approx(0.0, abs=1e-15)


def test_haar_jump_convention():
    h = haar()
    assert eval_phi(h, 2, 0.5) == 0.0  # mean of +1 and -1
    assert eval_phi(h, 2, 0.0) == 1.0
    assert eval_phi(h, 2, 1.0) == -1.0
    # chi_3 lives on [0, 1/2] with height sqrt(2); its right edge is interior
    assert eval_phi(h, 3, 0.5) == pytest.approx(-SQRT2 / 2)
    assert eval_phi(h, 4, 0.5) == pytest.approx(SQRT2 / 2)


def test_haar_block_bound():
    # |g_m| <= 2^{-s/2} for 2^s < m <= 2^{s+1}
    u = np.linspace(0, 1, 2049)
    for s in range(0, 8):
        for m in range(2**s + 1, 2 ** (s + 1) + 1):
            assert np.max(np.abs(g(haar(), m, u))) <= 2.0 ** (-s / 2)


def test_g_examples():
    assert g(cosine(), 1, 0.25) == pytest.approx(0.225079079039276517, abs=1e-15)
    assert g(haar(), 2, 0.5) == pytest.approx(ref_quad(lambda t: eval_phi(haar(), 2, t), 0, 0.5))
    assert g(haar(), 2, 0.5) == 0.5


def test_G2_examples():
    # value from a mpmath double integral of phi_1
    assert G2(cosine(), 1, 0.5) == pytest.approx(0.0716448960313445329, abs=1e-15)
    assert G2(cosine(), 1, 0.5) == pytest.approx(SQRT2 / (2 * np.pi**2), abs=1e-16)
    assert abs(G2(cosine(), 2, 0.5)) < 1e-16


def test_zero_at_origin(system):
    k = np.arange(1, 65)
    assert np.all(g(system, k, 0.0) == 0.0)
    assert np.all(G2(system, k, 0.0) == 0.0)


def test_index_errors(system):
    with pytest.raises(IndexError):
        eval_phi(system, 0, 0.5)
    with pytest.raises(IndexError):
        g(system, system.max_index + 1, 0.5)
    with pytest.raises(IndexError):
        G2(system, np.array([1, 2000]), 0.5)


def test_breakpoints_examples():
    assert breakpoints(cosine(), 5) == []
    assert breakpoints(haar(), 2) == [0.5]
    assert breakpoints(double_system(haar()), 2) == [0.25, 0.5, 0.75]
    assert breakpoints(haar(), 1) == []
    assert breakpoints(haar(), 5) == [0.125, 0.25]  # support [0, 1/4]
    assert breakpoints_upto(haar(), 4) == (0.25, 0.5, 0.75)


def test_parse_system_roundtrip():
    for name in ("cosine", "haar", "doubled:cosine", "doubled:doubled:cosine", "doubled:haar"):
        assert parse_system(name).name == name
    with pytest.raises(ValueError):
        parse_system("legendre")
    assert parse_system("doubled:haar").max_index == 1024


def _gram(sys, K):
    out = np.empty((K, K))
    for j in range(1, K + 1):
        for k in range(j, K + 1):
            bps = breakpoints(sys, j) + breakpoints(sys, k) + dyadic_grid(4)
            out[j - 1, k - 1] = out[k - 1, j - 1] = integrate(
                lambda u: eval_phi(sys, j, u) * eval_phi(sys, k, u), 0.0, 1.0, breakpoints=bps)
    return out


def test_orthonormal_small(system):
    assert np.max(np.abs(_gram(system, 12) - np.eye(12))) <= 1e-9


def test_doubled_haar_gram_against_reference():
    dh = double_system(haar())
    K = 8
    for j in range(1, K + 1):
        for k in range(j, K + 1):
            val = ref_quad(lambda u: eval_phi(dh, j, u) * eval_phi(dh, k, u), 0, 1, dyadic_grid(5))
            assert abs(val - (j == k)) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(name=st.sampled_from(["cosine", "haar", "doubled:cosine", "doubled:doubled:cosine", "doubled:haar"]),
       k=st.integers(1, 40), u=st.floats(0.0, 1.0))
def test_antiderivative_consistency(name, k, u):
    sys = parse_system(name)
    bps = breakpoints(sys, k)
    assert abs(g(sys, k, u) - ref_quad(lambda t: eval_phi(sys, k, t), 0, u, bps)) <= 1e-10
    assert abs(G2(sys, k, u) - ref_quad(lambda t: g(sys, k, t), 0, u, bps)) <= 1e-10


def test_bessel_grid(system):
    u = np.linspace(0, 1, 101)
    gk = g(system, np.arange(1, 65)[:, None], u[None, :])
    partial = np.cumsum(gk**2, axis=0)
    assert np.all(partial <= u + 1e-12)


def test_zero_mean_after_doubling(system):
    d = double_system(system)
    k = np.arange(1, 33)
    assert np.max(np.abs(g(d, k, 1.0))) <= 1e-12
    direct = [integrate(lambda u: eval_phi(d, kk, u), 0, 1, breakpoints=breakpoints(d, kk)
                        + list(np.arange(1, 2 * kk) / (2 * kk))) for kk in k]
    assert np.max(np.abs(direct)) <= 1e-12


def test_first_moment_after_double_doubling():
    G = double_system(double_system(cosine()))
    val = ref_quad(lambda u: u * eval_phi(G, 1, u), 0, 1, [0.25, 0.5, 0.75])
    assert abs(val) < 1e-12


def test_vectorised_broadcast(system):
    k = np.arange(1, 6)[:, None]
    u = np.linspace(0, 1, 7)[None, :]
    table = eval_phi(system, k, u)
    assert table.shape == (5, 7)
    assert table[2, 3] == eval_phi(system, 3, u[0, 3])
