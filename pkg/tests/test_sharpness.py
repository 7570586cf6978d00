import numpy as np
import pytest

from onsfourier import build_extremal, cosine, decompose_eq23, haar, lower_bound_probe, partition_Dn, sign_profile, theorem4_demo
from onsfourier.kernels import KernelContext, Q_antideriv
from onsfourier.sharpness import SignProfile, sharpness_summary

from conftest import ref_quad


def _profile(crossings, signs, n=4):
    return SignProfile(tuple(crossings), tuple(signs), cosine(), n, 0.3)


def test_sign_profile_haar_n1():
    p = sign_profile(haar(), 1, 0.63)
    assert p.crossings == () and p.leading_sign == 1


def test_sign_profile_cosine_n1_t0():
    p = sign_profile(cosine(), 1, 0.0)
    assert p.crossings == () and p.leading_sign == 1


def test_sign_profile_zero_context():
    # phi_1(1/4) = 0 so Q_1(., 1/4) vanishes identically
    p = sign_profile(cosine(), 1, 0.25)
    assert p.leading_sign == 0 and p.crossings == ()
    f = build_extremal(p)
    assert f.lip_norm == 0.0 and np.all(f(np.linspace(0, 1, 5)) == 0)


def test_sign_profile_matches_dense_scan():
    for sys, n, t in [(cosine(), 8, 0.1), (cosine(), 32, 0.1), (haar(), 8, 0.7)]:
        p = sign_profile(sys, n, t)
        y = np.linspace(0, 1, 20001)[1:-1]
        vals = Q_antideriv(KernelContext(sys, n, t), y)
        cls = np.where(np.abs(vals) <= 1e-14, 0, np.sign(vals))
        ok = np.isclose(p.sign_at(y), cls)
        # disagreements only within a hair of a crossing
        near = np.array([np.min(np.abs(np.asarray(p.crossings) - v)) < 1e-4 if p.crossings else False
                         for v in y[~ok]])
        assert np.all(near)


def test_build_extremal_examples():
    f = build_extremal(_profile([], [1]))
    u = np.linspace(0, 1, 9)
    assert np.allclose(f(u), u)
    f = build_extremal(_profile([0.5], [1, -1]))
    assert np.allclose(f(u), np.where(u <= 0.5, u, 1 - u))
    assert f.lip_norm == pytest.approx(1.5)


def test_decompose_haar_n1():
    p = sign_profile(haar(), 1, 0.3)
    f = build_extremal(p)
    d = decompose_eq23(haar(), 1, 0.3, f)
    assert d.S1 == 0.0
    # f_1(u) = u and Q_1(u) = u, so the integral is 1/3
    assert d.lhs == pytest.approx(1 / 3, abs=1e-14)
    assert d.residual <= 1e-10


def test_decompose_zero_function():
    f = build_extremal(_profile([], [0]))
    d = decompose_eq23(cosine(), 4, 0.3, f)
    assert d.S1 == d.S2 == d.S3 == d.total == 0.0


def test_decompose_cosine_against_quadpack():
    p = sign_profile(cosine(), 8, 0.3)
    f = build_extremal(p)
    d = decompose_eq23(cosine(), 8, 0.3, f)
    ctx = KernelContext(cosine(), 8, 0.3)
    from onsfourier import Q_kernel
    ref = ref_quad(lambda u: f(u) * Q_kernel(ctx, u), 0, 1, list(p.crossings) + list(np.arange(1, 8) / 8))
    assert d.residual <= 1e-9
    assert abs(d.total - ref) <= 1e-9


def test_partition_no_crossings():
    part = partition_Dn(haar(), 8, 0.1)
    assert part.D == () and part.F == tuple(range(1, 8))


def test_partition_single_crossing():
    # crossing inside (i0/n, (i0+1)/n) puts i0 in D
    p = _profile([0.6], [1, -1], n=4)
    part = partition_Dn(cosine(), 4, 0.3, p)
    assert 2 in part.D


def test_partition_statistic_bound():
    part = partition_Dn(cosine(), 16, 0.3)
    assert part.statistic <= part.bound + 1e-9
    assert sorted(part.D + part.F) == list(range(1, 16))


def test_lower_bound_probe():
    lb = lower_bound_probe(haar(), 2, 0.3)
    assert lb.report.residual <= 1e-10
    lb = lower_bound_probe(cosine(), 64, 0.3)
    assert lb.report.residual <= 1e-9 and np.isfinite(lb.gap)
    assert lb.L > 0 and lb.M > 0
    with pytest.raises(ValueError):
        lower_bound_probe(cosine(), 1, 0.3)


def test_sharpness_summary_keys():
    out = sharpness_summary(cosine(), 1, 0.5)
    assert out["S1"] == 0.0 and out["D_indices"] == []
    out = sharpness_summary(haar(), 2, 0.3)
    assert out["residual"] <= 1e-9 and out["per_term_residual"] <= 1e-10


def test_theorem4_demo_cosine():
    reports = theorem4_demo(cosine(), 8)
    assert all(r.passed for r in reports)
    first = [r for r in reports if r.name == "G_mean" and r.inputs.endswith("k=1")][0]
    assert first.residual <= 1e-12
    c2 = [r for r in reports if r.name == "halving_phi" and " k=2 " in r.inputs + " "][0]
    c_g = float(c2.inputs.split("C(g,Phi)=")[1].split()[0])
    assert c_g == pytest.approx(-1 / (2 * np.sqrt(2)), abs=1e-9)


def test_theorem4_demo_bad_range():
    with pytest.raises(IndexError):
        theorem4_demo(cosine(8), 9)
