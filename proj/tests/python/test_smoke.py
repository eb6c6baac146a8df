from fractions import Fraction

import numpy as np
import pytest

import symrmt


def test_weingarten_tables():
    u = symrmt.weingarten("unitary", 2, 5)
    values = {tuple(e["cycle_type"]): e["value"] for e in u["entries"]}
    assert values[(1, 1)] == "1/24"
    assert values[(2,)] == "-1/120"
    assert symrmt.weingarten("orthogonal", 1, 7)["values"] == [["1/7"]]
    assert symrmt.weingarten("symplectic", 1, 4)["values"] == [["1/8"]]
    with pytest.raises(ValueError, match="n >= l"):
        symrmt.weingarten("orthogonal", 3, 2)


def test_integrate():
    assert symrmt.integrate("unitary", 3, [(1, 1), (1, 1, True)]) == Fraction(1, 3)
    assert symrmt.integrate("symplectic", 2, [(1, 1), (3, 3)]) == Fraction(1, 4)
    assert symrmt.integrate("orthogonal", 2, [(1, 1)] * 4) == Fraction(3, 8)
    assert symrmt.integrate("orthogonal", 3, [(1, 1), (2, 2), (1, 2)]) == 0


def test_gamma():
    assert symrmt.gamma("A") == Fraction(1, 2)
    assert symrmt.gamma("BDI") == 2


def test_sampling_and_projection():
    cls = "CII:n=3,p=2,q=1"
    v = symrmt.sample_V(cls, seed=4, stream=0)
    assert v.shape == (6, 6)
    assert np.allclose(v.conj().T @ v, np.eye(6), atol=1e-10)
    assert np.allclose(symrmt.project(cls, v), v, atol=1e-10)
    assert np.array_equal(v, symrmt.sample_V(cls, seed=4, stream=0))

    rng = np.random.default_rng(0)
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    pa = symrmt.project(cls, a)
    assert symrmt.in_W(cls, pa)
    assert np.allclose(symrmt.project(cls, pa), pa)
    assert np.isclose(np.trace(a @ v).real, np.trace(pa @ v).real)

    g = symrmt.sample_haar("O", 4, seed=1)
    assert np.allclose(g.imag, 0)
    assert np.allclose(g.T @ g, np.eye(4), atol=1e-10)


def test_exact_moments_and_targets():
    cls = "AIII:n=4,p=3,q=1"
    a = symrmt.recipe_matrix("shift+diag", cls)
    report = symrmt.exact_moments(cls, a)
    assert report["class"] == "AIII:n=4,p=3,q=1"
    assert report["exact"]["mean"]["decimal"][0] == pytest.approx(symrmt.chiral_mean(cls, a))
    cov = symrmt.theoretical_covariance(cls, [a])
    assert cov[0, 0] == pytest.approx(report["asymptotic_variance"])


def test_k_statistics():
    k = symrmt.k_statistics([1.0, -1.0] * 50)
    assert k["k3"] == 0
    with pytest.raises(ValueError):
        symrmt.k_statistics([1.0, 2.0])


def test_experiment_is_reproducible():
    config = {"class": "BD:n=6", "samples": 2000, "seed": 3, "recipes": ["cyclic-shift", "shift+diag"]}
    a, values = symrmt.run_experiment(config, keep_samples=True)
    b = symrmt.run_experiment(dict(config, workers=3))
    assert values.shape == (2, 2000)
    a.pop("runtime")
    b.pop("runtime")
    assert a == b
    assert a["marginals"][0]["target_variance"] == pytest.approx(1.0)


def test_bad_descriptor():
    with pytest.raises(ValueError):
        symrmt.sample_V("AIII:n=5")


def test_selftest_subset():
    summary = symrmt.selftest(only=[1], seed=9)
    assert summary["seed"] == 9
    assert summary["passed"] is True
