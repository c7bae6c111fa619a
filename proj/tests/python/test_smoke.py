import json
import math

import numpy as np
import pytest

import isospin

LN2 = math.log(2.0)
LN3 = math.log(3.0)


def test_min_entropy_phi_half():
    r = isospin.min_output_entropy(isospin.channel("phi-half"))
    assert abs(r["min_entropy"] - (LN3 - 2.0 / 3.0 * LN2)) < 1e-7
    assert r["argmin"].dtype == np.complex128
    assert r["restarts"] == 64


def test_capacity_phi_one():
    chi = isospin.holevo_capacity(isospin.channel("phi-one"))
    assert abs(chi - (LN3 - LN2)) < 1e-7


def test_apply_matches_direct_formula():
    rng = np.random.default_rng(0)
    mu = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    ch = isospin.channel("transpose-depolarizing", dim=4)
    expected = (np.eye(4) * np.trace(mu) - mu.T) / 3.0
    assert np.allclose(ch.apply(mu), expected, atol=1e-13)


def test_schmidt_and_curve():
    psi = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)
    lambdas, u, v = isospin.schmidt_decompose(psi)
    assert np.allclose(lambdas, [0.5, 0.5])
    rows = isospin.entropy_curve(3)
    assert abs(rows[0][2] - (2 * LN3 - 4.0 / 3.0 * LN2)) < 1e-12


def test_json_round_trip():
    ch = isospin.channel("phi-one")
    back = isospin.channel_from_json(ch.to_json())
    assert back.label == "phi-one"
    assert json.loads(back.to_json()) == json.loads(ch.to_json())


def test_errors():
    with pytest.raises(isospin.IsospinError):
        isospin.channel("transpose-depolarizing", dim=20)
    with pytest.raises(isospin.IsospinError):
        isospin.Channel([2.0 * np.eye(2)])
    with pytest.raises(ValueError):
        isospin.channel("nope")


def test_verify_passes():
    results = isospin.verify(restarts=16, entangled_samples=200)
    assert len(results) >= 12
    assert all(r["passed"] for r in results), [r["name"] for r in results if not r["passed"]]
