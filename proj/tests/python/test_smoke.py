import json
import os
from pathlib import Path

import numpy as np
import pytest

import ncgelfand as ncg

DATA = Path(os.environ.get("NCG_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def load(name):
    return json.loads((DATA / name).read_text())


def test_verify_oml():
    out = ncg.verify_oml(load("b3.json"))
    assert out["status"] == 0
    assert out["report"]["violations"] == []
    bad = ncg.verify_oml(load("self_ortho.json"))
    assert bad["status"] == 1


def test_semigroup_recovers_mo2():
    out = ncg.oml_semigroup(load("mo2.json"))
    result = out["report"]["results"][0]
    assert result["closed_projections"]["isomorphic"]
    assert result["closed_projections"]["count"] == 6
    assert result["semigroup_size"] > 6


def test_budget_error_is_partial():
    out = ncg.oml_semigroup(load("mo2.json"), budget=3)
    assert out["status"] == 3
    assert out["report"]["results"][0]["complete"] is False


def test_projector_lattice():
    p = np.array([[1, 0], [0, 0]], dtype=complex)
    v = np.array([1, 1]) / np.sqrt(2)
    q = np.outer(v, v).astype(complex)
    assert np.allclose(ncg.sasaki_product(p, q), p, atol=1e-10)
    assert np.allclose(ncg.sasaki_product(q, p), q, atol=1e-10)
    assert np.allclose(ncg.proj_meet(p, q), 0, atol=1e-10)
    assert np.allclose(ncg.proj_join(p, q), np.eye(2), atol=1e-10)


def test_hermitian_eig_matches_numpy():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = x + x.conj().T
    values, vectors = ncg.hermitian_eig(h)
    assert np.allclose(values, np.linalg.eigvalsh(h))
    assert np.allclose(vectors @ np.diag(values) @ vectors.conj().T, h)


def test_blocks():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    out = ncg.block_decompose([sx], 2)
    blocks = out["report"]["blocks"]
    assert [(b["irrep_dim"], b["multiplicity"]) for b in blocks] == [(1, 1), (1, 1)]
    assert ncg.generate_algebra([np.array([[0, 1], [0, 0]], dtype=complex)], 2)["report"]["dimension"] == 4


def test_claims_findings():
    out = ncg.run_claims("prop9", [load("m2_pauli.json")], seed=42)
    assert out["status"] == 0
    row = out["report"]["rows"][0]
    assert row["expected"] == "finding"
    assert float(row["defects"]["square"]) == pytest.approx(1.0, abs=1e-12)


def test_spectral():
    e12 = np.array([[0, 1], [0, 0]], dtype=complex)
    assert np.allclose(ncg.spectrum(e12), [0, 0])
    rep = ncg.spectral_report(e12, seed=1, samples=2000)
    assert rep["report"]["flags"]["sigma_equals_Sigma"] is False
    inv = ncg.invariant_subspace(e12, "oracle", seed=1)
    assert inv["report"]["results"][0]["rank"] == 1


def test_errors_map_to_exceptions():
    with pytest.raises(ncg.StructuralError):
        ncg.verify_oml("{not json")
    with pytest.raises(ncg.DomainError):
        ncg.sasaki_product(np.eye(2, dtype=complex), np.array([[1, 1], [0, 0]], dtype=complex))
    assert issubclass(ncg.BudgetExceeded, ncg.NcgError)


def test_cli_in_process():
    code, out, err = ncg.cli(["oml", "verify", str(DATA / "corrupt.json")])
    assert code == 2
    assert "error" in err
    code, out, _ = ncg.cli(["oml", "verify", str(DATA / "b3.json")])
    assert code == 0
    assert json.loads(out)["ok"] is True
