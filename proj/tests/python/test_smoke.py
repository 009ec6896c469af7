import json

import numpy as np
import pytest

import relcalc as rc


def graph(m):
    return rc.from_operator(np.asarray(m, dtype=complex))


def test_operator_and_generator_forms():
    t = graph([[0]])
    assert (t.n, t.dim) == (1, 1)
    assert rc.parts(t) == {"domain": 1, "range": 0, "null": 1, "mv": 0}

    mv = rc.from_generators(np.array([[0], [1]], dtype=complex))
    assert rc.parts(mv)["mv"] == 1
    assert not rc.classify(mv)["is_operator"]


def test_adjoint_and_classification():
    h = np.array([[2, 1j], [-1j, 3]])
    t = graph(h)
    assert rc.same_relation(rc.adjoint(t), t)
    assert rc.classify(t) == {
        "is_operator": True,
        "is_densely_defined": True,
        "is_hermitian": True,
        "is_selfadjoint": True,
    }
    nilpotent = graph([[0, 1], [0, 0]])
    assert not rc.is_hermitian(nilpotent)
    assert rc.same_relation(rc.adjoint(rc.adjoint(nilpotent)), nilpotent)


def test_sum_inverse_and_norm():
    a = np.diag([1.0, 2.0])
    t, s = graph(a), graph(np.eye(2))
    assert rc.same_relation(rc.op_sum(t, s), graph(a + np.eye(2)))
    assert rc.same_relation(rc.inverse(t), graph(np.linalg.inv(a)))
    assert rc.relation_norm(t) == pytest.approx(2.0, abs=1e-12)
    assert rc.norm_at(t, np.array([1, 0], dtype=complex)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(rc.DimensionError):
        rc.op_sum(t, graph([[1]]))


def test_deficiency_of_restriction():
    sa = rc.cayley_selfadjoint(6, 2)
    assert rc.deficiency_indices(sa)["d_plus"] == 0
    h = rc.hermitian_restriction(sa, 4, 3)
    d = rc.deficiency_indices(h, samples=5)
    assert (d["d_plus"], d["d_minus"], d["constancy_ok"]) == (2, 2, True)
    with pytest.raises(rc.HypothesisError):
        rc.deficiency_indices(graph([[0, 1], [0, 0]]))


def test_homotopy_example_pair():
    t = rc.from_generators(np.array([[1], [0], [0], [0]], dtype=complex))
    s = rc.from_generators(np.array([[1], [0], [1], [0]], dtype=complex))
    tr = rc.homotopy_sweep(t, s, grid=5)
    assert tr["rank_constant"]
    assert all(p["rank_plus"] == 1 and p["rank_minus"] == 1 for p in tr["points"])
    v = rc.invariance_report(t, s, "thm31")
    assert v["status"] == "pass" and v["base"] == v["perturbed"] == [1, 1]


def test_certificates():
    t, s = graph([[1]]), graph([[3]])
    assert rc.certify_bound(t, s, 1, 2)["holds"]
    bad = rc.certify_bound(t, s, 1, 1)
    assert not bad["holds"] and bad["witness"] is not None
    a2, b2 = rc.to_quadratic(1.0, 2.0, 1.0)
    assert (a2, b2) == pytest.approx((2.0**0.5, 8.0**0.5))
    assert rc.certify_bound(t, s, a2, b2, variant="quadratic")["holds"]
    with pytest.raises(rc.TransformError):
        rc.shift_certificate(1.0, 1.0, 0.5)


def test_analytic_projector_family():
    a = rc.from_generators(np.array([[1], [0], [0], [1]], dtype=complex))
    b = rc.from_generators(np.array([[1], [0], [1], [0]], dtype=complex))
    ks = [0.1, 0.25j, 0.5]
    fam = rc.projector_family(a, b, 1.0, ks)
    for k, p in zip(ks, fam["points"]):
        assert p["gap"] == pytest.approx(abs(k) / (1 + abs(k) ** 2) ** 0.5, abs=1e-10)


def test_json_round_trip(tmp_path):
    t, s = rc.generate({"kind": "pair", "n": 5, "seed": 9, "graph_dim": 3, "profile": "bounded-random", "param": 0.4})
    assert s is not None and rc.is_hermitian(s)
    back = rc.relation_from_json(rc.relation_to_json(t))
    assert np.abs(back.graph.projector() - t.graph.projector()).max() <= 1e-12
    path = tmp_path / "t.json"
    rc.write_relation_file(str(path), t)
    assert rc.same_relation(rc.read_relation_file(str(path)), t)
    with pytest.raises(rc.IoError):
        rc.relation_from_json({"format_version": 1, "ambient": 2, "generators": [[[1, 0]]]})


def test_run_command(tmp_path):
    path = tmp_path / "sa.json"
    rc.write_relation_file(str(path), rc.cayley_selfadjoint(4, 1))
    code, report, summary = rc.run_command(["deficiency", path])
    assert code == 0
    assert report["result"]["d_plus"] == 0 and report["status"] == "pass"
    assert "deficiency" in summary
    code, report, _ = rc.run_command(["verify", "--suite", "lemma29", "--seed", "7", "--sizes", "2", "3"])
    assert code == 0 and report["seed"] == 7
    code, report, _ = rc.run_command(["analyze", tmp_path / "missing.json"])
    assert code == 2 and report["error"]["kind"] == "missing-file"
    assert "all" in rc.suite_names()
    json.dumps(report)


def test_tolerance():
    tol = rc.Tolerance(rank_rtol=1e-8)
    assert tol.rank_rtol == 1e-8 and tol.cmp_atol == 1e-9
    with pytest.raises(ValueError):
        rc.Tolerance(rank_rtol=-1.0)
