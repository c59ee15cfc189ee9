import math

import networkx as nx
import numpy as np
import pytest

from dynamics import SampleSet, StateVector, TrotterConfig, gauge_state, sample_z, trotter_evolve, ungauge
from lattice import three_edge_coloring
from observables import (
    MagnetizationCurve,
    ObservableError,
    ReferenceCurve,
    Scope,
    correlation_matrix,
    distance_binned_correlation,
    load_reference_curve,
    magnetization,
    rmse_vs_reference,
    site_magnetization_table,
)


def _ghz4():
    amps = np.zeros(16, dtype=complex)
    amps[0] = amps[15] = 1 / math.sqrt(2)
    return StateVector(amps)


def _random_state(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return StateVector(v / np.linalg.norm(v))


def _enumerate_zz(state):
    n = state.n_qubits
    p = state.probabilities()
    out = np.zeros((n, n))
    for idx in range(2 ** n):
        spins = [1 - 2 * ((idx >> k) & 1) for k in range(n)]
        out += p[idx] * np.outer(spins, spins)
    return out


# ---------- Magnetization ----------

def test_all_up_samples_magnetization():
    ss = SampleSet((0, 1, 2), [[1, 1, 1]], [40])
    est = magnetization(ss)
    assert est.value == 1.0
    assert est.stderr == 0.0


def test_opposite_records_cancel():
    ss = SampleSet((0, 1, 2), [[1, 1, 1], [-1, -1, -1]], [50, 50])
    assert magnetization(ss).value == 0.0
    assert magnetization(ss, "site:1").stderr == pytest.approx(1.0, rel=1e-12)
    three = SampleSet((0,), [[1], [1], [-1]], [1, 1, 1])
    assert magnetization(three).stderr == pytest.approx(math.sqrt(4 / 3) / math.sqrt(3), rel=1e-12)
    assert magnetization(SampleSet((0,), [[1]], [40])).stderr == 0.0


def test_exact_state_at_zero_angle(falcon):
    psi = trotter_evolve(falcon, three_edge_coloring(falcon), TrotterConfig(n_steps=0, theta_h=0.0))
    assert magnetization(psi).value == 1.0


def test_lattice_mean_is_mean_of_sites():
    ss = sample_z(_random_state(5, 1), 3000, seed=9, nodes=[10, 11, 12, 13, 14])
    sites = [magnetization(ss, Scope(n)).value for n in ss.nodes]
    assert magnetization(ss).value == float(np.mean(sites))
    psi = _random_state(5, 2)
    sites = [magnetization(psi, Scope(k)).value for k in range(5)]
    assert magnetization(psi).value == float(np.mean(sites))


def test_unknown_site():
    with pytest.raises(ObservableError):
        magnetization(SampleSet((0, 1), [[1, 1]], [1]), "site:5")
    with pytest.raises(ObservableError):
        Scope.parse("vertex:3")


def test_curve_csv_and_order(tmp_path):
    curve = MagnetizationCurve([(0.1, 0.9, 0.01), (0.2, 0.5, 0.02)], Scope(62))
    back = MagnetizationCurve.read_csv(curve.write_csv(tmp_path / "c.csv"), "site:62")
    assert back.points == curve.points
    with pytest.raises(ObservableError):
        MagnetizationCurve([(0.2, 0.9, 0.0), (0.1, 0.5, 0.0)])
    with pytest.raises(ObservableError):
        MagnetizationCurve([(0.1, 1.5, 0.0)])


def test_site_table_uses_layout(falcon):
    psi = StateVector.all_up(falcon.n_nodes)
    rows = site_magnetization_table(psi, falcon)
    assert len(rows) == 27
    node, r, c, v = rows[5]
    assert (r, c) == falcon.layout[5]
    assert v == 1.0


# ---------- Correlations ----------

def test_all_up_correlations():
    cm = correlation_matrix(SampleSet((0, 1, 2), [[1, 1, 1]], [7]))
    assert np.array_equal(cm.values, np.ones((3, 3)))


def test_plus_state_uncorrelated():
    psi = StateVector(np.full(16, 0.25))
    cm = correlation_matrix(psi)
    assert np.allclose(cm.values - np.eye(4), 0.0, atol=1e-12)


def test_ghz_matches_enumeration():
    psi = _ghz4()
    assert np.allclose(correlation_matrix(psi).values, _enumerate_zz(psi), atol=1e-15)
    rnd = _random_state(4, 3)
    expected = _enumerate_zz(rnd)
    np.fill_diagonal(expected, 1.0)
    assert np.allclose(correlation_matrix(rnd).values, expected, atol=1e-14)


def test_sampled_correlations_converge():
    psi = _random_state(4, 4)
    shots = 100_000
    exact = correlation_matrix(psi).values
    sampled = correlation_matrix(sample_z(psi, shots, seed=21)).values
    assert np.all(np.abs(sampled - exact) < 5 / math.sqrt(shots))


def test_distance_bins(frag4):
    psi = _random_state(4, 5)
    anchor = 1
    res = distance_binned_correlation(psi, frag4, anchor)
    assert res.bins[0] == (0, 1.0)
    zz = _enumerate_zz(psi)
    dist = nx.single_source_shortest_path_length(frag4.graph(), anchor)
    for d, value in res.bins[1:]:
        members = [j for j in frag4.nodes if dist[j] == d]
        assert value == pytest.approx(float(np.mean([zz[anchor, j] for j in members])), abs=1e-14)


def test_distance_bins_all_up(falcon):
    ss = SampleSet(tuple(falcon.nodes), [[1] * 27], [3])
    res = distance_binned_correlation(ss, falcon, anchor=0)
    assert all(v == 1.0 for _, v in res.bins)
    assert [d for d, _ in res.bins] == list(range(len(res.bins)))


def test_distance_bins_bad_anchor(frag4):
    with pytest.raises(ObservableError):
        distance_binned_correlation(StateVector.all_up(4), frag4, anchor=9)


def test_observables_gauge_invariant(frag6):
    psi = trotter_evolve(frag6, three_edge_coloring(frag6), TrotterConfig(n_steps=4, theta_h=0.9))
    r = {0: -1, 1: 1, 2: -1, 3: -1, 4: 1, 5: 1}
    nodes = list(frag6.nodes)
    gauged = gauge_state(psi, r, nodes)
    flip = np.array([r[n] for n in nodes])
    assert np.allclose(gauged.z_expectations() * flip, psi.z_expectations(), atol=1e-14)
    assert np.allclose(correlation_matrix(gauged).values * np.outer(flip, flip), correlation_matrix(psi).values, atol=1e-14)
    shots = 20_000
    restored = ungauge(sample_z(gauged, shots, seed=4), r)
    for n in nodes:
        assert abs(magnetization(restored, Scope(n)).value - magnetization(psi, Scope(n)).value) < 5 / math.sqrt(shots)


# ---------- RMSE ----------

def _ref():
    return ReferenceCurve(thetas=np.arange(5.0), values=np.array([0.0, 1.0, 0.0, 1.0, 0.0]), reference_id="knots")


def test_rmse_identical_is_zero():
    ref = _ref()
    assert rmse_vs_reference(list(zip(ref.thetas, ref.values)), ref).rmse == pytest.approx(0.0, abs=1e-14)


def test_rmse_constant_offset():
    ref = _ref()
    rep = rmse_vs_reference([(t, v + 0.1) for t, v in zip(ref.thetas, ref.values)], ref)
    assert rep.rmse == pytest.approx(0.1, abs=1e-12)
    assert rep.spline_kind == "natural_cubic"
    assert rmse_vs_reference([(t, v - 0.1) for t, v in zip(ref.thetas, ref.values)], ref).rmse == pytest.approx(rep.rmse)


def test_rmse_hand_computed_spline():
    # natural spline through (0,0),(1,1),(2,0),(3,1),(4,0): midpoints 43/56, 25/56, 25/56, 43/56
    rep = rmse_vs_reference([(0.5, 0.0), (1.5, 0.0), (2.5, 0.0), (3.5, 0.0)], _ref())
    assert rep.rmse == pytest.approx(math.sqrt(1237) / 56, abs=1e-12)
    assert rep.n_points == 4


def test_rmse_refuses_extrapolation():
    with pytest.raises(ObservableError):
        rmse_vs_reference([(4.5, 0.0)], _ref())
    with pytest.raises(ObservableError):
        ReferenceCurve(thetas=np.arange(3.0), values=np.zeros(3))


def test_load_reference_curve(tmp_path):
    p = tmp_path / "lowesa.csv"
    p.write_text("# digitised\ntheta,value\n0.3,0.5\n0.0,1.0\n0.2,0.7\n0.1,0.9\n", encoding="utf-8")
    ref = load_reference_curve(p)
    assert ref.reference_id == "lowesa"
    assert ref.thetas.tolist() == [0.0, 0.1, 0.2, 0.3]
