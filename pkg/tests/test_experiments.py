import asyncio
import math

import numpy as np
import pytest
from scipy.sparse.linalg import expm_multiply

from calibration import DeviceConstraints
from dynamics import StateVector, TrotterConfig, ibmq_hamiltonian, trotter_evolve
from lattice import three_edge_coloring
from schedule import plan_sweep
from services.experiments import magnetization_sweep, quench_deviation, schedule_sweep

THETAS = [1.2, 0.3, math.pi / 2, 0.75]


@pytest.fixture(scope="module")
def fast_device():
    # 1 ns minimum anneal so that short pauses still get ramps
    return DeviceConstraints(device_id="fast", min_anneal_us=0.001, anneal_time_resolution_us=1e-5)


def test_trotter_sweep_matches_direct_circuit(frag6):
    points = asyncio.run(magnetization_sweep(frag6, THETAS, 4, "trotter", threads=2))
    assert [p.theta_h for p in points] == sorted(THETAS)
    coloring = three_edge_coloring(frag6)
    for p in points:
        ref = trotter_evolve(frag6, coloring, TrotterConfig(n_steps=4, theta_h=p.theta_h))
        assert np.allclose(p.z, ref.z_expectations(), atol=1e-12)
        assert p.params is None


def test_anneal_sweep_reproduces_ibmq_propagator(frag6, synthetic_cal, device):
    points = asyncio.run(
        magnetization_sweep(frag6, THETAS, 3, "anneal", cal=synthetic_cal, dc=device, transverse_sign=-1)
    )
    psi0 = StateVector.all_up(6).amplitudes
    for p in points:
        ref = StateVector(expm_multiply(-3j * ibmq_hamiltonian(frag6, p.theta_h), psi0))
        assert np.allclose(p.z, ref.z_expectations(), atol=1e-8)
        assert p.schedule.kind.value == "pause"
        assert p.params.n_steps == 3


def test_sweep_thread_count_does_not_matter(frag4, synthetic_cal, device):
    one = asyncio.run(magnetization_sweep(frag4, THETAS, 2, "anneal", cal=synthetic_cal, dc=device, threads=1))
    many = asyncio.run(magnetization_sweep(frag4, THETAS, 2, "anneal", cal=synthetic_cal, dc=device, threads=4))
    for a, b in zip(one, many):
        assert np.array_equal(a.state.amplitudes, b.state.amplitudes)


def test_anneal_sweep_needs_calibration(frag4):
    with pytest.raises(ValueError):
        asyncio.run(magnetization_sweep(frag4, [0.5], 1, "anneal"))


def test_ramped_sweep_uses_reverse_schedule(frag4, synthetic_cal, fast_device):
    points = asyncio.run(
        magnetization_sweep(frag4, [0.5], 10, "anneal", cal=synthetic_cal, dc=fast_device, with_ramps=True)
    )
    sched = points[0].schedule
    assert sched.kind.value == "reverse"
    assert sched.points[0] == (0.0, 1.0) and sched.points[-1][1] == 1.0
    assert np.all(np.abs(points[0].z) <= 1.0 + 1e-12)


def test_quench_rows(frag4, synthetic_cal, fast_device):
    rows = asyncio.run(quench_deviation(frag4, 0.5, (1000, 10, 100), synthetic_cal, fast_device, threads=2))
    assert [r.n_steps for r in rows] == [10, 100, 1000]
    for r in rows:
        assert math.isfinite(r.m_pause) and math.isfinite(r.m_ramped)
        assert 0.0 <= r.deviation <= 2.0
        assert r.ramp_ns > 0
    ratios = [r.pause_to_ramp for r in rows]
    assert ratios == sorted(ratios)
    assert ratios[0] < ratios[-1]


@pytest.mark.parametrize("n_steps, j, method", [(5, -0.003, "reverse"), (200, -0.001, "hgain")])
def test_threaded_schedule_sweep_matches_serial(synthetic_cal, device, tmp_path, n_steps, j, method):
    serial = plan_sweep(n_steps, j, 20, method, synthetic_cal, device)
    threaded = asyncio.run(schedule_sweep(n_steps, j, 20, method, synthetic_cal, device, threads=4))
    assert [e.theta_h for e in threaded.entries] == [e.theta_h for e in serial.entries]
    assert [e.issues for e in threaded.entries] == [e.issues for e in serial.entries]
    assert threaded.meta == serial.meta
    a = serial.write_csv(tmp_path / "serial.csv").read_bytes()
    b = threaded.write_csv(tmp_path / "threaded.csv").read_bytes()
    assert a == b
