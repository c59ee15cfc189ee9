import math

import pytest

from models import ScheduleKind, SweepMethod
from schedule import (
    AnnealSchedule,
    DerivedParams,
    FeasibilityFlags,
    HGainSchedule,
    InfeasibleParamsError,
    ScheduleError,
    SweepPlan,
    build_hgain_schedules,
    build_reverse_schedule,
    derive_params,
    plan_fixed_time_sweep,
    plan_sweep,
    sweep_angles,
    validate_schedule,
)


def _params(s_star, pause_ns, **flags):
    return DerivedParams(
        theta_h=1.0, n_steps=10, j_qa=-0.5, s_star=s_star, a_ghz=1.0, b_ghz=1.0,
        t_from_b_ns=pause_ns, t_from_a_ns=pause_ns, pause_ns=pause_ns, ratio_residual=0.0,
        flags=FeasibilityFlags(**flags),
    )


# ---------- derive_params ----------

def test_closed_form_at_half_pi(synthetic_cal, device):
    p = derive_params(math.pi / 2, 20, -0.5, synthetic_cal, device, s_selection="interpolate")
    assert p.s_star == pytest.approx(2 / 3, abs=1e-12)
    assert p.t_from_a_ns == pytest.approx(7.5, abs=1e-12)
    assert p.t_from_b_ns == pytest.approx(7.5, abs=1e-12)
    assert p.pause_ns == (p.t_from_a_ns + p.t_from_b_ns) / 2


@pytest.mark.parametrize("n_steps", [1, 20, 200])
def test_closed_form_residuals(synthetic_cal, device, n_steps):
    for theta in sweep_angles(15):
        p = derive_params(theta, n_steps, -0.5, synthetic_cal, device, s_selection="interpolate")
        assert p.s_star == pytest.approx(math.pi / (math.pi + theta), abs=1e-12)
        assert p.pause_ns == pytest.approx(n_steps * (math.pi + theta) / (4 * math.pi), rel=1e-12)
        res_b = 2 * p.pause_ns * 2 * math.pi * p.b_ghz * p.j_qa + n_steps * math.pi
        res_a = p.pause_ns * 2 * math.pi * p.a_ghz - n_steps * theta
        assert abs(res_b) < 1e-12 * n_steps
        assert abs(res_a) < 1e-12 * n_steps


def test_grid_selection_within_one_step(synthetic_cal, device):
    h = synthetic_cal.step
    n = 200
    for theta in sweep_angles(25):
        p = derive_params(theta, n, -0.5, synthetic_cal, device)
        exact = math.pi / (math.pi + theta)
        assert abs(p.s_star - exact) <= h + 1e-15

        def mismatch(s):
            return abs(n * theta / (4 * math.pi * (1 - s)) - n / (4 * s))

        assert p.time_mismatch_ns <= max(mismatch(exact - h), mismatch(exact + h))


def test_grid_residual_is_minimal(synthetic_cal, device):
    from schedule import ratio_residual

    p = derive_params(0.7, 50, -0.5, synthetic_cal, device)
    all_res = ratio_residual(synthetic_cal.a_ghz, synthetic_cal.b_ghz, 0.7, -0.5)
    assert p.ratio_residual == pytest.approx(float(all_res.min()), abs=1e-15)


def test_pause_scales_linearly_in_n(synthetic_cal, device):
    for theta in (0.1, 0.8, math.pi / 2):
        one = derive_params(theta, 37, -0.02, synthetic_cal, device)
        two = derive_params(theta, 74, -0.02, synthetic_cal, device)
        assert two.pause_ns == 2 * one.pause_ns


def test_small_theta_is_b_dominated(synthetic_cal, device):
    p = derive_params(1e-6, 20, -0.5, synthetic_cal, device)
    assert p.s_star == pytest.approx(1.0, abs=1e-3)
    assert p.flags.below_time_resolution
    assert p.flags.pause_below_window
    assert not p.feasible


def test_precision_flag(synthetic_cal, device):
    p = derive_params(1.0, 200, -0.0001, synthetic_cal, device)
    assert p.flags.below_coupler_precision
    assert not p.feasible


@pytest.mark.parametrize("theta,n,j", [(0.0, 10, -0.5), (2.0, 10, -0.5), (1.0, 0, -0.5), (1.0, 10, 0.5)])
def test_derive_rejects_bad_input(synthetic_cal, device, theta, n, j):
    with pytest.raises(ScheduleError):
        derive_params(theta, n, j, synthetic_cal, device)


def test_params_json_roundtrip(synthetic_cal, device):
    p = derive_params(0.3, 5, -0.0001, synthetic_cal, device)
    back = DerivedParams.from_dict(p.to_dict())
    assert back == p


# ---------- builders ----------

def test_reverse_schedule_example(device):
    sched = build_reverse_schedule(_params(0.5, 1000.0), device)
    assert sched.kind is ScheduleKind.REVERSE
    got = [(pytest.approx(t, abs=1e-12), pytest.approx(s)) for t, s in sched.points]
    assert [(0.0, 1.0), (0.25, 0.5), (1.25, 0.5), (1.5, 1.0)] == got
    assert sched.max_slope() <= device.max_slope + 1e-9


def test_reverse_schedule_degenerate_at_one(device):
    sched = build_reverse_schedule(_params(1.0, 800.0), device)
    assert sched.points == ((0.0, 1.0), (0.8, 1.0))


def test_reverse_schedule_window(device):
    with pytest.raises(ScheduleError):
        build_reverse_schedule(_params(0.5, 3000.0 * 1000), device)
    with pytest.raises(ScheduleError):
        build_reverse_schedule(_params(0.9, 50.0), device)  # 0.15 µs total


def test_reverse_schedule_unprogrammable_j(device):
    with pytest.raises(InfeasibleParamsError):
        build_reverse_schedule(_params(0.5, 1000.0, below_coupler_precision=True), device)


@pytest.mark.parametrize("flag", ["pause_below_window", "pause_above_window", "below_time_resolution"])
def test_builders_reject_flagged_pauses(device, flag):
    p = _params(0.5, 1000.0, **{flag: True})
    with pytest.raises(InfeasibleParamsError, match=flag):
        build_reverse_schedule(p, device)
    with pytest.raises(InfeasibleParamsError, match=flag):
        build_hgain_schedules(p, device)


def test_short_pause_on_real_device_is_infeasible(synthetic_cal, device):
    p = derive_params(0.4, 2, -0.5, synthetic_cal, device)
    assert p.flags.pause_below_window
    with pytest.raises(InfeasibleParamsError):
        build_reverse_schedule(p, device)


def test_hgain_example(device):
    sched, hg = build_hgain_schedules(_params(0.5, 1000.0), device)
    assert sched.kind is ScheduleKind.FORWARD
    assert sched.points[1] == pytest.approx((0.25, 0.5))
    assert hg.points[0] == (0.0, -4.0)
    assert hg.points[1] == pytest.approx((0.22, -4.0))
    assert hg.points[2] == pytest.approx((0.25, 0.0))
    assert hg.points[-1][1] == 0.0
    assert hg.duration_us == sched.duration_us


def test_hgain_floor_follows_device(device):
    from calibration import load_device_profile

    _, hg = build_hgain_schedules(_params(0.5, 1000.0), load_device_profile("advantage_system4_1"))
    assert hg.points[0][1] == -3.0


def test_hgain_ramp_down_too_long(device):
    with pytest.raises(ScheduleError):
        build_hgain_schedules(_params(0.5, 1000.0), device, ramp_down_ns=300.0)


def test_both_methods_share_pause(device):
    p = _params(0.62, 4321.0)
    rev = build_reverse_schedule(p, device)
    fwd, _ = build_hgain_schedules(p, device)
    (r0, r1, rs), = rev.pause_segments()
    (f0, f1, fs), = fwd.pause_segments()
    assert rs == fs == 0.62
    assert r1 - r0 == pytest.approx(f1 - f0, abs=1e-12)


def test_schedule_invariants_enforced(device):
    with pytest.raises(ScheduleError):
        AnnealSchedule(points=((0.0, 0.5), (1.0, 1.0)), kind=ScheduleKind.REVERSE)
    with pytest.raises(ScheduleError):
        AnnealSchedule(points=((0.0, 1.0), (1.0, 0.5)), kind=ScheduleKind.REVERSE)
    with pytest.raises(ScheduleError):
        AnnealSchedule(points=((0.0, 1.0), (0.0, 1.0)), kind=ScheduleKind.REVERSE)
    with pytest.raises(ScheduleError):
        HGainSchedule(points=((0.0, -4.0), (1.0, -1.0)))
    steep = AnnealSchedule(points=((0.0, 1.0), (0.1, 0.5), (1.0, 0.5), (1.1, 1.0)), kind=ScheduleKind.REVERSE)
    with pytest.raises(ScheduleError):
        validate_schedule(steep, device)
    with pytest.raises(ScheduleError):
        validate_schedule(AnnealSchedule.pause_only(0.5, 1.0), device)


# ---------- sweeps ----------

def test_single_angle_sweep(synthetic_cal, device):
    plan = plan_sweep(200, -0.001, 1, SweepMethod.REVERSE, synthetic_cal, device)
    assert len(plan.entries) == 1
    assert plan.entries[0].theta_h == pytest.approx(math.pi / 2)


def test_hundred_angle_sweep(synthetic_cal, device, tmp_path):
    plan = plan_sweep(200, -0.001, 100, "reverse", synthetic_cal, device)
    thetas = [e.theta_h for e in plan.entries]
    assert len(thetas) == 100
    assert all(b > a for a, b in zip(thetas, thetas[1:]))
    assert thetas[-1] == pytest.approx(math.pi / 2)
    assert all(e.feasible for e in plan.entries)
    back = SweepPlan.from_dict(plan.to_dict())
    assert [e.schedule for e in back.entries] == [e.schedule for e in plan.entries]
    rows = plan.write_csv(tmp_path / "sweep.csv").read_text(encoding="utf-8").splitlines()
    assert len(rows) == 101


def test_hgain_sweep_schedules(synthetic_cal, device):
    plan = plan_sweep(200, -0.001, 10, "hgain", synthetic_cal, device)
    for e in plan.entries:
        assert e.feasible
        assert e.hgain is not None and e.hgain.duration_us == e.schedule.duration_us


def test_short_runs_flagged_not_dropped(synthetic_cal, device):
    plan = plan_sweep(5, -0.003, 20, "reverse", synthetic_cal, device)
    assert len(plan.entries) == 20
    assert sum(not e.feasible for e in plan.entries) > len(plan.entries) // 2
    assert all(e.issues for e in plan.entries if not e.feasible)
    assert all(e.schedule is None for e in plan.entries if not e.params.feasible)


def test_fixed_time_reverse():
    from calibration import DeviceConstraints

    plan = plan_fixed_time_sweep(10.0, -0.5, "reverse", DeviceConstraints())
    assert len(plan.entries) == 101
    assert plan.entries[37].s == pytest.approx(0.37)
    assert all(e.pause_us == pytest.approx(9.0) for e in plan.entries)
    (t0, t1, s), = plan.entries[50].schedule.pause_segments()
    assert (t1 - t0, s) == (pytest.approx(9.0), 0.5)


def test_fixed_time_hgain(device):
    plan = plan_fixed_time_sweep(10.0, -0.5, "hgain", device)
    assert len(plan.entries) == 101
    assert all(e.pause_us == pytest.approx(8.49) for e in plan.entries)
    hg = plan.entries[10].hgain
    assert hg.points[1] == (1.0, -4.0)
    assert hg.points[2] == pytest.approx((1.01, 0.0))


def test_fixed_time_budget(device):
    with pytest.raises(ScheduleError):
        plan_fixed_time_sweep(1.2, -0.5, "hgain", device)
