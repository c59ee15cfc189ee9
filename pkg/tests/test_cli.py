import json
import math

import numpy as np
import pytest

import cli
from calibration import DeviceConstraints
from dynamics import SampleSet
from observables import MagnetizationCurve
from providers import SamplerResponse
from utils.args_parser import FlagParseError, parse_float_list, parse_observable, parse_theta

LATTICE = "falcon27:10"


@pytest.fixture()
def fast_device(tmp_path):
    # 1 ns minimum anneal: short equivalent pauses stay programmable
    dc = DeviceConstraints(device_id="fast", min_anneal_us=0.001, anneal_time_resolution_us=1e-5)
    path = tmp_path / "fast.json"
    path.write_text(json.dumps(dc.model_dump()), encoding="utf-8")
    return str(path)


def _error(capsys):
    lines = [ln for ln in capsys.readouterr().err.splitlines() if ln.startswith('{"error"')]
    return json.loads(lines[-1])


# ---------- flag helpers ----------

def test_theta_snaps_to_half_pi():
    assert parse_theta("1.5708") == math.pi / 2
    assert parse_theta("pi/2") == math.pi / 2
    assert parse_theta("0.5") == 0.5
    assert parse_float_list("0.1, 1.5708") == [0.1, math.pi / 2]
    with pytest.raises(FlagParseError):
        parse_theta("half")


def test_observable_flag():
    assert parse_observable("site:62").node == 62
    assert parse_observable("mean").node is None
    with pytest.raises(FlagParseError):
        parse_observable("corner")


# ---------- exit codes ----------

def test_usage_error(capsys):
    assert cli.main(["derive", "--theta", "0.5"]) == 2
    assert _error(capsys)["exit_code"] == 2


def test_bad_lattice_is_usage_error(tmp_path, capsys):
    code = cli.main(["simulate", "--lattice", "octagon99", "--steps", "1", "--thetas", "0.5", "--out", str(tmp_path)])
    assert code == 2
    assert _error(capsys)["error"] == "FlagParseError"


def test_missing_input_is_runtime_error(tmp_path, capsys):
    code = cli.main(["schedule", "--derived", str(tmp_path / "nope.json"), "--out", str(tmp_path)])
    assert code == 4
    assert _error(capsys)["exit_code"] == 4


def test_derive_closed_form(tmp_path, capsys):
    code = cli.main([
        "derive", "--theta", "1.5708", "--steps", "20", "--j", "-0.5",
        "--calibration", "synthetic", "--s-selection", "interpolate", "--out", str(tmp_path),
    ])
    assert code == 0
    data = json.loads((tmp_path / "derived.json").read_text(encoding="utf-8"))
    assert data["s_star"] == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert data["pause_ns"] == pytest.approx(7.5, abs=1e-9)
    assert not data["feasible"]
    assert json.loads(capsys.readouterr().out)["n_steps"] == 20
    manifest = json.loads((tmp_path / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["command"] == "derive"
    assert manifest["calibration"] == "synthetic_linear"


def test_derive_require_feasible(tmp_path, capsys):
    code = cli.main(["derive", "--theta", "0.5", "--steps", "20", "--require-feasible", "--out", str(tmp_path)])
    assert code == 3
    err = _error(capsys)
    assert err["error"] == "InfeasibleParamsError"
    assert (tmp_path / "derived.json").exists()


def test_schedule_with_unprogrammable_pause(tmp_path, capsys):
    code = cli.main(["schedule", "--theta", "0.4", "--steps", "2", "--method", "reverse", "--out", str(tmp_path)])
    assert code == 3
    assert "pause_below_window" in _error(capsys)["message"]


def test_sweep_hundred_rows(tmp_path):
    code = cli.main(["sweep", "--steps", "200", "--j", "-0.001", "--angles", "100", "--method", "reverse",
                     "--out", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "sweep.csv").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 101
    assert lines[0].startswith("theta_h,s,")


def test_sweep_threads_do_not_change_output(tmp_path):
    for threads in ("1", "4"):
        assert cli.main(["sweep", "--steps", "6", "--j", "-0.002", "--angles", "25", "--method", "hgain",
                         "--threads", threads, "--out", str(tmp_path / threads)]) == 0
    one, four = (tmp_path / t / "sweep.csv" for t in ("1", "4"))
    assert one.read_bytes() == four.read_bytes()


def test_fixed_time_sweep(tmp_path):
    assert cli.main(["sweep", "--fixed-time", "10", "--method", "hgain", "--out", str(tmp_path)]) == 0
    assert len((tmp_path / "sweep.csv").read_text(encoding="utf-8").splitlines()) == 102


def test_simulate_trotter_curve(tmp_path):
    code = cli.main(["simulate", "--lattice", "falcon27:6", "--mode", "trotter", "--steps", "3",
                     "--angles", "5", "--observable", "site:0", "--threads", "2", "--out", str(tmp_path)])
    assert code == 0
    curve = MagnetizationCurve.read_csv(tmp_path / "curve.csv", "site:0")
    assert len(curve.points) == 5
    assert curve.thetas[-1] == pytest.approx(math.pi / 2)


def test_simulate_quench(tmp_path, fast_device):
    code = cli.main(["simulate", "--lattice", "falcon27:4", "--mode", "anneal", "--thetas", "0.5",
                     "--quench-steps", "10,100", "--device", fast_device, "--out", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "quench.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("n_steps,pause_ns,ramp_ns")
    assert len(lines) == 3


def test_embed_search_then_sample(tmp_path):
    emb_dir, sched_dir, out = tmp_path / "embed", tmp_path / "sched", tmp_path / "sample"
    assert cli.main(["embed", "--lattice", "hexgrid(1,1)", "--pegasus-size", "6", "--mode", "search",
                     "--tiles", "3", "--attempts", "50", "--seed", "5", "--out", str(emb_dir)]) == 0
    tiling = json.loads((emb_dir / "tiling.json").read_text(encoding="utf-8"))
    assert tiling["n_tiles"] == 3
    assert all(tiling["verified"].values())

    assert cli.main(["schedule", "--theta", "0.4", "--steps", "2", "--method", "pause",
                     "--out", str(sched_dir)]) == 0
    assert cli.main(["sample", "--lattice", "hexgrid(1,1)", "--schedule", str(sched_dir / "schedule.json"),
                     "--tiling", str(emb_dir / "tiling.json"), "--num-reads", "200", "--gauges", "4",
                     "--seed", "1", "--out", str(out)]) == 0
    merged = SampleSet.read_csv(out / "samples.csv")
    assert merged.num_reads == 600
    assert merged.metadata["theta_h"] == pytest.approx(0.4)
    for t in range(3):
        assert SampleSet.read_csv(out / f"samples_tile{t}.csv").num_reads == 200


def test_sample_request_document(tmp_path):
    sched_dir, first, resp = tmp_path / "sched", tmp_path / "first", tmp_path / "resp" / "resp.json"
    assert cli.main(["schedule", "--theta", "0.7", "--steps", "2", "--method", "pause",
                     "--out", str(sched_dir)]) == 0
    assert cli.main(["sample", "--lattice", "falcon27:4", "--schedule", str(sched_dir / "schedule.json"),
                     "--num-reads", "50", "--gauges", "2", "--seed", "3", "--out", str(first)]) == 0

    assert cli.main(["sample", "--request", str(first / "request.json"), "--out", str(resp)]) == 0
    doc = json.loads(resp.read_text(encoding="utf-8"))
    response = SamplerResponse.from_dict(doc)
    assert len(response.samples) == 1
    assert response.timing.num_reads == 50
    replay = response.samples[0]
    direct = SampleSet.read_csv(first / "samples_tile0.csv")
    assert replay.nodes == direct.nodes
    assert replay.num_reads == direct.num_reads == 50
    np.testing.assert_array_equal(replay.spins, direct.spins)
    np.testing.assert_array_equal(replay.multiplicity, direct.multiplicity)
    manifest = json.loads((resp.parent / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["outputs"] == [str(resp)]


def test_sample_needs_schedule_or_request(tmp_path, capsys):
    assert cli.main(["sample", "--lattice", "falcon27:4", "--out", str(tmp_path)]) == 2
    assert _error(capsys)["error"] == "FlagParseError"


# ---------- pipeline ----------

def _write_tiling(path, n_nodes, n_tiles):
    doc = {
        "pegasus_size": 16,
        "embeddings": [
            {"tile_index": t, "mapping": {str(n): 100 * t + n for n in range(n_nodes)}} for t in range(n_tiles)
        ],
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc), encoding="utf-8")


def _pipeline(root, device, threads):
    d, s, m, p, a = (root / x for x in ("derive", "schedule", "simulate", "sample", "analyze"))
    tiling = root / "tiling.json"
    _write_tiling(tiling, 10, 2)
    assert cli.main(["derive", "--theta", "0.6", "--steps", "4", "--device", device, "--out", str(d)]) == 0
    assert cli.main(["schedule", "--derived", str(d / "derived.json"), "--method", "reverse",
                     "--device", device, "--out", str(s)]) == 0
    assert cli.main(["simulate", "--lattice", LATTICE, "--schedule", str(s / "schedule.json"),
                     "--out", str(m)]) == 0
    assert cli.main(["sample", "--lattice", LATTICE, "--schedule", str(s / "schedule.json"),
                     "--tiling", str(tiling), "--num-reads", "400", "--gauges", "5", "--seed", "11",
                     "--validate-device", "--device", device, "--threads", str(threads), "--out", str(p)]) == 0
    assert cli.main(["analyze", "--samples", str(p / "samples.csv"), "--lattice", LATTICE, "--anchor", "0",
                     "--correlations", "--observable", "site:3", "--out", str(a)]) == 0
    return root


def _csv_bytes(root):
    return {str(path.relative_to(root)): path.read_bytes() for path in sorted(root.rglob("*.csv"))}


def test_pipeline_is_deterministic(tmp_path, fast_device):
    first = _csv_bytes(_pipeline(tmp_path / "one", fast_device, threads=1))
    second = _csv_bytes(_pipeline(tmp_path / "two", fast_device, threads=4))
    assert "analyze/curve.csv" in first and "sample/samples.csv" in first
    assert "simulate/sites.csv" in first and "schedule/waveform_s.csv" in first
    assert first == second

    sched = json.loads((tmp_path / "one" / "schedule" / "schedule.json").read_text(encoding="utf-8"))
    assert sched["schedule"]["kind"] == "reverse"
    curve = MagnetizationCurve.read_csv(tmp_path / "one" / "analyze" / "curve.csv", "site:3")
    assert curve.thetas[0] == pytest.approx(0.6)
