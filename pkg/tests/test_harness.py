import json

import pytest

from rstre import ExperimentConfig
from rstre.cli import main
from rstre.config import config_hash, parse_config, serialize_config
from rstre.errors import ConfigError
from rstre.experiments import BASE_FIELDS, run_diameter_sweep
from rstre.records import read_records, render_records, write_records
from rstre.seeds import SeedStream


def test_minimal_flags():
    cfg = parse_config(flags={"mode": "diameter", "gamma": "5", "n": "4096", "trials": "10", "seed": "1"})
    assert cfg.n_grid == (4096,) and cfg.trials_per_n == 10 and cfg.master_seed == 1
    assert cfg.sampler == "auto" and cfg.threads == 1


def test_non_increasing_grid_named():
    with pytest.raises(ConfigError, match="n_grid"):
        parse_config(flags={"mode": "diameter", "n_grid": "100,50"})


def test_round_trip(tmp_path):
    cfg = ExperimentConfig(mode="repeat", n_grid=(10, 20), gamma=-0.5, r_probes=(0.25,), k_probes=(3, 4))
    path = tmp_path / "c.toml"
    path.write_text(serialize_config(cfg))
    assert parse_config(path) == cfg


def test_file_errors_carry_line(tmp_path):
    path = tmp_path / "c.toml"
    path.write_text('mode = "diameter"\nn_grid = [10]\nbogus = 3\n')
    with pytest.raises(ConfigError, match=r"c\.toml:3.*bogus"):
        parse_config(path)
    path.write_text('mode = "diameter"\nn_grid = [10]\ntrials_per_n = "x"\n')
    with pytest.raises(ConfigError, match=r":3.*trials_per_n"):
        parse_config(path)
    path.write_text('mode = "diameter"\n')
    with pytest.raises(ConfigError, match="n_grid"):
        parse_config(path)


def test_flags_override_file(tmp_path):
    path = tmp_path / "c.toml"
    path.write_text('mode = "diameter"\nn_grid = [10]\ngamma = 2.0\n')
    assert parse_config(path, {"gamma": "-1"}).gamma == -1.0


def test_seed_stream():
    s = SeedStream(42)
    assert s.child("a", 1) == SeedStream(42).child("a", 1)
    kids = {s.child(label, i) for label in ("a", "b", "ab") for i in range(200)}
    assert len(kids) == 600


def test_empty_outputs(tmp_path):
    write_records([], "csv", tmp_path / "e.csv", header=list(BASE_FIELDS), metadata={"config_hash": "x"})
    assert (tmp_path / "e.csv").read_text() == ",".join(BASE_FIELDS) + "\n"
    write_records([], "jsonl", tmp_path / "e.jsonl", header=list(BASE_FIELDS))
    assert (tmp_path / "e.jsonl").read_text() == ""
    meta = json.loads((tmp_path / "e.csv.meta.json").read_text())
    assert meta["record_count"] == 0 and meta["config_hash"] == "x" and "artifact_version" in meta


@pytest.mark.parametrize("fmt", ["csv", "jsonl"])
def test_write_read_back(tmp_path, fmt):
    cfg = ExperimentConfig(mode="diameter", n_grid=(64,), trials_per_n=3)
    recs = run_diameter_sweep(cfg)
    path = tmp_path / f"r.{fmt}"
    write_records(recs, fmt, path, header=list(BASE_FIELDS), timing=True)
    back = read_records(path, fmt)
    assert back == [{k: r.as_row()[k] for k in BASE_FIELDS} for r in recs]


def test_floats_have_17_digits():
    text = render_records([{"x": 0.1}], "csv")
    assert text.splitlines()[1] == "0.10000000000000001"


def test_config_hash_stable():
    cfg = ExperimentConfig(mode="diameter", n_grid=(64,))
    assert config_hash(cfg) == config_hash(cfg.replace())
    assert config_hash(cfg) != config_hash(cfg.replace(gamma=1.0))


def test_cli_stdout(capsys):
    assert main(["sweep-diameter", "--n", "64", "--trials", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("mode,n,gamma") and len(lines) == 3


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["sweep-repeat", "--n-grid", "64,32"]) == 2
    assert main(["sweep-repeat", "--n", "64", "--mode", "diameter"]) == 2
    assert main(["sweep-repeat", "--n", "64", "--out", str(tmp_path / "no" / "x.csv")]) == 3
    with pytest.raises(SystemExit) as info:
        main(["verify", "everything"])
    assert info.value.code == 2


def test_cli_env_threads(monkeypatch, tmp_path):
    monkeypatch.setenv("RSTRE_THREADS", "2")
    assert main(["sweep-diameter", "--n", "64", "--trials", "2", "--out", str(tmp_path / "a.csv")]) == 0
    monkeypatch.delenv("RSTRE_THREADS")
    assert main(["sweep-diameter", "--n", "64", "--trials", "2", "--out", str(tmp_path / "b.csv")]) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_verify_reduced_budget_banner(capsys):
    assert main(["verify", "oracles", "--budget", "0.5"]) == 0
    out = capsys.readouterr().out
    assert "reduced-budget" in out and "kirchhoff_k3" in out


def test_verify_failure_exit(monkeypatch, capsys):
    from rstre import verification

    failing = verification.CheckResult("always_fails", False, 0, "never")
    monkeypatch.setitem(verification.SUITE_CHECKS, "oracles", (lambda **kw: failing,))
    assert main(["verify", "oracles"]) == 1
    assert "[FAIL] always_fails" in capsys.readouterr().out
