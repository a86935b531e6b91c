"""Certificate files, the batch driver, rechecking, stats, and densities."""

import csv
import dataclasses
import json
from pathlib import Path

import pytest

from maeda.certify import verify_weight
from maeda.hecke import dim_cusp_forms
from maeda.cli import (
    RunConfig,
    certificate_from_json,
    certificate_path,
    certificate_to_json,
    cmd_check,
    cmd_density,
    cmd_stats,
    cmd_verify,
    main,
    ratio_rows,
    ratio_summary,
    read_certificate,
    write_certificate,
)
from maeda.patterns import PrimeType

from test_certify import find_non_witness_prime

T = PrimeType


@pytest.fixture(scope="module")
def small_run(tmp_path_factory) -> Path:
    out = tmp_path_factory.mktemp("run12_60")
    code = cmd_verify(RunConfig(k_min=12, k_max=60, out_dir=out, seed=1))
    assert code == 0
    return out


def test_round_trip_serialization():
    for cert in (verify_weight(12, seed=4), verify_weight(48, seed=4),
                 verify_weight(36, mode="consecutive")):
        assert certificate_from_json(certificate_to_json(cert)) == cert


def test_json_layout_matches_schema():
    cert = verify_weight(24, seed=4)
    payload = json.loads(certificate_to_json(cert))
    assert list(payload) == [
        "weight", "dimension", "mode", "seed", "prime_bound", "vacuous",
        "witnesses", "trials_total", "duration_ms", "schema_version",
    ]
    assert payload["schema_version"] == 1
    assert set(payload["trials_total"]) == {"I", "II", "III"}
    for blob in payload["witnesses"].values():
        assert list(blob) == ["prime", "pattern", "trial"]
        degrees = [d for d, _ in blob["pattern"]]
        assert degrees == sorted(degrees)


def test_malformed_json_rejected():
    cert = verify_weight(24, seed=4)
    good = json.loads(certificate_to_json(cert))
    for breakage in (
        lambda d: d.pop("weight"),
        lambda d: d.update(schema_version=99),
        lambda d: d["witnesses"].update(V={"prime": 5, "pattern": [[1, 1]], "trial": 1}),
        lambda d: d["witnesses"]["I"].update(pattern="xyz"),
    ):
        broken = json.loads(json.dumps(good))
        breakage(broken)
        with pytest.raises(ValueError):
            certificate_from_json(json.dumps(broken))
    with pytest.raises(ValueError):
        certificate_from_json("{not json")


def test_cmd_verify_small_range(small_run):
    # even weights 12..60: 25 of them; k = 14 alone has an empty cusp space
    files = sorted(small_run.glob("cert_*.json"))
    assert len(files) == 24
    assert not certificate_path(small_run, 14).exists()
    with open(small_run / "summary.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 25
    by_weight = {int(r["weight"]): r for r in rows}
    assert by_weight[14]["status"] == "vacuous"
    assert sum(r["status"] == "certified" for r in rows) == 24
    assert by_weight[12]["dimension"] == "1"
    cert12 = read_certificate(certificate_path(small_run, 12))
    assert cert12.vacuous
    assert by_weight[60]["witness_I"] and by_weight[60]["trials_I"]


def test_cmd_verify_resume_is_idempotent(small_run, tmp_path):
    before = {
        p.name: p.read_bytes() for p in small_run.glob("cert_*.json")
    }
    summary_before = (small_run / "summary.csv").read_bytes()
    code = cmd_verify(RunConfig(k_min=12, k_max=60, out_dir=small_run, seed=1,
                                resume=True))
    assert code == 0
    after = {p.name: p.read_bytes() for p in small_run.glob("cert_*.json")}
    assert before == after  # zero recomputation: bytes untouched
    assert (small_run / "summary.csv").read_bytes() == summary_before


def test_cmd_verify_deterministic_up_to_duration(tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    for out in (out_a, out_b):
        assert cmd_verify(RunConfig(k_min=24, k_max=48, out_dir=out, seed=7)) == 0
    for path_a in sorted(out_a.glob("cert_*.json")):
        a = json.loads(path_a.read_text())
        b = json.loads((out_b / path_a.name).read_text())
        a.pop("duration_ms")
        b.pop("duration_ms")
        assert a == b, path_a.name


def test_cmd_verify_parallel_matches_serial(tmp_path):
    serial = tmp_path / "serial"
    parallel = tmp_path / "parallel"
    assert cmd_verify(RunConfig(k_min=24, k_max=60, out_dir=serial, seed=5)) == 0
    assert cmd_verify(RunConfig(k_min=24, k_max=60, out_dir=parallel, seed=5,
                                jobs=2)) == 0
    for path in sorted(serial.glob("cert_*.json")):
        a = json.loads(path.read_text())
        b = json.loads((parallel / path.name).read_text())
        a.pop("duration_ms")
        b.pop("duration_ms")
        assert a == b


def test_cmd_verify_rejects_bad_config(tmp_path, capsys):
    assert cmd_verify(RunConfig(k_min=60, k_max=12, out_dir=tmp_path)) == 2
    assert cmd_verify(RunConfig(k_min=12, k_max=24, out_dir=tmp_path, jobs=0)) == 2
    assert cmd_verify(RunConfig(k_min=12, k_max=24, out_dir=tmp_path,
                                bound=2**21)) == 2
    capsys.readouterr()


def test_cmd_check_passes_on_fresh_run(small_run, capsys):
    assert cmd_check(small_run) == 0
    out = capsys.readouterr().out
    assert "24/24 certificates pass" in out


def test_cmd_check_empty_directory(tmp_path, capsys):
    assert cmd_check(tmp_path) == 0
    assert "0 certificates" in capsys.readouterr().out
    assert cmd_check(tmp_path / "absent") == 2


def test_cmd_check_flags_tampered_certificate(small_run, tmp_path, capsys):
    victim = tmp_path / "tampered"
    victim.mkdir()
    for p in small_run.glob("cert_*.json"):
        (victim / p.name).write_bytes(p.read_bytes())
    cert = read_certificate(victim / "cert_48.json")
    substitute = find_non_witness_prime(48, T.I, cert.witnesses[T.I])
    witnesses = dict(cert.witnesses)
    witnesses[T.I] = dataclasses.replace(witnesses[T.I], prime=substitute)
    write_certificate(victim / "cert_48.json",
                      dataclasses.replace(cert, witnesses=witnesses))
    assert cmd_check(victim) == 1
    out = capsys.readouterr().out
    assert "cert_48.json: FAIL" in out and "pattern mismatch" in out


def test_cmd_check_reports_malformed_file_but_continues(small_run, tmp_path, capsys):
    mixed = tmp_path / "mixed"
    mixed.mkdir()
    (mixed / "cert_24.json").write_bytes(
        certificate_path(small_run, 24).read_bytes()
    )
    (mixed / "cert_999.json").write_text("{broken")
    assert cmd_check(mixed) == 1
    out = capsys.readouterr().out
    assert "cert_24.json: ok" in out and "cert_999.json: FAIL" in out


def test_cmd_stats_outputs(small_run, tmp_path, capsys):
    stats_dir = tmp_path / "stats"
    assert cmd_stats(small_run, stats_dir) == 0
    capsys.readouterr()
    with open(stats_dir / "stats.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    # vacuous (d <= 1) certificates are excluded from the statistics
    weights = {int(r["weight"]) for r in rows}
    assert weights == {k for k in range(12, 61, 2) if dim_cusp_forms(k) >= 2}
    # kind II has no defined density at d = 2, so those weights lack II rows
    for r in rows:
        if int(r["dimension"]) == 2:
            assert r["kind"] in ("I", "III")
    for r in rows:
        assert r["kind"] in ("I", "II", "III")
        assert float(r["ratio"]) == pytest.approx(
            int(r["trials"]) / float(r["expected"]), abs=1e-5
        )
    for kind in ("I", "II", "III"):
        with open(stats_dir / f"histogram_{kind}.csv", newline="") as fh:
            hist = list(csv.DictReader(fh))
        assert sum(int(r["count"]) for r in hist) == sum(
            1 for r in rows if r["kind"] == kind
        )


def test_ratio_rows_and_summary_helpers():
    certs = [verify_weight(k, seed=2) for k in (24, 48, 60)]
    certs.append(verify_weight(12, seed=2))  # vacuous: dropped
    rows = ratio_rows(certs)
    assert {r.weight for r in rows} == {24, 48, 60}
    summary = ratio_summary(rows)
    stats = summary[("random", T.I)]
    assert stats["count"] == 3
    assert stats["min"] <= stats["med"] <= stats["max"]


def test_cmd_stats_single_certificate(tmp_path, capsys):
    out = tmp_path / "single"
    out.mkdir()
    write_certificate(out / "cert_48.json", verify_weight(48, seed=3))
    assert cmd_stats(out) == 0
    capsys.readouterr()
    with open(out / "stats.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 3  # one row per kind
    with open(out / "histogram_I.csv", newline="") as fh:
        hist = list(csv.DictReader(fh))
    assert len(hist) == 1 and hist[0]["count"] == "1"


def test_cmd_density_table(capsys):
    assert cmd_density(1, 5) == 0
    out = capsys.readouterr().out
    lines = {int(line.split()[0]): line for line in out.splitlines()[1:] if line.strip()}
    assert "1/5=0.2000" in lines[5]
    assert "8/15=0.5333" in lines[5]
    assert "1/3=0.3333" in lines[4]
    # D_II is undefined below d = 3
    assert lines[2].split()[2] == "-"
    assert cmd_density(3, 2) == 2


def test_main_entry_points(tmp_path, capsys, monkeypatch):
    out = tmp_path / "cli"
    code = main(["verify", "--from", "12", "--to", "16", "--seed", "1",
                 "--out", str(out)])
    assert code == 0
    assert main(["check", str(out)]) == 0
    assert main(["stats", str(out)]) == 0
    assert main(["density", "--from", "2", "--to", "4"]) == 0
    capsys.readouterr()

    monkeypatch.delenv("MAEDA_OUT", raising=False)
    assert main(["verify", "--from", "12", "--to", "16"]) == 2
    capsys.readouterr()

    monkeypatch.setenv("MAEDA_OUT", str(tmp_path / "env_out"))
    assert main(["verify", "--from", "12", "--to", "12", "--seed", "1"]) == 0
    assert (tmp_path / "env_out" / "cert_12.json").exists()
    capsys.readouterr()

    with pytest.raises(SystemExit):
        main(["verify", "--from", "12"])  # argparse: missing --to
    capsys.readouterr()
