import json

import pytest

from smallqec.channel import iid_biased, save_channel
from smallqec.cli import main
from smallqec.code import phase_flip3, steane
from smallqec.decoder import logical_error_rate


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# --------------------------------------------------------------------- eval


def test_eval_prints_rate(capsys):
    rc, out, err = run(capsys, "eval", "--code", "steane", "--p", "0.01", "--eta", "1")
    assert rc == 0
    assert out == "0.001030595794757172\n"
    expected = logical_error_rate(steane(), iid_biased(7, 0.01, 1.0))
    assert float(out) == expected


def test_eval_eta_defaults_to_one(capsys):
    rc, out, _ = run(capsys, "eval", "--code", "steane", "--p", "0.01")
    assert rc == 0
    assert out == "0.001030595794757172\n"


def test_eval_channel_file(tmp_path, capsys):
    path = tmp_path / "ch.json"
    save_channel(iid_biased(3, 0.1, 1.0), str(path))
    rc, out, _ = run(capsys, "eval", "--code", "phase_flip3", "--channel-file", str(path))
    assert rc == 0
    expected = logical_error_rate(phase_flip3(), iid_biased(3, 0.1, 1.0))
    assert float(out) == pytest.approx(expected, abs=1e-15)


def test_eval_channel_file_wrong_size(tmp_path, capsys):
    path = tmp_path / "ch.json"
    save_channel(iid_biased(3, 0.1, 1.0), str(path))
    rc, _, err = run(capsys, "eval", "--code", "steane", "--channel-file", str(path))
    assert rc == 3
    assert "n=3" in err


def test_eval_table_export(tmp_path, capsys):
    table = tmp_path / "table.json"
    rc, _, _ = run(
        capsys, "eval", "--code", "phase_flip3", "--p", "0.1", "--table-out", str(table)
    )
    assert rc == 0
    records = json.loads(table.read_text())
    assert len(records) == 4
    assert set(records[0]) == {"syndrome", "recovery", "class_probs"}


def test_eval_unknown_code(capsys):
    rc, _, err = run(capsys, "eval", "--code", "nosuch", "--p", "0.01")
    assert rc == 3
    assert "nosuch" in err


def test_eval_requires_exactly_one_channel_source(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--code", "steane"])
    assert exc.value.code == 2
    path = tmp_path / "ch.json"
    save_channel(iid_biased(7, 0.1, 1.0), str(path))
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--code", "steane", "--p", "0.1", "--channel-file", str(path)])
    assert exc.value.code == 2


def test_eval_rejects_out_of_range_values(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--code", "steane", "--p", "1.5"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--code", "steane", "--p", "0.1", "--eta", "0"])
    assert exc.value.code == 2


# -------------------------------------------------------------------- sweep


def test_sweep_default_grid_shape(tmp_path, capsys):
    out_csv = tmp_path / "sweep.csv"
    rc, _, _ = run(capsys, "sweep", "--out", str(out_csv))
    assert rc == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "code,p,eta,logical_error_rate"
    assert len(lines) == 41
    labels = [line.split(",")[0] for line in lines[1:]]
    assert labels == sorted(labels)
    assert labels[0] == "cyclic7" and labels[-1] == "steane"


def test_sweep_is_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--p", "0.01", "--eta", "1,10", "--codes", "steane"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_sweep_rows_sorted_and_round_trip(tmp_path, capsys):
    out_csv = tmp_path / "sweep.csv"
    rc, _, _ = run(
        capsys, "sweep", "--codes", "steane,cyclic7", "--p", "0.01,0.001",
        "--eta", "10,1", "--out", str(out_csv),
    )
    assert rc == 0
    rows = [line.split(",") for line in out_csv.read_text().splitlines()[1:]]
    keys = [(r[0], float(r[1]), float(r[2])) for r in rows]
    assert keys == sorted(keys)
    code, p, eta, rate = rows[0]
    from smallqec.code import resolve_code

    expected = logical_error_rate(resolve_code(code), iid_biased(7, float(p), float(eta)))
    assert float(rate) == expected


def test_sweep_accepts_code_files(tmp_path, capsys):
    code_file = tmp_path / "mine.json"
    code_file.write_text(json.dumps(phase_flip3().to_dict()))
    out_csv = tmp_path / "sweep.csv"
    rc, _, _ = run(
        capsys, "sweep", "--codes", str(code_file), "--p", "0.1", "--eta", "1",
        "--out", str(out_csv),
    )
    assert rc == 0
    rows = out_csv.read_text().splitlines()[1:]
    assert rows[0].startswith("phase_flip3,")


def test_sweep_rejects_duplicate_labels(tmp_path, capsys):
    rc, _, err = run(
        capsys, "sweep", "--codes", "steane,steane", "--out", str(tmp_path / "x.csv")
    )
    assert rc == 3
    assert "duplicate" in err


def test_sweep_rejects_empty_grid():
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--p", "", "--out", "x.csv"])
    assert exc.value.code == 2


# ------------------------------------------------------------------- search


def test_search_writes_ranked_json(tmp_path, capsys):
    out_json = tmp_path / "result.json"
    rc, out, _ = run(
        capsys, "search", "--samples", "4", "--seed", "9", "--p", "0.01",
        "--eta", "100", "--out", str(out_json),
    )
    assert rc == 0
    assert "best rate:" in out
    assert "sampler: generator support sizes {3,4}" in out
    records = json.loads(out_json.read_text())
    assert len(records) == 4
    assert records[0]["rank"] == 1


def test_search_stdout_deterministic(capsys):
    args = ["search", "--samples", "3", "--seed", "11", "--p", "0.01", "--eta", "100"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second


def test_search_zero_samples_is_usage_error(capsys):
    rc, _, err = run(capsys, "search", "--samples", "0", "--p", "0.01")
    assert rc == 2
    assert "--samples" in err


# ------------------------------------------------------------------- ingest


def test_ingest_identity_fixture(tmp_path, capsys, fixtures_dir):
    out_csv = tmp_path / "rates.csv"
    rc, _, _ = run(
        capsys, "ingest", "--ptm", str(fixtures_dir / "ptm_identity.json"),
        "--out", str(out_csv),
    )
    assert rc == 0
    rows = [line.split(",") for line in out_csv.read_text().splitlines()]
    assert rows[0] == ["code", "tau_ms", "extrapolation", "logical_error_rate"]
    assert [r[0] for r in rows[1:]] == ["cyclic7", "steane"]
    assert all(r[3] == "0.0" for r in rows[1:])


def test_ingest_sorts_by_tau(tmp_path, capsys, fixtures_dir):
    out_csv = tmp_path / "rates.csv"
    rc, _, _ = run(
        capsys, "ingest",
        "--ptm",
        str(fixtures_dir / "ptm_dephasing_tau120.json"),
        str(fixtures_dir / "ptm_dephasing_tau010.json"),
        "--codes", "steane",
        "--out", str(out_csv),
    )
    assert rc == 0
    taus = [float(line.split(",")[1]) for line in out_csv.read_text().splitlines()[1:]]
    assert taus == [10.0, 120.0]


def test_ingest_accepts_direct_channel_files(tmp_path, capsys, fixtures_dir):
    out_csv = tmp_path / "rates.csv"
    rc, _, _ = run(
        capsys, "ingest", "--ptm", str(fixtures_dir / "channel_zz_heavy.json"),
        "--codes", "steane", "--out", str(out_csv),
    )
    assert rc == 0
    row = out_csv.read_text().splitlines()[1].split(",")
    assert row[1] == "40.0"


def test_ingest_bad_estimate_aborts(tmp_path, capsys, fixtures_dir):
    rc, _, err = run(
        capsys, "ingest", "--ptm", str(fixtures_dir / "ptm_bad_negative.json"),
        "--out", str(tmp_path / "x.csv"),
    )
    assert rc == 3
    assert "refusing to sanitize" in err


def test_ingest_skip_bad(tmp_path, capsys, fixtures_dir):
    out_csv = tmp_path / "rates.csv"
    rc, _, err = run(
        capsys, "ingest",
        "--ptm",
        str(fixtures_dir / "ptm_bad_negative.json"),
        str(fixtures_dir / "ptm_zz_heavy.json"),
        "--skip-bad", "--codes", "steane", "--out", str(out_csv),
    )
    assert rc == 0
    assert "skipping" in err
    assert len(out_csv.read_text().splitlines()) == 2


def test_ingest_all_bad_with_skip(tmp_path, capsys, fixtures_dir):
    rc, _, err = run(
        capsys, "ingest", "--ptm", str(fixtures_dir / "ptm_bad_negative.json"),
        "--skip-bad", "--out", str(tmp_path / "x.csv"),
    )
    assert rc == 3
    assert "no usable estimates" in err


def test_ingest_rejects_unknown_extrapolation():
    with pytest.raises(SystemExit) as exc:
        main(["ingest", "--ptm", "x.json", "--extrapolation", "cubic", "--out", "y.csv"])
    assert exc.value.code == 2


def test_ingest_missing_file(tmp_path, capsys):
    rc, _, err = run(
        capsys, "ingest", "--ptm", str(tmp_path / "absent.json"),
        "--out", str(tmp_path / "x.csv"),
    )
    assert rc == 3
    assert "absent.json" in err


def test_ingest_product_extrapolation_row_format(tmp_path, capsys, fixtures_dir):
    out_csv = tmp_path / "rates.csv"
    rc, _, _ = run(
        capsys, "ingest", "--ptm", str(fixtures_dir / "ptm_zz_heavy.json"),
        "--extrapolation", "product", "--codes", "steane", "--out", str(out_csv),
    )
    assert rc == 0
    row = out_csv.read_text().splitlines()[1]
    assert row.split(",")[2] == "product"


# -------------------------------------------------------------------- codes


def test_codes_show(capsys):
    rc, out, _ = run(capsys, "codes", "show", "steane")
    assert rc == 0
    assert "steane [[7,1]] distance 3" in out
    assert "XIXIXIX" in out
    assert "logical_x: XXXIIII" in out


def test_codes_show_unknown(capsys):
    rc, _, err = run(capsys, "codes", "show", "nosuch")
    assert rc == 3
    assert "nosuch" in err


# ------------------------------------------------------------------ general


def test_no_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_malformed_json_is_data_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc, _, err = run(capsys, "eval", "--code", "steane", "--channel-file", str(bad))
    assert rc == 3
    assert "JSON" in err
