import csv
import io
import json

import pytest

from kratzer2d.cli import CONFIG_ENV, main, read_config_file, resolve_config


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO("\n".join(l for l in text.splitlines() if not l.startswith("#")))))


def test_spectrum_table(capsys):
    code, out, _ = run(capsys, "spectrum", "--potential", "kratzer", "--D0", "1", "--r0", "1",
                       "--n-max", "2", "--m-max", "2")
    assert code == 0
    table = rows(out)
    assert len(table) == 15
    assert float(table[0]["energy"]) == pytest.approx(-0.545820, abs=5e-7)
    assert (table[0]["n"], table[0]["m"]) == ("0", "0")


def test_spectrum_coulomb_classes(capsys):
    _, out, _ = run(capsys, "spectrum", "--potential", "mod2", "--g", "0", "--q", "1",
                    "--n-max", "2", "--m-max", "2")
    sizes = {}
    for row in rows(out):
        sizes[int(row["degeneracy_class"])] = int(row["degeneracy"])
    assert [sizes[i] for i in range(3)] == [1, 3, 5]


def test_json_matches_csv(capsys):
    args = ["spectrum", "--potential", "mod1", "--n-max", "3", "--m-max", "1"]
    _, text_csv, _ = run(capsys, *args)
    _, text_json, _ = run(capsys, *args, "--format", "json")
    doc = json.loads(text_json)
    assert doc["potential"]["kind"] == "mod1"
    table = rows(text_csv)
    assert len(doc["levels"]) == len(table)
    for a, b in zip(doc["levels"], table):
        assert a["energy"] == float(b["energy"])
        assert (a["n"], a["m"]) == (int(b["n"]), int(b["m"]))


@pytest.mark.parametrize("command", ["spectrum", "wavefunction", "density", "oracle"])
def test_deterministic(capsys, command):
    args = [command, "--nr", "50", "--nphi", "4", "--n-max", "1"]
    first = run(capsys, *args)[1]
    assert first and run(capsys, *args)[1] == first
    first = run(capsys, *args, "--format", "json")[1]
    assert run(capsys, *args, "--format", "json")[1] == first


def test_wavefunction_column(capsys):
    _, out, _ = run(capsys, "wavefunction", "--n", "3", "--m", "1", "--nr", "4000")
    assert "# energy = " in out
    phi = [float(r["phi"]) for r in rows(out)][1:]
    changes = sum((a < 0) != (b < 0) for a, b in zip(phi, phi[1:]) if a != 0 and b != 0)
    assert changes == 3


def test_density_m_flip(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["density", "--m", "2", "--nr", "30", "--nphi", "6", "--out", str(a)]) == 0
    assert main(["density", "--m", "-2", "--nr", "30", "--nphi", "6", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_density_defaults_to_fig1_state(capsys):
    _, out, _ = run(capsys, "density", "--format", "json", "--nr", "10", "--nphi", "2")
    meta = json.loads(out)["meta"]
    assert (meta["n"], meta["m"]) == (3, 1)


def test_oracle_command(capsys):
    _, out, _ = run(capsys, "oracle", "--potential", "mod1", "--n-max", "0")
    assert float(rows(out)[0]["extrapolated"]) == pytest.approx(0.45418, rel=1e-3)


def test_config_precedence(tmp_path, monkeypatch):
    env_file = tmp_path / "env.cfg"
    env_file.write_text("n_max = 5\nm-max = 4  # comment\nD0 = 3\n")
    flag_file = tmp_path / "flag.cfg"
    flag_file.write_text("n_max = 1\n")
    cfg = resolve_config("verify", {})
    assert (cfg.n_max, cfg.m_max, cfg.d0) == (3, 3, 1.0)
    monkeypatch.setenv(CONFIG_ENV, str(env_file))
    cfg = resolve_config("verify", {})
    assert (cfg.n_max, cfg.m_max, cfg.d0) == (5, 4, 3.0)
    cfg = resolve_config("verify", {"m_max": 2}, str(flag_file))
    assert (cfg.n_max, cfg.m_max, cfg.d0) == (1, 2, 1.0)


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    with pytest.raises(ValueError):
        read_config_file(str(bad))
    assert run(capsys, "spectrum", "--config", str(bad))[0] == 2
    assert run(capsys, "spectrum", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_invalid_parameters_exit_2(capsys):
    code, _, err = run(capsys, "spectrum", "--D0", "-1")
    assert code == 2 and "no bound states" in err
    assert run(capsys, "density", "--r-max", "-3")[0] == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert out.strip().endswith("12/12 checks passed")


def test_verify_negative_control(capsys):
    code, out, _ = run(capsys, "verify", "--perturb-energy", "0.01", "--format", "json")
    doc = json.loads(out)
    assert code == 1 and not doc["passed"]
    failed = [c["name"] for c in doc["checks"] if not c["passed"]]
    assert failed == ["ode_residual"]


def test_verify_mod1_reports_sign(capsys):
    code, out, _ = run(capsys, "verify", "--potential", "mod1", "--n-max", "1", "--m-max", "1")
    assert code == 0
    assert "oracle sides with +D0" in out
