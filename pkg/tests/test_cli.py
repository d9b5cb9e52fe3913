import json
import math

import pytest

import cli
from analytic.find_zeros import cmd_zeros
from analytic.sweep_errors import cmd_sweep
from qubits.teleport import cmd_teleport
from shared.errors import EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION


def read_lines(path):
    return path.read_text().splitlines()


def key_values(lines):
    return dict(line.split("=", 1) for line in lines if "=" in line)


def test_sweep_header_and_first_row(tmp_path):
    out = tmp_path / "sweep.csv"
    assert cmd_sweep(0.0, 3.0, 31, 100, [100, 1000], str(out)) == EXIT_OK
    lines = read_lines(out)
    assert lines[0] == "Ntheta,eta,eps_N100,eps_N1000"
    assert lines[1] == "0,1,1,1"
    assert len(lines) == 32


def test_sweep_at_first_zero(tmp_path):
    out = tmp_path / "sweep.csv"
    assert cmd_sweep(1.196, 1.196, 1, 100, [100], str(out)) == EXIT_OK
    ntheta, eta, eps = (float(v) for v in read_lines(out)[1].split(","))
    assert ntheta == 1.196
    assert eta <= 1e-6
    assert eps == pytest.approx(math.exp(-0.0143042), rel=1e-6)


@pytest.mark.parametrize("kwargs", [
    dict(steps=0),
    dict(ntheta_min=-0.1),
    dict(ntheta_max=3.5),
    dict(ntheta_min=1.0, ntheta_max=2.0, steps=1),
    dict(coherent_n=[]),
    dict(ref_n=1),
])
def test_sweep_rejects_bad_grid(tmp_path, kwargs):
    out = tmp_path / "sweep.csv"
    assert cmd_sweep(out=str(out), **kwargs) == EXIT_VALIDATION
    assert not out.exists()


def test_teleport_is_deterministic(tmp_path):
    first, second = tmp_path / "first.jsonl", tmp_path / "second.jsonl"
    args = dict(field_kind="coherent", photons=100, theta=0.1, c0=0.6, c1=0.8, trials=20, seed=5)
    assert cmd_teleport(out=str(first), **args) == EXIT_OK
    assert cmd_teleport(out=str(second), n_procs=2, **args) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()

    records = [json.loads(line) for line in read_lines(first)]
    assert [r["trial"] for r in records] == list(range(20))
    assert all(r["seed"] == 5 for r in records)


def test_teleport_rejects_unnormalized_amplitudes(tmp_path, capsys):
    out = tmp_path / "t.jsonl"
    assert cmd_teleport(c0=1, c1=1, out=str(out)) == EXIT_VALIDATION
    assert not out.exists()
    assert capsys.readouterr().err.startswith("Error - ")


def test_teleport_truncation_is_numerical(tmp_path):
    out = tmp_path / "t.jsonl"
    assert cmd_teleport(field_kind="coherent", photons=100, theta=0.1, cutoff=50, out=str(out)) == EXIT_NUMERICAL
    assert not out.exists()


def test_teleport_zero_needs_twin_fock(tmp_path):
    assert cmd_teleport(field_kind="coherent", photons=4, theta="zero", out=str(tmp_path / "t")) == EXIT_VALIDATION


def test_teleport_summary_at_zero(tmp_path):
    summary = tmp_path / "summary.txt"
    assert cmd_teleport(photons=3, bloch=(1.1, 0.4), trials=25, seed=3, out=str(tmp_path / "t.jsonl"),
                        summary=str(summary)) == EXIT_OK
    values = key_values(read_lines(summary))
    assert values["seed"] == "3"
    assert values["trials"] == "25"
    assert float(values["mean_fidelity"]) == pytest.approx(1.0, abs=1e-9)
    assert float(values["null_fraction"]) == pytest.approx(0.0, abs=1e-12)


def test_cli_zeros_with_config(tmp_path):
    config = tmp_path / "zeros.cfg"
    config.write_text("photons = 100\ncount = 3\n")
    out = tmp_path / "zeros.csv"
    assert cli.main(["zeros", "--config", str(config), "--out", str(out)]) == EXIT_OK
    lines = read_lines(out)
    assert lines[0] == "index,theta,Ntheta"
    ntheta = [float(line.split(",")[2]) for line in lines[1:]]
    assert len(ntheta) == 3
    assert ntheta == sorted(ntheta)
    assert ntheta[0] == pytest.approx(1.196, abs=2e-3)

    assert cli.main(["zeros", "--config", str(config), "--count", "1", "--out", str(out)]) == EXIT_OK
    assert len(read_lines(out)) == 2


def test_cli_zeros_needs_photons(tmp_path):
    assert cli.main(["zeros", "--out", str(tmp_path / "z.csv")]) == EXIT_VALIDATION


def test_cli_budget_twinfock(tmp_path):
    out = tmp_path / "budget.txt"
    assert cli.main(["budget", "--mode", "twinfock", "--fidelity", "0.99", "--passes", "10000",
                     "--out", str(out)]) == EXIT_OK
    values = key_values(read_lines(out))
    assert values["mode"] == "twinfock"
    assert float(values["n_leading_digit"]) == 2
    assert int(values["n_required"]) == 3


def test_cli_budget_coherent(tmp_path):
    out = tmp_path / "budget.txt"
    assert cli.main(["budget", "--mode", "coherent", "--epsilon", "0.01", "--out", str(out)]) == EXIT_OK
    values = key_values(read_lines(out))
    assert float(values["m_required"]) == pytest.approx(6.94e4, rel=5e-3)


def test_cli_ghz_and_swap(tmp_path):
    ghz_out, swap_out = tmp_path / "ghz.jsonl", tmp_path / "swap.jsonl"
    assert cli.main(["ghz", "--photons", "2", "--trials", "3", "--out", str(ghz_out)]) == EXIT_OK
    assert cli.main(["swap", "--photons", "2", "--c0", "0.6", "--c1", "0.8", "--trials", "3",
                     "--out", str(swap_out)]) == EXIT_OK
    for path in (ghz_out, swap_out):
        records = [json.loads(line) for line in read_lines(path)]
        assert len(records) == 3
        assert all(r["fidelity"] == pytest.approx(1.0, abs=1e-9) for r in records)


def test_cli_unknown_command(capsys):
    assert cli.main(["entangle"]) == EXIT_VALIDATION
    assert cli.main([]) == EXIT_VALIDATION


def test_cli_bad_flag_value():
    assert cli.main(["teleport", "--trials", "many"]) == EXIT_VALIDATION
