import json
import os
from pathlib import Path

import pytest

from eop_report.app.data.csv_files import parse_curve, parse_runs
from eop_report.app.main import main


def test_spearman_prints_two_decimals(rankings_dir, capsys):
    code = main([
        "spearman",
        str(rankings_dir / "true.csv"),
        str(rankings_dir / "ranking1.csv"),
        str(rankings_dir / "ranking2.csv"),
    ])
    assert code == 0
    assert capsys.readouterr().out == "0.76\n-0.02\n"


def test_table_reproduces_expected_best_returns(hopper_runs, capsys):
    assert main(["table", str(hopper_runs)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "# Hopper-v3-medium-1000"
    assert out[1] == "Algorithm 1 2 3 4 8 15 30 | Final N"
    assert out[2] == "BC 1794 2057 2179 - - - - | 2343 3"
    assert out[3] == "CQL 2000 2250 - - - - - | 2500 2"


def test_table_custom_budgets_and_metric(hopper_runs, capsys):
    assert main(["table", str(hopper_runs), "--budgets", "1,2", "--metric", "min-max"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[1] == "Algorithm 1 2 | Final N"
    assert out[3] == "CQL 1 1 | 1 2"


def test_curve_then_plot(hopper_runs, tmp_path):
    assert main(["curve", str(hopper_runs), "--out-dir", str(tmp_path)]) == 0
    bc = tmp_path / "curve-Hopper-v3-medium-1000-BC.csv"
    cql = tmp_path / "curve-Hopper-v3-medium-1000-CQL.csv"
    assert [round(m) for m in parse_curve(bc).means] == [1794, 2057, 2179]
    assert parse_curve(cql).budgets == [1, 2]

    figure = tmp_path / "eop.svg"
    assert main(["plot", str(bc), str(cql), "--labels", "BC,CQL", "-o", str(figure)]) == 0
    text = figure.read_text(encoding="utf-8")
    assert text.count("<polyline") == 2
    assert ">CQL<" in text


def test_curve_budget_and_without_replacement(hopper_runs, tmp_path):
    args = ["curve", str(hopper_runs), "--out-dir", str(tmp_path), "--budget-max", "5"]
    assert main(args + ["--figure", str(tmp_path / "c.svg")]) == 0
    assert parse_curve(tmp_path / "curve-Hopper-v3-medium-1000-BC.csv").budgets == [1, 2, 3, 4, 5]
    assert (tmp_path / "c.svg").is_file()

    assert main(args + ["--without-replacement"]) == 0
    curve = parse_curve(tmp_path / "curve-Hopper-v3-medium-1000-BC.csv")
    assert curve.budgets == [1, 2, 3]
    assert curve.at(3).mean == 2343.0


def test_curve_from_config_file(hopper_runs, tmp_path):
    config = tmp_path / "report.cfg"
    config.write_text(f"runs = {hopper_runs}\nbudget_max = 2\noutput_dir = {tmp_path / 'out'}\n", encoding="utf-8")
    assert main(["curve", "--config", str(config)]) == 0
    assert parse_curve(tmp_path / "out" / "curve-Hopper-v3-medium-1000-CQL.csv").budgets == [1, 2]


@pytest.fixture
def simulated(tmp_path):
    config = tmp_path / "pipeline.cfg"
    config.write_text("n_assignments = 5\nseeds = 2\nfqe_iterations = 50\n", encoding="utf-8")
    out = tmp_path / "sim"
    assert main(["-q", "simulate", "--config", str(config), "--out-dir", str(out)]) == 0
    return config, out


def test_simulate_writes_runs_and_scores(simulated):
    _, out = simulated
    records = parse_runs(out / "runs.csv")
    assert len(records) == 2 * 5 * 2
    assert sorted(p.name for p in out.iterdir()) == [
        "runs.csv",
        "scores-gridworld-windy-medium-99-bc.csv",
        "scores-gridworld-windy-medium-99-cq.csv",
    ]


def test_simulate_is_byte_reproducible(simulated, tmp_path):
    config, out = simulated
    again = tmp_path / "again"
    assert main(["-q", "simulate", "--config", str(config), "--out-dir", str(again)]) == 0
    for directory in (out, again):
        runs = str(directory / "runs.csv")
        assert main(["-q", "curve", runs, "--out-dir", str(directory), "--figure", str(directory / "eop.svg")]) == 0
    for path in out.iterdir():
        assert (again / path.name).read_bytes() == path.read_bytes()
    assert (out / "eop.svg").read_text(encoding="utf-8").count("<polyline") == 2


def test_regret_on_simulated_data(simulated, tmp_path):
    _, out = simulated
    regret_dir = tmp_path / "regret"
    code = main([
        "regret",
        str(out / "runs.csv"),
        "--scores", str(out / "scores-gridworld-windy-medium-99-cq.csv"),
        "--out-dir", str(regret_dir),
    ])
    assert code == 0
    names = sorted(p.name for p in regret_dir.iterdir())
    assert names == [
        "regret-action_diff.csv",
        "regret-critic.csv",
        "regret-fqe.csv",
        "regret-td_error.csv",
        "regret-uniform.csv",
    ]
    for name in names:
        curve = parse_curve(regret_dir / name)
        assert curve.budgets == [1, 2, 3, 4, 5]
        assert all(0.0 <= m <= 1.0 for m in curve.means)
    assert parse_curve(regret_dir / "regret-fqe.csv").at(5).mean == 1.0


def test_regret_strategy_subset(simulated, tmp_path):
    _, out = simulated
    code = main([
        "regret",
        str(out / "runs.csv"),
        "--scores", str(out / "scores-gridworld-windy-medium-99-cq.csv"),
        "--strategies", "uniform,fqe",
        "--without-replacement",
        "--out-dir", str(tmp_path / "r"),
    ])
    assert code == 0
    assert sorted(p.name for p in (tmp_path / "r").iterdir()) == ["regret-fqe.csv", "regret-uniform.csv"]
    assert parse_curve(tmp_path / "r" / "regret-uniform.csv").at(5).mean == 1.0


def test_regret_needs_matching_runs(hopper_runs, simulated, capsys):
    _, out = simulated
    code = main(["regret", str(hopper_runs), "--scores", str(out / "scores-gridworld-windy-medium-99-bc.csv")])
    assert code == 1
    assert "no runs match the scored policies" in capsys.readouterr().err


def test_import_neorl_local_file(tmp_path, capsys):
    source = tmp_path / "neorl.json"
    source.write_text(json.dumps([
        {"algo": "BC", "task": "Hopper-v3-medium-1000", "params": "a", "reward": 1159.5},
        {"algo": "BC", "task": "Hopper-v3-medium-1000", "params": "b", "reward": 1879.5},
        {"algo": "BC", "task": "Hopper-v3-medium-1000", "params": "c", "reward": 2343.0},
        {"algo": "CQL", "task": "Hopper-v3-medium-1000", "params": "a", "reward": 10.0},
    ]), encoding="utf-8")
    runs = tmp_path / "runs.csv"
    assert main(["import-neorl", str(source), "--algorithms", "BC", "-o", str(runs)]) == 0
    assert main(["table", str(runs), "--budgets", "1,2,3"]) == 0
    assert "BC 1794 2057 2179 | 2343 3" in capsys.readouterr().out


HOPPER_MEDIUM_ROWS = {
    "BC": ((1794, 2057, 2179, None, None, None, None), 3),
    "CQL": ((1773, 1954, 2072, 2161, 2391, 2603, 2832), 30),
    "PLAS": ((1475, 1833, 1996, 2096, 2316, 2507, None), 15),
}


@pytest.mark.slow
def test_neorl_hopper_rows(tmp_path, capsys):
    source = os.environ.get("NEORL_RESULTS")
    if not source or not (source.startswith("http") or Path(source).is_file()):
        pytest.skip("NEORL_RESULTS does not point at NeoRL benchmark results")
    runs = tmp_path / "neorl-runs.csv"
    assert main(["-q", "import-neorl", source, "--environment", "Hopper-v3-medium-1000", "-o", str(runs)]) == 0
    capsys.readouterr()

    assert main(["table", str(runs), "--budgets", "1,2,3,4,8,15,30"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "# Hopper-v3-medium-1000"
    rows = {}
    for line in lines[2:]:
        cells, _, tail = line.partition(" | ")
        name, *values = cells.split()
        rows[name.upper()] = ([None if v == "-" else int(v) for v in values], tail)

    for algorithm, (expected, n) in HOPPER_MEDIUM_ROWS.items():
        assert algorithm in rows, f"no {algorithm} row in the table"
        got, tail = rows[algorithm]
        assert [v is None for v in got] == [v is None for v in expected], algorithm
        for have, want in zip(got, expected):
            if want is not None:
                assert abs(have - want) <= 1, (algorithm, got)
        assert int(tail.split()[1]) == n, algorithm


# --- errors and logging ---

def test_missing_input_exits_with_one_line(tmp_path, capsys):
    assert main(["curve", str(tmp_path / "missing.csv")]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error: input file not found")
    assert err.count("\n") == 1


def test_malformed_runs_file_names_the_line(tmp_path, capsys):
    runs = tmp_path / "runs.csv"
    runs.write_text("algorithm,environment,hyperparam_id,seed,value\nbc,e,h,0,nan\n", encoding="utf-8")
    assert main(["table", str(runs)]) == 1
    assert f"{runs}:2: non-finite value at line 2" in capsys.readouterr().err


def test_best_behavioral_needs_reference_value(hopper_runs, capsys):
    assert main(["table", str(hopper_runs), "--metric", "best-behavioral"]) == 1
    assert "needs v_best" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv, message",
    [
        (["curve", "--bogus"], "unrecognized arguments: --bogus"),
        ([], "required: command"),
        (["table", "--budgets", "1,x"], "expected comma-separated integers"),
        (["curve", "--metric", "zscore"], "invalid choice"),
        (["frobnicate"], "invalid choice"),
    ],
)
def test_bad_flags_exit_with_one_error_line(argv, message, capsys):
    assert main(argv) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("error: ")
    assert captured.err.count("\n") == 1
    assert message in captured.err


def test_info_logging_goes_to_stderr(hopper_runs, tmp_path, capsys):
    assert main(["curve", str(hopper_runs), "--out-dir", str(tmp_path)]) == 0
    err = capsys.readouterr().err
    assert " INFO wrote " in err
    assert "\x1b[" not in err

    assert main(["-q", "curve", str(hopper_runs), "--out-dir", str(tmp_path)]) == 0
    assert capsys.readouterr().err == ""
