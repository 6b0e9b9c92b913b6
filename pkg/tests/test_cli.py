"""CLI subcommands, outputs, and exit codes."""

import json

import pytest

from combatnet.cli import main
from combatnet.network import load_network

TINY_NET = [
    "--family", "ER", "--sizes", "8,6,5,5", "--er-probs", "0.3,0.3,0.3,0.3",
    "--inter-prob", "0.3",
]


def _generate(tmp_path, seed="3"):
    out = tmp_path / "gen"
    code = main(["generate", *TINY_NET, "--seed", seed, "--out", str(out)])
    assert code == 0
    return out / "networks" / "net_000.txt"


def test_generate_writes_loadable_network(tmp_path, capsys):
    path = _generate(tmp_path)
    assert path.exists()
    net = load_network(path)
    assert net.n == 24
    assert "n=24" in capsys.readouterr().out


def test_generate_replicates(tmp_path):
    out = tmp_path / "gen"
    code = main(["generate", *TINY_NET, "--seed", "1", "--replicates", "3",
                 "--out", str(out)])
    assert code == 0
    assert len(list((out / "networks").glob("net_*.txt"))) == 3


def test_generate_invalid_probability_exit_2(tmp_path):
    code = main(["generate", "--family", "ER", "--inter-prob", "1.5",
                 "--out", str(tmp_path)])
    assert code == 2


def test_evaluate_prints_report(tmp_path, capsys):
    path = _generate(tmp_path)
    capsys.readouterr()  # drop generate output
    code = main(["evaluate", "--network", str(path), "--attack", "0,1,2",
                 "--out", str(tmp_path / "eval")])
    assert code == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "s_huge,s_links,r,total_cost,feasible"
    assert (tmp_path / "eval" / "report.csv").exists()
    costs_csv = (tmp_path / "eval" / "costs.csv").read_text().splitlines()
    assert costs_csv[0] == "node_index,kind,degree,cost"


def test_evaluate_bad_index_exit_2(tmp_path):
    path = _generate(tmp_path)
    assert main(["evaluate", "--network", str(path), "--attack", "999"]) == 2


def test_optimize_writes_record_and_history(tmp_path, capsys):
    path = _generate(tmp_path, seed="5")
    out = tmp_path / "opt"
    code = main([
        "optimize", "--network", str(path), "--l", "3", "--rho", "0.6",
        "--n-pop", "10", "--gen", "6", "--n-seeded", "2", "--seed", "1",
        "--out", str(out),
    ])
    assert code == 0
    record = capsys.readouterr().out
    for key in ("attacked:", "l: 3", "c_max:", "r:", "generations: 6",
                "wall_time_s:"):
        assert key in record
    history = (out / "history.csv").read_text().splitlines()
    assert history[0] == "generation,best_fitness"
    assert len(history) == 7
    assert (out / "result.txt").exists()


def test_optimize_budget_mode(tmp_path, capsys):
    path = _generate(tmp_path, seed="6")
    code = main([
        "optimize", "--network", str(path), "--mode", "budget-only",
        "--rho", "0.4", "--n-pop", "10", "--gen", "5", "--n-seeded", "2",
        "--seed", "2",
    ])
    assert code == 0
    assert "attacked:" in capsys.readouterr().out


def test_baseline_selects_and_reports(tmp_path, capsys):
    path = _generate(tmp_path, seed="7")
    capsys.readouterr()  # drop generate output
    out = tmp_path / "base"
    code = main([
        "baseline", "--network", str(path), "--indicator", "degree",
        "--l", "3", "--rho", "0.8", "--out", str(out),
    ])
    assert code == 0
    printed = capsys.readouterr().out
    assert printed.startswith("attacked: ")
    assert (out / "centrality.csv").read_text().splitlines()[0] == "node_index,kind,value"
    assert (out / "report.csv").exists()


def test_baseline_infeasible_exit_3(tmp_path):
    # rho=0 with a BA network (every cost positive): no 1-set fits the budget
    out = tmp_path / "gen"
    main(["generate", "--family", "BA", "--sizes", "8,6,5,5", "--ba-params",
          "3,2", "--inter-prob", "0.3", "--seed", "4", "--out", str(out)])
    path = out / "networks" / "net_000.txt"
    code = main(["baseline", "--network", str(path), "--indicator", "degree",
                 "--l", "1", "--rho", "0.0"])
    assert code == 3


def test_experiment_compare_and_rerun_identical(tmp_path):
    args = [
        "experiment", "compare-algorithms", "--net-family", "ER",
        "--sizes", "8,6,5,5", "--er-probs", "0.3,0.3,0.3,0.3",
        "--inter-prob", "0.3",
        "--l-range", "2,3", "--replicates", "2", "--seed", "11",
        "--n-pop", "10", "--gen", "5", "--n-seeded", "2",
    ]
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    assert main(args + ["--out", str(out_a)]) == 0
    assert main(args + ["--out", str(out_b)]) == 0
    for name in ("results.csv", "aggregate.csv"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()
    assert (out_a / "networks" / "rep000.txt").exists()


def test_experiment_config_file_with_flag_override(tmp_path):
    cfg = {
        "network": {"family": "GOH", "sizes": [8, 6, 5, 5],
                    "goh_params": [2.5, 2.0], "inter_prob": 0.25},
        "ga": {"n_pop": 10, "gen": 4, "n_seeded": 2},
        "l_range": [2],
        "replicates": 1,
        "seed": 13,
    }
    cfg_path = tmp_path / "spec.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "exp"
    code = main(["experiment", "convergence", "--config", str(cfg_path),
                 "--l-range", "3", "--out", str(out)])
    assert code == 0
    hist = (out / "history.csv").read_text()
    assert "generation" in hist.splitlines()[0]


def test_experiment_degenerate_exit_4(tmp_path):
    code = main([
        "experiment", "compare-algorithms", "--net-family", "ER",
        "--sizes", "3,3,3,3", "--inter-prob", "0.0", "--l-range", "1",
        "--replicates", "1", "--n-pop", "10", "--gen", "3", "--n-seeded", "2",
        "--max-regen", "2", "--out", str(tmp_path / "x"),
    ])
    assert code == 4


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
