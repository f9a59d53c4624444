import json

import pytest

from increcolor import (GraphFamily, ParameterError, generate,
                        is_traversal_order, parse_edge_list, parse_order)
from increcolor.cli import (EXIT_INVALID, EXIT_OK, EXIT_TIMEOUT, main,
                            parse_family_spec)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_family_spec():
    assert parse_family_spec("path:n=16") == GraphFamily.path(16)
    assert parse_family_spec("depth_k_star:n=13,k=3") == GraphFamily.depth_k_star(13, 3)
    assert parse_family_spec("complete_bipartite:n1=3,n2=5") == GraphFamily.complete_bipartite(3, 5)
    with pytest.raises(ParameterError):
        parse_family_spec("path")
    with pytest.raises(ParameterError):
        parse_family_spec("path:n")
    with pytest.raises(ParameterError):
        parse_family_spec("path:n=two")
    with pytest.raises(ParameterError):
        parse_family_spec("blob:n=3")


def test_generate_command(capsys, tmp_path):
    code, out, err = run_cli(capsys, "generate", "--family", "toroid:side=4", "--metrics")
    assert code == EXIT_OK
    g = parse_edge_list(out)
    assert g.n == 16 and g.m == 32
    metrics = json.loads(err)
    assert metrics["bipartite"] is True
    assert metrics["diameter"] == 4
    assert metrics["longest_path"] == 15
    target = tmp_path / "graph.txt"
    code, out, _ = run_cli(capsys, "generate", "--family", "path:n=6", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert parse_edge_list(target.read_text()).m == 5


def test_order_command(capsys):
    code, out, _ = run_cli(capsys, "order", "--family", "hypercube:dim=3",
                           "--kind", "bfs", "--seed", "5", "--start", "0")
    assert code == EXIT_OK
    order = parse_order(out)
    g = generate(GraphFamily.hypercube(3))
    assert is_traversal_order(g, order)
    assert order.kind.value == "bfs"
    assert order.seed == 5 and order.start_vertex == 0
    again_code, again_out, _ = run_cli(capsys, "order", "--family", "hypercube:dim=3",
                                       "--kind", "bfs", "--seed", "5", "--start", "0")
    assert again_out == out


def test_run_command_success(capsys):
    code, out, _ = run_cli(capsys, "run", "--family", "path:n=24",
                           "--order-kind", "generic", "--order-seed", "3",
                           "--algorithm", "tailored_rls", "--seed", "17")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["n"] == 24 and doc["m"] == 23
    assert doc["final_proper"] is True
    assert doc["timeouts"] == 0
    assert doc["seed"] == 17
    assert len(doc["per_insertion"]) == 23
    assert doc["total_evaluations"] >= doc["m"]


def test_run_command_reports_timeout(capsys):
    code, out, _ = run_cli(capsys, "run", "--family", "worst_case_tree:n=13",
                           "--order-kind", "worst_case",
                           "--algorithm", "tailored_rls", "--seed", "2",
                           "--budget", "2000")
    assert code == EXIT_TIMEOUT
    doc = json.loads(out)
    assert doc["timeouts"] >= 1
    assert doc["final_proper"] is False


def test_run_command_engine_choice(capsys):
    code, out, _ = run_cli(capsys, "run", "--family", "star:n=9",
                           "--order-seed", "1", "--seed", "4",
                           "--engine", "reference")
    assert code == EXIT_OK
    assert json.loads(out)["engine"] == "reference"


def test_sweep_command(capsys, tmp_path):
    config = {
        "name": "cli-sweep",
        "families": [{"kind": "path", "n": 8}, {"kind": "path", "n": 12}],
        "order_kind": "generic",
        "algorithm": "tailored_rls",
        "lam": 1,
        "order_start": None,
        "depth_greedy": False,
        "repetitions": 5,
        "master_seed": 2,
        "budget": 10**9,
        "continue_on_timeout": False,
        "engine": "fast",
        "out_csv": None,
        "out_json": None,
    }
    cfg_path = tmp_path / "sweep.json"
    cfg_path.write_text(json.dumps(config))
    code, out, _ = run_cli(capsys, "sweep", "--config", str(cfg_path))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "family,n,m,order,algorithm,lambda,seed,evaluations,generations,timeouts"
    assert len(lines) == 1 + 2 * 5

    prefix = tmp_path / "result"
    code, out, _ = run_cli(capsys, "sweep", "--config", str(cfg_path),
                           "--out", str(prefix), "--reps", "3")
    assert code == EXIT_OK
    assert out.startswith("wrote ")
    csv_text = (tmp_path / "result.csv").read_text()
    assert len(csv_text.splitlines()) == 1 + 2 * 3
    summary = json.loads((tmp_path / "result.json").read_text())
    assert summary["config"]["repetitions"] == 3
    assert len(summary["summaries"]) == 2
    assert all(s["timeout_fraction"] == 0.0 for s in summary["summaries"])


def test_sweep_command_master_seed_override(capsys, tmp_path):
    config = {
        "name": "s", "families": [{"kind": "path", "n": 8}],
        "order_kind": "generic", "algorithm": "generic_rls",
        "repetitions": 4, "master_seed": 2,
    }
    cfg_path = tmp_path / "s.json"
    cfg_path.write_text(json.dumps(config))
    _, base, _ = run_cli(capsys, "sweep", "--config", str(cfg_path))
    _, same, _ = run_cli(capsys, "sweep", "--config", str(cfg_path), "--seed", "2")
    _, moved, _ = run_cli(capsys, "sweep", "--config", str(cfg_path), "--seed", "3")
    assert base == same
    assert moved != base


def test_walk_command_exact_only(capsys):
    code, out, _ = run_cli(capsys, "walk", "--k", "2")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert set(doc) == {"exact"}
    exact = doc["exact"]
    assert exact["one_sided_closed_form"] == 2.0
    assert exact["one_sided_exact_bounce"] == pytest.approx(2.0)
    assert exact["one_sided_exact_push"] == pytest.approx(3.0)
    assert exact["two_sided_closed_form"] == 1.0


def test_walk_command_accepts_fractional_p(capsys):
    code, out, _ = run_cli(capsys, "walk", "--k", "4", "--x0", "1", "--p", "1/2")
    assert code == EXIT_OK
    exact = json.loads(out)["exact"]
    assert exact["one_sided_closed_form"] == pytest.approx(12.0)
    assert exact["one_sided_exact_push"] == pytest.approx(14.0)
    assert exact["two_sided_closed_form"] == pytest.approx(6.0)


def test_walk_command_simulation_and_tail(capsys):
    code, out, _ = run_cli(capsys, "walk", "--k", "8", "--eta", "2",
                           "--samples", "4000", "--tail-r", "2", "--seed", "9")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert set(doc) == {"exact", "simulated", "tail_check"}
    assert doc["simulated"]["samples"] == 4000
    assert doc["simulated"]["mean"] < 2 * 8 - 2  # min of two walks beats one
    assert doc["tail_check"]["threshold"] == 2 * 2 * 64
    assert doc["tail_check"]["passed"] is True


def test_fit_command(capsys, tmp_path):
    rows = ["family,n,m,order,algorithm,lambda,seed,evaluations,generations,timeouts"]
    for n in (16, 32, 64):
        for seed in range(3):
            rows.append(f"path,{n},{n-1},generic,generic_rls,1,{seed},{n**3},{n**3},0")
        rows.append(f"star,{n},{n-1},generic,generic_rls,1,9,{n},{n},0")
    csv_path = tmp_path / "rows.csv"
    csv_path.write_text("\n".join(rows) + "\n")
    code, out, _ = run_cli(capsys, "fit", "--csv", str(csv_path), "--family", "path")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["points"] == 3
    assert doc["slope"] == pytest.approx(3.0, abs=1e-9)
    code, out, _ = run_cli(capsys, "fit", "--csv", str(csv_path), "--family", "star")
    assert json.loads(out)["slope"] == pytest.approx(1.0, abs=1e-9)


def test_invalid_inputs_exit_2(capsys, tmp_path):
    code, _, err = run_cli(capsys, "generate", "--family", "path:n=0")
    assert code == EXIT_INVALID and err.startswith("error:")
    code, _, err = run_cli(capsys, "run", "--family", "path:n=4",
                           "--order-kind", "worst_case")
    assert code == EXIT_INVALID
    code, _, err = run_cli(capsys, "sweep", "--config", str(tmp_path / "missing.json"))
    assert code == EXIT_INVALID
    bad = tmp_path / "bad.json"
    bad.write_text("{\"name\": \"x\"}")
    code, _, err = run_cli(capsys, "sweep", "--config", str(bad))
    assert code == EXIT_INVALID and "missing required field" in err
    code, _, err = run_cli(capsys, "walk", "--k", "0")
    assert code == EXIT_INVALID
