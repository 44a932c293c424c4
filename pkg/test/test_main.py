import json

import pytest
from typer.testing import CliRunner

from product_structure_checker.decompositions import (
    normalise,
    partition_from_embedding,
    tree_decomposition_from_order,
)
from product_structure_checker.main import (
    EXIT_ACCEPT,
    EXIT_INPUT,
    EXIT_REJECT,
    EXIT_RESOURCE,
    app,
)
from product_structure_checker.minors import MinorModel
from product_structure_checker.products import EmbeddingWitness, path, strong_product3
from product_structure_checker.serialise import (
    graph_to_json,
    model_to_json,
    partition_to_json,
    td_to_json,
)

runner = CliRunner()

CYCLE = {
    "vertices": ["0", "1", "2", "3", "4"],
    "edges": [["0", "1"], ["1", "2"], ["2", "3"], ["3", "4"], ["0", "4"]],
}
CROSSED_K4 = {
    "graph": {
        "vertices": ["0", "1", "2", "3"],
        "edges": [["0", "1"], ["0", "2"], ["0", "3"], ["1", "2"], ["1", "3"], ["2", "3"]],
    },
    "simple": True,
    "crossings": [{"a": ["0", "2"], "b": ["1", "3"], "pos_a": 0, "pos_b": 0}],
}


@pytest.fixture
def run(tmp_path):
    """Invoke the CLI with a JSON input file and return the exit code and the JSON output."""

    def invoke(*args, document=None, options=(), positional=False):
        command = ["--log-level", "error", *options, *args, "--output", str(tmp_path / "out.json")]
        if document is not None:
            source = tmp_path / "in.json"
            source.write_text(json.dumps(document) if not isinstance(document, str) else document)
            command += [str(source)] if positional else ["--input", str(source)]
        result = runner.invoke(app, command)
        output = tmp_path / "out.json"
        return result.exit_code, json.loads(output.read_text()) if output.exists() else None

    return invoke


def test_treewidth(run):
    code, document = run("treewidth", document=CYCLE)
    assert code == EXIT_ACCEPT
    assert document["kind"] == "tree-decomposition"
    assert document["claims"][0]["measured"] == 2


def test_treewidth_over_budget(run):
    code, document = run("treewidth", document=CYCLE, options=["--treewidth-limit", "3"])
    assert code == EXIT_RESOURCE
    assert document is None


@pytest.mark.parametrize(
    "document",
    ['{"vertices": [', {"vertices": ["0"], "edges": [["0", "1"]]}, {"edges": []}],
)
def test_malformed_input(run, document):
    code, _ = run("treewidth", document=document)
    assert code == EXIT_INPUT


def test_product(run):
    path = {"vertices": ["0", "1"], "edges": [["0", "1"]]}
    code, document = run("product", document={"g": path, "h": path})
    assert code == EXIT_ACCEPT
    assert len(document["graph"]["vertices"]) == 4
    assert len(document["graph"]["edges"]) == 6


def test_gap_charging(run):
    code, document = run("gap", "--k", "1", "--exhaustive", document=CROSSED_K4)
    assert code == EXIT_ACCEPT
    assert document["kind"] == "gap-charging"
    code, document = run("gap", "--k", "0", document=CROSSED_K4)
    assert code == EXIT_REJECT
    assert document["clause"] == "infeasible"


def test_kplanar_gadget_needs_k(run):
    code, _ = run("model", "--gadget", "kplanar", document=CROSSED_K4)
    assert code == EXIT_INPUT
    code, document = run("model", "--gadget", "kplanar", "--k", "1", document=CROSSED_K4)
    assert code == EXIT_ACCEPT
    assert document["payload"]["r"] == 1


def test_verify_rejects_tampered_certificate(run):
    code, document = run("treewidth", document=CYCLE)
    assert code == EXIT_ACCEPT
    document["payload"]["td"]["bags"] = {
        node: [v for v in bag if v != "0"]
        for node, bag in document["payload"]["td"]["bags"].items()
    }
    code, verdict = run("verify", document=document, positional=True)
    assert code == EXIT_REJECT
    assert verdict["clause"] == "vertex-coverage"


def test_bounds(run):
    code, document = run("bounds", "--class", "generic", "-p", "l=1", "-p", "t=3", "-p", "r=1")
    assert code == EXIT_ACCEPT
    assert document["j_treewidth"] == 19
    assert document["partition_width"] == 3
    assert document["class"] == "generic"


@pytest.mark.parametrize("parameters", [["-p", "l"], ["-p", "l=-1"], []])
def test_bounds_with_bad_parameters(run, parameters):
    code, _ = run("bounds", "--class", "generic", *parameters)
    assert code == EXIT_INPUT


def test_lowerbound_build(run):
    code, document = run("lowerbound", "build", "--n", "2", "--k", "1")
    assert code == EXIT_ACCEPT
    assert document["kind"] == "gap-charging"
    assert document["claims"][0]["bound"] == 1
    code, verdict = run("verify", document=document, positional=True)
    assert code == EXIT_ACCEPT
    assert verdict["accepted"] is True


def test_lowerbound_build_and_check(run):
    code, document = run("lowerbound", "build", "--n", "2", "--k", "1", "--check")
    assert code == EXIT_ACCEPT
    assert document["kind"] == "hierarchy-report"
    assert document["payload"]["tw_lower"] == 5
    assert document["payload"]["radius"] <= 8


def test_lowerbound_rejects_degenerate_scale(run):
    code, _ = run("lowerbound", "build", "--n", "1", "--k", "1", "--check")
    assert code == EXIT_INPUT


def test_suite_with_report(run, tmp_path):
    report = tmp_path / "report" / "index.html"
    code, document = run(
        "suite",
        "--check",
        "bounds.KnownConstants",
        "--report",
        str(report),
        options=["--instances", "1"],
    )
    assert code == EXIT_ACCEPT
    assert document["result"] is True
    assert [section["name"] for section in document["sections"]] == ["Bound catalogue"]
    assert "PASSED" in report.read_text()
    assert json.loads(report.with_suffix(".json").read_text()) == document


def test_suite_with_invalid_filter(run):
    code, document = run("suite", "--check", "bounds.KnownConstants.extra")
    assert code == EXIT_INPUT
    assert document is None


@pytest.mark.parametrize(
    "parameters,expected",
    [
        (["--class", "fan-planar"], {"rtw": 1619, "ltw": 45}),
        (["--class", "k-planar", "-p", "k=1", "-p", "g=0"], {"rtw": 239}),
    ],
)
def test_bounds_of_beyond_planar_classes(run, parameters, expected):
    code, document = run("bounds", *parameters)
    assert code == EXIT_ACCEPT
    assert {name: document[name] for name in expected} == expected


def test_budget_bounds_exact_oracles(run):
    code, _ = run("treewidth", document=CYCLE, options=["--budget", "4"])
    assert code == EXIT_RESOURCE
    code, _ = run("qn", document=CYCLE, options=["--budget", "4"])
    assert code == EXIT_RESOURCE
    code, document = run(
        "treewidth", document=CYCLE, options=["--budget", "4", "--treewidth-limit", "5"]
    )
    assert code == EXIT_ACCEPT
    assert document["claims"][0]["measured"] == 2


def test_gap_charging_of_edgeless_drawing(run):
    drawing = {"graph": {"vertices": ["0", "1", "2"], "edges": []}, "crossings": []}
    code, document = run("gap", "--k", "1", "--exhaustive", document=drawing)
    assert code == EXIT_ACCEPT
    assert document["payload"]["charging"]["assignment"] == []


def engine_document():
    h, layers = path(3), path(2)
    host = strong_product3(h, layers, 1)
    witness = EmbeddingWitness(host=host, injection={v: v for v in host.nodes})
    model = MinorModel(
        guest=host.copy(),
        host=host,
        branch={v: frozenset({v}) for v in host.nodes},
        centre={v: v for v in host.nodes},
    )
    return {
        "g": graph_to_json(host),
        "partition": partition_to_json(partition_from_embedding(host, witness, h, layers, 1)),
        "h_td": td_to_json(normalise(tree_decomposition_from_order(h, sorted(h.nodes)), h)),
        "model": model_to_json(model),
    }


def test_engine_run_takes_depth_from_option(run):
    code, _ = run("engine", "run", document=engine_document())
    assert code == EXIT_INPUT
    code, document = run("engine", "run", "--r", "1", document=engine_document())
    assert code == EXIT_ACCEPT
    assert document["kind"] == "engine-bundle"
    assert document["payload"]["r"] == 1
    code, document = run("engine", "run", "--r", "0", document={**engine_document(), "r": 1})
    assert code == EXIT_ACCEPT
    assert document["payload"]["r"] == 0


def test_suite_lists_checks():
    result = runner.invoke(app, ["--log-level", "error", "suite", "--list"])
    assert result.exit_code == EXIT_ACCEPT
    assert "bounds.KnownConstants" in result.stdout.split()


def test_verify_needs_a_certificate_file(run, tmp_path):
    code, _ = run("verify", str(tmp_path / "missing.json"))
    assert code == EXIT_INPUT
