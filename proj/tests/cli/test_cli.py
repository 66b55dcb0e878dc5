"""End-to-end tests of the probust command line."""

import json
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest
from referencing import Registry, Resource

BIN = os.environ.get("PROBUST_BIN", "build/tools/probust")
SCHEMAS = Path(os.environ.get("PROBUST_SCHEMAS", Path(__file__).resolve().parents[2] / "schemas"))


def run(*args, env=None):
    full_env = {k: v for k, v in os.environ.items() if k != "PROBUST_SEED"}
    full_env.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=full_env, timeout=300)


def registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        contents = json.loads(path.read_text())
        resources.append((path.name, Resource.from_contents(contents)))
    return Registry().with_resources(resources)


def validate(instance, schema_name):
    schema = json.loads((SCHEMAS / schema_name).read_text())
    jsonschema.Draft202012Validator(schema, registry=registry()).validate(instance)


def json_lines(text):
    return [json.loads(line) for line in text.splitlines()]


def test_schemas_are_valid():
    for path in SCHEMAS.glob("*.schema.json"):
        jsonschema.Draft202012Validator.check_schema(json.loads(path.read_text()))


@pytest.mark.parametrize(
    "args, code",
    [
        (["generate", "--model", "er", "--n", "3", "--p", "1.5"], 2),
        (["generate", "--model", "nosuch", "--n", "3"], 2),
        (["generate", "--n", "4", "--bogus"], 2),
        ([], 2),
        (["couple", "--model", "adjcount", "--n", "4", "--base", "0.4", "--seed", "1"], 3),
        (["couple", "--model", "adjcount-cond", "--n", "5", "--seed", "1"], 2),
        (["exact", "--model", "adjcount", "--n", "6", "--check", "coupling"], 4),
        (["exact", "--model", "er", "--n", "8", "--p", "0.5", "--check", "joint"], 4),
        (["exact", "--model", "adjcount-cond", "--n", "4", "--check", "floor"], 5),
        (["verify", "--model", "adjcount", "--n", "6", "--property", "exactly-3-edges", "--seed", "1"], 6),
        (["verify", "--model", "adjcount", "--n", "6", "--property", "clique<=3", "--seed", "1"], 6),
        (["verify", "--model", "adjcount", "--n", "6", "--property", "clique>=x", "--seed", "1"], 2),
        (["verify", "--model", "adjcount", "--n", "6", "--property", "connected", "--base", "0.5", "--seed", "1"], 3),
        (["report", "--formula", "nosuch", "--n", "10", "--seed", "1"], 2),
        (["report", "--preset", "nosuch", "--n", "10", "--seed", "1"], 2),
        (["--help"], 0),
    ],
)
def test_exit_codes(args, code):
    assert run(*args).returncode == code


def test_generate_records_and_determinism():
    args = ["generate", "--model", "adjcount", "--n", "6", "--samples", "50", "--seed", "11"]
    a, b = run(*args), run(*args, "--threads", "3")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    records = json_lines(a.stdout)
    assert [r["index"] for r in records] == list(range(50))
    for r in records:
        validate(r, "realization_record.schema.json")
        assert r["n"] == 6 and r["seed"] == 11
        assert int(r["g"], 16) < 1 << 15
    assert run(*args[:-1], "12").stdout != a.stdout


def test_seed_from_environment_and_printed_when_random():
    args = ["generate", "--model", "global", "--n", "5", "--samples", "5"]
    env_run = run(*args, env={"PROBUST_SEED": "99"})
    assert env_run.returncode == 0
    assert env_run.stdout == run(*args, "--seed", "99").stdout
    random_run = run(*args)
    printed = [line for line in random_run.stderr.splitlines() if line.startswith("seed: ")]
    assert len(printed) == 1
    seed = printed[0].split()[1]
    assert run(*args, "--seed", seed).stdout == random_run.stdout
    assert run(*args, env={"PROBUST_SEED": "abc"}).returncode == 2


def test_generate_formats_agree():
    base = ["generate", "--model", "er", "--n", "5", "--p", "0.3", "--samples", "20", "--seed", "5"]
    records = json_lines(run(*base).stdout)
    csv_lines = run(*base, "--format", "csv").stdout.splitlines()
    assert csv_lines[0] == "index,g"
    assert [line.split(",")[1] for line in csv_lines[1:]] == [r["g"] for r in records]
    text_lines = run(*base, "--format", "text").stdout.splitlines()
    for line, record in zip(text_lines, records):
        bits = line.split()[1]
        assert len(bits) == 10
        assert sum(int(b) << i for i, b in enumerate(bits)) == int(record["g"], 16)


def test_conditioned_samples_satisfy_the_condition():
    out = run("generate", "--model", "adjcount-cond", "--n", "5", "--samples", "10", "--seed", "3")
    assert out.returncode == 0
    edges = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    for record in json_lines(out.stdout):
        g = int(record["g"], 16)
        present = {e for i, e in enumerate(edges) if g >> i & 1}
        for e in edges:
            adjacent = sum(1 for f in present if f != e and set(f) & set(e))
            assert adjacent >= 3


def test_couple_records_are_unions():
    args = ["couple", "--model", "adjcount", "--n", "7", "--base", "0.3", "--samples", "200", "--seed", "4"]
    out = run(*args)
    assert out.returncode == 0
    assert out.stdout == run(*args, "--threads", "2").stdout
    for r in json_lines(out.stdout):
        validate(r, "coupling_record.schema.json")
        g1, g2, u = (int(r[k], 16) for k in ("g1", "g2", "u"))
        assert g1 | g2 == u


def test_model_json_inline_and_file(tmp_path):
    descriptor = '{"kind":"er","n":4,"params":{"p":0.25}}'
    validate(json.loads(descriptor), "model_descriptor.schema.json")
    inline = run("generate", "--model-json", descriptor, "--samples", "5", "--seed", "8")
    path = tmp_path / "model.json"
    path.write_text(descriptor)
    from_file = run("generate", "--model-json", str(path), "--samples", "5", "--seed", "8")
    flags = run("generate", "--model", "er", "--n", "4", "--p", "0.25", "--samples", "5", "--seed", "8")
    assert inline.returncode == 0
    assert inline.stdout == from_file.stdout == flags.stdout
    assert run("generate", "--model-json", "{not json", "--seed", "1").returncode == 2


@pytest.mark.parametrize(
    "args",
    [
        ["--model", "adjcount", "--n", "4", "--check", "joint"],
        ["--model", "global", "--n", "4", "--check", "coupling"],
        ["--model", "adjcount", "--n", "4", "--check", "domination"],
        ["--model", "adjcount", "--n", "3", "--check", "domination", "--property", "connected"],
        ["--model", "global", "--n", "4", "--check", "floor"],
    ],
)
def test_exact_reports(args):
    out = run("exact", *args)
    assert out.returncode == 0, out.stderr
    report = json.loads(out.stdout)
    validate(report, "exact_report.schema.json")
    assert report["ok"] is True


def test_exact_joint_csv_sums_to_one():
    out = run("exact", "--model", "adjcount", "--n", "3", "--check", "joint", "--format", "csv")
    lines = out.stdout.splitlines()
    assert lines[0] == "realization,probability"
    assert len(lines) == 1 + 8
    assert abs(sum(float(line.split(",")[1]) for line in lines[1:]) - 1.0) < 1e-12


def test_exact_floor_values():
    global_report = json.loads(run("exact", "--model", "global", "--n", "4", "--check", "floor").stdout)
    assert global_report["floor"]["min_conditional"] == pytest.approx(0.625, abs=1e-12)
    adjacency = json.loads(run("exact", "--model", "adjcount", "--n", "4", "--check", "floor").stdout)
    assert adjacency["floor"]["min_conditional"] == pytest.approx(0.3, abs=1e-12)
    conditioned = run("exact", "--model", "adjcount-cond", "--n", "4", "--check", "floor")
    report = json.loads(conditioned.stdout)
    validate(report, "exact_report.schema.json")
    assert report["ok"] is False
    assert report["floor"]["full_conditional_meets_claim"] is False


@pytest.mark.parametrize("mode", ["paired", "independent"])
def test_verify_report(mode):
    args = ["verify", "--model", "adjcount", "--n", "8", "--property", "clique>=3", "--samples", "2000",
            "--seed", "21", "--mode", mode]
    out = run(*args)
    assert out.returncode == 0, out.stderr
    assert out.stdout == run(*args, "--threads", "3").stdout
    report = json.loads(out.stdout)
    validate(report, "verify_report.schema.json")
    assert report["test"]["mode"] == mode
    assert report["test"]["verdict"] == "consistent"
    if mode == "paired":
        assert report["test"]["violations"] == 0
    text = run(*args, "--format", "text")
    assert "verdict   consistent" in text.stdout


def test_report_formats():
    base = ["report", "--formula", "clique", "--n", "16,32", "--p", "0.5", "--samples", "5", "--seed", "2"]
    rows = json.loads(run(*base, "--format", "json").stdout)
    validate(rows, "asymptotic_report.schema.json")
    assert [r["n"] for r in rows] == [16, 32]
    csv_lines = run(*base, "--format", "csv").stdout.splitlines()
    assert csv_lines[0].startswith("formula,n,p,predicted,observed_mean")
    assert len(csv_lines) == 3
    assert "clique" in run(*base).stdout


def test_report_preset():
    args = ["report", "--preset", "paper-section-3", "--n", "32", "--samples", "4", "--seed", "6"]
    rows = json.loads(run(*args, "--format", "json").stdout)
    validate(rows, "asymptotic_report.schema.json")
    assert {r["formula"]: r["bound"] for r in rows} == {
        "clique": "lower", "chrom": "lower", "domset": "upper", "diam": "upper"}
    assert all(r["p"] == 0.3 for r in rows)
    csv_lines = run(*args, "--format", "csv").stdout.splitlines()
    assert csv_lines[0].endswith(",bound")
    assert len(csv_lines) == 5
    assert run(*args, "--format", "csv").stdout == run(*args, "--format", "csv", "--threads", "2").stdout


def test_out_file(tmp_path):
    target = tmp_path / "out.jsonl"
    args = ["generate", "--model", "er", "--n", "4", "--p", "0.5", "--samples", "3", "--seed", "1"]
    assert run(*args, "--out", str(target)).returncode == 0
    assert target.read_text() == run(*args).stdout
