import json
import subprocess
import sys
from importlib import resources

import pytest
from jsonschema import Draft202012Validator

from palc.cli import main

from conftest import KBS

SCHEMA = json.loads(resources.files("palc").joinpath("schema/report.schema.json").read_text())
VALIDATOR = Draft202012Validator(SCHEMA)


def run(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *args):
    code, out, err = run(capsys, *args, "--json")
    doc = json.loads(out)
    VALIDATOR.validate(doc)
    return code, doc


def rat(d):
    return (d["num"], d["den"])


BIRDS = KBS / "birds.palc"


def test_check_birds_both(capsys):
    code, out, _ = run(capsys, "check", BIRDS, "--method", "both")
    assert code == 0
    assert "consistent" in out and "inconsistent" not in out
    code, doc = run_json(capsys, "check", BIRDS, "--method", "both")
    assert code == 0 and doc["consistent"] is True


def test_query_antarctic_birds(capsys):
    code, doc = run_json(capsys, "query", BIRDS, "--from", "antarctic_bird", "--to", "flying_object",
                         "--method", "both")
    assert code == 0
    for m in ("local", "exact"):
        assert rat(doc[m]["lo"]) == (3, 4) and rat(doc[m]["hi"]) == (1, 1)
    assert doc["agreement"] == "equal"


def test_query_bird_penguin_default_method(capsys):
    code, out, _ = run(capsys, "query", BIRDS, "--from", "bird", "--to", "penguin")
    assert code == 0
    assert "[0, 1/20]" in out


def test_query_compound_concept(capsys):
    code, doc = run_json(capsys, "query", BIRDS, "--from", "(and bird (not flying_object))", "--to", "penguin",
                         "--method", "exact")
    assert code == 0 and doc["exact"] is not None


def test_query_vacuous_antecedent(capsys):
    code, out, _ = run(capsys, "query", BIRDS, "--from", "(and penguin flying_object)", "--to", "bird",
                       "--method", "both")
    assert code == 3
    assert "vacuous" in out


def test_query_with_trace(capsys):
    code, doc = run_json(capsys, "query", BIRDS, "--from", "bird", "--to", "penguin", "--trace")
    assert code == 0 and doc["trace"]
    assert {"rule", "entry", "old", "new"} <= set(doc["trace"][0])


def test_query_errors(capsys):
    code, _, err = run(capsys, "query", BIRDS, "--from", "fish", "--to", "bird")
    assert code == 2 and "fish" in err
    code, _, err = run(capsys, "query", KBS / "missing.palc", "--from", "a", "--to", "b")
    assert code == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", BIRDS)
    assert code == 0
    lines = set(out.splitlines())
    assert {"penguin < antarctic_bird", "antarctic_bird < bird", "bird < animal", "flying_object < top"} <= lines
    assert not any(line.startswith("bird < flying_object") for line in lines)
    code, out, _ = run(capsys, "classify", KBS / "birds_v1.palc")
    assert "bird < animal" in out.splitlines()
    code, doc = run_json(capsys, "classify", BIRDS)
    assert {"child": "penguin", "parent": "antarctic_bird"} in doc["edges"]


def test_classify_empty(tmp_path, capsys):
    f = tmp_path / "empty.palc"
    f.write_text("")
    code, out, _ = run(capsys, "classify", f)
    assert code == 0 and out.splitlines() == ["bottom < top"]


def test_ranges_exact_contains_explicit_point(capsys):
    code, out, _ = run(capsys, "ranges", BIRDS, "--method", "exact")
    assert code == 0
    assert "bird -> antarctic_bird : [1/5, 1/5]" in out


def test_ranges_compare(capsys, tmp_path):
    import random

    from palc.parser import serialize_kb
    from palc.randomkb import random_kb

    f = tmp_path / "random_kb.palc"
    f.write_text(serialize_kb(random_kb(random.Random(4)).kb))
    for path in (BIRDS, f):
        code, doc = run_json(capsys, "ranges", path, "--compare")
        assert code == 0
        assert {r["agreement"] for r in doc["entries"]} <= {"equal", "local_contains_exact", "vacuous"}


@pytest.mark.parametrize("name", ["contradictory.palc", "axiom_conflict.palc", "positivity_conflict.palc"])
@pytest.mark.parametrize("method", ["local", "exact", "both"])
def test_inconsistent_fixtures(capsys, name, method):
    code, doc = run_json(capsys, "check", KBS / name, "--method", method)
    assert code == 1 and doc["consistent"] is False


def test_bad_interval_is_a_usage_error(capsys):
    code, _, err = run(capsys, "check", KBS / "bad_interval.palc")
    assert code == 2
    assert "3:17" in err and "3:16" in err


def test_output_is_deterministic(capsys):
    args = ("ranges", BIRDS, "--compare", "--json")
    first = run(capsys, *args)
    assert run(capsys, *args) == first


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "palc.cli", "query", str(BIRDS), "--from", "bird",
                          "--to", "antarctic_bird"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "[1/5, 1/5]" in out.stdout
