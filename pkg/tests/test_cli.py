import json
import os

import pytest

from edgecolor.cli import main
from edgecolor.formats import read_graph


def run(args):
    return main(args)


def test_gen_and_color_k7(tmp_path):
    mg = tmp_path / "k7.mg"
    out = tmp_path / "k7.json"
    assert run(["gen", "--kind", "complete", "--n", "7", "--out", str(mg)]) == 0
    code = run(["color", str(mg), "--out", str(out)])
    doc = json.loads(out.read_text())
    assert code == 0
    assert doc["verdict"] == "ClassTwo" and doc["colors_used"] == 7
    assert doc["schema"] == 1


def test_color_then_verify(tmp_path):
    mg = tmp_path / "g.mg"
    out = tmp_path / "g.json"
    run(["gen", "--kind", "random-dense", "--n", "21", "--p", "0.75",
         "--delta-floor", "14", "--seed", "3", "--out", str(mg)])
    run(["color", str(mg), "--epsilon", "0.25", "--seed", "1", "--out", str(out)])
    assert run(["verify", str(mg), str(out), "--out", os.devnull]) == 0


def test_verify_rejects_corrupted(tmp_path):
    mg = tmp_path / "g.mg"
    out = tmp_path / "g.json"
    run(["gen", "--kind", "complete", "--n", "5", "--out", str(mg)])
    run(["color", str(mg), "--out", str(out)])
    doc = json.loads(out.read_text())
    doc["coloring"]["classes"][0] = sorted(
        set(doc["coloring"]["classes"][0]) | set(doc["coloring"]["classes"][1])
    )
    doc["coloring"]["classes"][1] = []
    out.write_text(json.dumps(doc))
    assert run(["verify", str(mg), str(out), "--out", os.devnull]) == 1


def test_exit_code_fallback(tmp_path):
    mg = tmp_path / "sparse.mg"
    out = tmp_path / "sparse.json"
    run(["gen", "--kind", "random-dense", "--n", "15", "--p", "0.4",
         "--delta-floor", "5", "--seed", "2", "--out", str(mg)])
    code = run(["color", str(mg), "--epsilon", "0.5", "--out", str(out)])
    doc = json.loads(out.read_text())
    assert doc["verdict"] == "FallbackClassUnknown"
    assert code == 2


def test_mode_odd_rejects_even(tmp_path):
    mg = tmp_path / "e.mg"
    run(["gen", "--kind", "complete", "--n", "6", "--out", str(mg)])
    assert run(["color", str(mg), "--mode", "odd", "--out", os.devnull]) == 1


def test_mode_engine(tmp_path):
    mg = tmp_path / "fix.mg"
    out = tmp_path / "fix.json"
    run(["gen", "--kind", "dcolor-fixture", "--condition", "a", "--n", "20",
         "--out", str(mg)])
    code = run(["color", str(mg), "--mode", "engine", "--epsilon", "0.5",
                "--eta", "0.2", "--seed", "1", "--out", str(out)])
    doc = json.loads(out.read_text())
    assert doc["verdict"] in ("Colored", "Fallback")
    assert code in (0, 2)


def test_oracle_command(tmp_path):
    mg = tmp_path / "k4.mg"
    out = tmp_path / "k4.json"
    run(["gen", "--kind", "complete", "--n", "4", "--out", str(mg)])
    assert run(["oracle", str(mg), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["chi_prime"] == 3 and doc["class"] == 1


def test_gen_fixture_has_suggested_params(tmp_path):
    mg = tmp_path / "fix.mg"
    run(["gen", "--kind", "case-fixture", "--case", "2", "--n", "30", "--out", str(mg)])
    text = mg.read_text()
    assert "suggested-epsilon" in text
    g = read_graph(str(mg))
    assert g.vertex_count == 59


def test_byte_determinism(tmp_path):
    mg = tmp_path / "g.mg"
    run(["gen", "--kind", "complete-minus-matching", "--n", "9",
         "--matching-size", "3", "--out", str(mg)])
    outs = []
    for i in range(3):
        out = tmp_path / f"o{i}.json"
        run(["color", str(mg), "--seed", "5", "--epsilon", "0.3", "--out", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_bench_corpus(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for i, n in enumerate((5, 7, 9)):
        run(["gen", "--kind", "complete", "--n", str(n),
             "--out", str(corpus / f"k{n}.mg")])
    out = tmp_path / "bench.csv"
    assert run(["bench", str(corpus), "--epsilon", "0.3", "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("file,n,delta")
    assert len(lines) == 4
    assert all("ClassTwo" in line for line in lines[1:])


def test_bench_empty_dir(tmp_path):
    corpus = tmp_path / "empty"
    corpus.mkdir()
    out = tmp_path / "bench.csv"
    assert run(["bench", str(corpus), "--out", str(out)]) == 0
    assert out.read_text().strip().splitlines()[0].startswith("file,")
