import io
import json
import subprocess
import sys

import pytest

from cogrowth.cli import UsageError, main, read_blocks
from cogrowth.core import core_of
from cogrowth.corpus import corpus_seed, random_corpus
from cogrowth.exceptions import AlphabetError
from oracles import parse_core_dot


def run(*argv):
    out = io.StringIO()
    try:
        code = main(list(argv), out=out)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    return code, out.getvalue()


def test_analyze_json():
    code, text = run("analyze", "-m", "3", "aba^-1", "aca^-1", "--json")
    assert code == 0
    doc = json.loads(text)
    assert doc["schema"] == 1
    assert doc["cogrowth"] == {"num": [1, -3, 0, 4], "den": [1, -3]}
    assert doc["coefficients"][:6] == [1, 0, 0, 4, 12, 36]
    assert len(doc["coefficients"]) == 21
    assert doc["index"] == "infinite"
    assert doc["conjugacy_reduced"] is False
    assert doc["methods_agree"] is True
    assert doc["methods_checked"] == ["transfer", "nielsen", "enumerate"]
    assert doc["entropy"] == pytest.approx(1.0986122886681098, abs=1e-9)


def test_analyze_trivial():
    code, text = run("analyze", "-m", "2", "--json")
    doc = json.loads(text)
    assert code == 0
    assert doc["cogrowth"] == {"num": [1], "den": [1]}
    assert doc["entropy"] == 0.0
    assert doc["coefficients"] == [1] + [0] * 20


def test_analyze_growth_rate():
    code, text = run("analyze", "-m", "2", "bb", "baB A", "aaa", "--json", "--method", "transfer")
    doc = json.loads(text)
    assert code == 0
    assert doc["growth_rate"] == pytest.approx(1.88233, abs=1e-4)
    assert doc["methods_checked"] == ["transfer"]


def test_analyze_text_report():
    code, text = run("analyze", "-m", "3", "a^2", "b", "c", "abA", "acA", "--coeffs", "5")
    assert code == 0
    assert "index: 2" in text and "normal: yes" in text
    assert "H(z) = (1 - 3*z + z^2 + 5*z^3) / (1 - 7*z + 15*z^2 - 25*z^3)" in text


def test_output_is_deterministic():
    args = ("analyze", "-m", "2", "a^3", "ab", "aB", "Aba", "--json")
    assert run(*args) == run(*args)
    dot = ("automaton", "-m", "2", "a^3", "ab", "--dot")
    assert run(*dot) == run(*dot)


@pytest.mark.parametrize(
    "argv, code",
    [
        (["analyze", "-m", "2", "a^"], 1),
        (["analyze", "-m", "2", "a+b"], 1),
        (["analyze", "abA"], 1),
        (["analyze", "-m", "0"], 1),
        (["analyze", "-m", "2", "--method", "fast"], 1),
        (["nonsense"], 1),
        (["analyze", "-m", "2", "ac"], 2),
        (["coefficients", "-m", "2", "x3"], 2),
        (["analyze", "-m", "2", "a", "--oracle-depth", "40"], 1),
        (["coefficients", "-m", "2", "a", "--coeffs", "20000"], 1),
    ],
)
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_disagreement_exit_code(monkeypatch):
    import cogrowth.report as report
    from cogrowth.series import RationalFunction

    monkeypatch.setattr(report, "nielsen_cogrowth", lambda basis: RationalFunction(7))
    code, text = run("analyze", "-m", "2", "a", "--method", "nielsen")
    assert code == 3
    assert "DISAGREEMENT" in text


def test_core_dot_round_trip():
    code, text = run("core", "-m", "3", "abA", "acA", "--dot")
    assert code == 0
    assert parse_core_dot(text) == (2, [(0, 1, 1), (1, 2, 1), (1, 3, 1)])
    assert text.count("->") == 3
    code, text = run("core", "-m", "2", "--dot")
    assert parse_core_dot(text) == (1, [])


def test_core_reduce():
    code, text = run("core", "-m", "3", "abA", "acA", "--reduce", "--json")
    doc = json.loads(text)
    assert doc["conjugator"] == "A"
    assert doc["vertex_count"] == 1


def test_automaton_kinds():
    code, text = run("automaton", "-m", "2", "--kind", "free-group", "--dot")
    assert code == 0
    assert text.count("shape=circle") + text.count("shape=doublecircle") == 5
    code, text = run("automaton", "-m", "2", "bb", "baBA", "aaa", "--kind", "start-free", "--json")
    doc = json.loads(text)
    assert len(doc["states"]) == 14 and len(doc["initials"]) == 4
    code, text = run("automaton", "-m", "2", "bb", "baBA", "aaa", "--kind", "minimal", "--json")
    assert len(json.loads(text)["states"]) == 15
    code, text = run("automaton", "-m", "3", "abA", "acA")
    assert "q*" in text and "(v1,a)" in text


def test_coefficients_table():
    code, text = run("coefficients", "-m", "3", "abA", "acA", "--coeffs", "5")
    assert code == 0
    assert [line.split("\t")[1] for line in text.strip().splitlines()[1:]] == ["1", "0", "0", "4", "12", "36"]
    code, text = run("coefficients", "-m", "2", "a", "b", "--coeffs", "3", "--json")
    assert json.loads(text)["coefficients"] == [1, 4, 12, 36]
    code, text = run("coefficients", "-m", "2", "--coeffs", "4", "--json")
    assert json.loads(text)["coefficients"] == [1, 0, 0, 0, 0]


def test_nielsen_and_entropy_commands():
    code, text = run("nielsen", "-m", "3", "abA", "acA", "--json")
    doc = json.loads(text)
    assert doc["generators"] == ["abA", "acA"]
    assert doc["matrix"][0] == [[1, -1], [], [0, -1], [0, -1]]
    assert doc["cogrowth"] == {"num": [1, -3, 0, 4], "den": [1, -3]}
    code, text = run("entropy", "-m", "3", "abA", "acA", "--json")
    doc = json.loads(text)
    assert doc["entropy"] == pytest.approx(1.0986122886681098, abs=1e-9)
    assert doc["entropy_bits"] == pytest.approx(1.584962500721156, abs=1e-9)
    code, text = run("entropy", "-m", "3")
    assert "growth rate: 1" in text


def test_file_input(tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("# two subgroups\nrank 3\nabA\nacA   # comment\n\nrank 2\na\nb\n")
    code, text = run("analyze", "--file", str(path), "--json", "--method", "transfer")
    docs = json.loads(text)
    assert code == 0 and len(docs) == 2
    assert docs[0]["cogrowth"] == {"num": [1, -3, 0, 4], "den": [1, -3]}
    assert docs[1]["index"] == 1
    assert run("analyze", "--file", str(tmp_path / "missing.txt"))[0] == 1
    assert run("analyze", "--file", str(path), "abA")[0] == 1


def test_read_blocks_errors():
    with pytest.raises(UsageError):
        read_blocks("abA\n")
    with pytest.raises(AlphabetError):
        read_blocks("rank 2\nabc\n")
    with pytest.raises(UsageError):
        read_blocks("rank two\n")
    assert read_blocks("rank 2\n1\n")[0].words == [()]


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "cogrowth.cli", "coefficients", "-m", "2", "a", "b", "--coeffs", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "2\t12"


def test_corpus_is_reproducible(monkeypatch):
    monkeypatch.setenv("COGROWTH_SEED", "5")
    assert corpus_seed() == 5
    first = random_corpus(20)
    assert first == random_corpus(20, seed=5)
    assert first != random_corpus(20, seed=6)
    for s in first:
        assert s.rank in (2, 3)
        assert 1 <= len(s.generators) <= 4
        assert all(1 <= len(w) <= 6 for w in s.generators)
        assert s.core() == core_of(s.rank, s.generators)
    monkeypatch.setenv("COGROWTH_SEED", "nope")
    with pytest.raises(ValueError):
        corpus_seed()
