import json
import subprocess
import sys

import pytest

from streamlang.cli import main

from conftest import ANBN, G2


@pytest.fixture
def files(tmp_path):
    paths = {}

    def put(name, text):
        path = tmp_path / name
        path.write_text(text)
        paths[name] = str(path)
        return str(path)

    put("anbn.g", ANBN)
    put("g2.g", G2)
    put("bad.g", "start: S\nterminals: a b\nnonterminals: S\nS -> a S b\nS -> a b\n")
    put("broken.g", "start: S\nterminals: a\nnonterminals: S\nS -> a c\n")
    put("aabb.txt", "n: 4\na a b b\n")
    put("aaba.txt", "n: 4\na a b a\n")
    put("abb.txt", "n: 3\na b b\n")
    put("br.txt", "n: 4\n( [ ] )\n")
    put("inst.ds", "n: 3\ndegrees: 2 1 0\nm: 3\n1 2\n1 3\n2 1\n")
    put("rej.ds", "n: 2\ndegrees: 1 0\nm: 1\n2 1\n")
    put("oor.ds", "n: 2\ndegrees: 1 0\nm: 1\n3 1\n")
    return paths


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    report = json.loads(out) if out.strip().startswith("{") else None
    return code, report, out, err


def test_recognize_dlin(files, capsys):
    code, report, _, _ = cli(capsys, "recognize", "--algo", "dlin", "--grammar", files["anbn.g"], "--input", files["aabb.txt"], "--seed", "7")
    assert code == 0
    assert report["decision"] == "accept" and report["algorithm"] == "dlin" and report["n"] == 4
    assert report["error_bound"] == f"{4}/{report['p'] - 1}".replace("4/16", "1/4")
    assert 16 <= report["p"] <= 32 and 1 <= report["alpha"] < report["p"]
    assert report["peak_words"] <= 10 and report["passes_used"] == 1


def test_fixed_seed_is_byte_identical(files, capsys):
    argv = ("recognize", "--algo", "dlin", "--grammar", files["anbn.g"], "--input", files["aaba.txt"], "--seed", "11")
    first = cli(capsys, *argv)[2]
    assert cli(capsys, *argv)[2] == first
    assert json.loads(first)["decision"] == "reject"


def test_alpha_exhaustive(files, capsys):
    code, report, _, _ = cli(capsys, "recognize", "--algo", "dlin", "--grammar", files["anbn.g"], "--input", files["aabb.txt"], "--prime", "101", "--alpha-exhaustive")
    assert code == 0 and report["accept_fraction"] == 1.0 and report["trials"] == 100
    code, report, _, _ = cli(capsys, "recognize", "--algo", "dlin", "--grammar", files["anbn.g"], "--input", files["aaba.txt"], "--prime", "101", "--alpha-exhaustive")
    assert code == 1 and report["accepts"] <= 4


def test_recognize_ll1(files, capsys):
    code, report, _, _ = cli(capsys, "recognize", "--algo", "ll1", "--grammar", files["g2.g"], "--input", files["abb.txt"], "--bound", "3")
    assert code == 0 and report["peak_items"] == 3 and "error_bound" in report
    code, report, _, _ = cli(capsys, "recognize", "--algo", "ll1", "--grammar", files["g2.g"], "--input", files["abb.txt"], "--bound", "2")
    assert code == 1 and report["reason"] == "bound-exceeded"
    code, _, _, err = cli(capsys, "recognize", "--algo", "ll1", "--grammar", files["g2.g"], "--input", files["abb.txt"])
    assert code == 2 and "--bound" in err


def test_recognize_deterministic(files, capsys):
    code, report, _, _ = cli(capsys, "recognize", "--algo", "dyck2-1turn", "--input", files["br.txt"], "--passes", "2")
    assert code == 0 and report["passes_used"] == 2 and report["block_len"] == 1
    assert "error_bound" not in report and "alpha" not in report
    code, report, _, _ = cli(capsys, "recognize", "--algo", "dlin-multipass", "--grammar", files["anbn.g"], "--input", files["aabb.txt"], "--passes", "2")
    assert code == 0 and report["passes_used"] == 3 and "error_bound" not in report
    code, report, _, _ = cli(capsys, "recognize", "--algo", "dlin-multipass", "--grammar", files["anbn.g"], "--input", files["aaba.txt"], "--passes", "2")
    assert code == 1


def test_validate(files, capsys):
    code, report, _, _ = cli(capsys, "validate", "--grammar", files["anbn.g"], "--class", "dlin")
    assert code == 0 and report["decision"] == "valid"
    code, report, _, err = cli(capsys, "validate", "--grammar", files["bad.g"], "--class", "dlin")
    assert code == 2 and report["reason"] == "determinism" and "determinism" in err
    code, _, _, _ = cli(capsys, "validate", "--grammar", files["g2.g"], "--class", "ll1")
    assert code == 0
    code, _, _, err = cli(capsys, "validate", "--grammar", files["broken.g"])
    assert code == 2 and "undeclared" in err


def test_reduce(files, capsys):
    code, report, _, _ = cli(capsys, "reduce", "--to", "dyck-k", "--grammar", files["anbn.g"], "--input", files["aaba.txt"])
    assert code == 0 and report["tokens"] == ["b", "b", "b~", "a~"]
    _, report, _, _ = cli(capsys, "reduce", "--to", "dyck-2", "--grammar", files["anbn.g"], "--input", files["aabb.txt"])
    assert report["tokens"] == ["[", "[", "]", "]"]
    _, _, out, _ = cli(capsys, "reduce", "--to", "dyck-2", "--grammar", files["anbn.g"], "--input", files["aabb.txt"], "--report", "quiet")
    assert out == "n: 4\n[ [ ] ]\n"


def test_degseq(files, capsys):
    code, report, _, _ = cli(capsys, "degseq", "--mode", "multipass", "--passes", "3", "--input", files["inst.ds"])
    assert code == 0 and report["passes_used"] == 3
    code, report, _, _ = cli(capsys, "degseq", "--mode", "randomized", "--input", files["rej.ds"], "--prime", "101", "--alpha-exhaustive")
    assert code == 1 and report["accepts"] == 1
    code, report, _, _ = cli(capsys, "degseq", "--input", files["oor.ds"])
    assert code == 1 and report["reason"] == "vertex-out-of-range"


def test_oracle(files, capsys):
    assert cli(capsys, "oracle", "--kind", "cyk", "--grammar", files["anbn.g"], "--input", files["aabb.txt"])[0] == 0
    assert cli(capsys, "oracle", "--kind", "cpda", "--grammar", files["anbn.g"], "--input", files["aaba.txt"])[0] == 1
    code, report, _, _ = cli(capsys, "oracle", "--kind", "ll1", "--grammar", files["g2.g"], "--input", files["abb.txt"])
    assert code == 0 and report["rank"] == 2 and report["peak_items"] == 3
    assert cli(capsys, "oracle", "--kind", "dyck", "--one-turn", "--input", files["br.txt"])[0] == 0
    assert cli(capsys, "oracle", "--kind", "degseq", "--input", files["rej.ds"])[0] == 1
    assert cli(capsys, "oracle", "--kind", "degseq", "--input", files["oor.ds"])[0] == 1
    assert cli(capsys, "oracle", "--kind", "cpda", "--grammar", files["g2.g"], "--input", files["abb.txt"])[0] == 2


def test_prime(capsys):
    code, report, _, _ = cli(capsys, "prime", "--n", "10")
    assert code == 0 and report["p"] == 101
    assert cli(capsys, "prime", "--n", "10", "--report", "quiet")[2] == "101\n"
    assert cli(capsys, "prime", "--n", "0")[0] == 2


def test_usage_errors(files, capsys):
    assert cli(capsys)[0] == 2
    assert cli(capsys, "recognize", "--algo", "nope", "--input", files["aabb.txt"])[0] == 2
    assert cli(capsys, "recognize", "--algo", "dlin", "--input", files["aabb.txt"])[0] == 2
    assert cli(capsys, "recognize", "--algo", "dlin", "--grammar", files["g2.g"], "--input", files["abb.txt"])[0] == 2
    assert cli(capsys, "recognize", "--algo", "dlin", "--grammar", "/nonexistent.g", "--input", files["aabb.txt"])[0] == 2
    assert cli(capsys, "recognize", "--algo", "dyck2-1turn", "--input", files["br.txt"], "--passes", "0")[0] == 2
    assert cli(capsys, "recognize", "--algo", "dlin", "--grammar", files["anbn.g"], "--input", files["aabb.txt"], "--prime", "100")[0] == 2
    assert cli(capsys, "--version")[0] == 0


def test_stdin_and_console_script(files):
    proc = subprocess.run(
        [sys.executable, "-m", "streamlang.cli", "recognize", "--algo", "dlin", "--grammar", files["anbn.g"], "--input", "-"],
        input="n: 2\na b\n",
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["decision"] == "accept"
