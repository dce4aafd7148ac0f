import json
import subprocess
import sys

import pytest

from chowring.cli import main

MODEL = "rho 1\nb_tr 2\nns_gram 2\ntr_gram 1 0 0 1\n"


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "model.txt"
    path.write_text(MODEL)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_normalize(capsys):
    assert run(capsys, "normalize", "--m", "2", "D(1,2)^2") == (0, "24*o(1)*o(2)\n", "")
    code, out, _ = run(capsys, "normalize", "--m", "2", "--json", "L(1,1)^2")
    assert code == 0 and json.loads(out)["normal_form"] == "2*o(1)"


def test_realize(capsys, model_file):
    code, out, _ = run(capsys, "realize", "--m", "1", "--model", model_file, "o(1)^2")
    assert (code, out) == (0, "0\n")
    code, out, _ = run(capsys, "realize", "--m", "1", "--model", model_file, "o(1)")
    assert (code, out) == (0, "[pt]\n")


def test_verify_vanishing_codes(capsys, model_file):
    assert run(capsys, "verify-vanishing", "--m", "1", "--model", model_file, "L(1,1)^2 - 2*o(1)")[0] == 0
    assert run(capsys, "verify-vanishing", "--m", "1", "--model", model_file, "o(1)")[0] == 1
    code, out, _ = run(capsys, "verify-vanishing", "--m", "2", "--model", model_file, "--json",
                       "D(1,2)^2 - 5*o(1)*o(2)")
    payload = json.loads(out)
    assert code == 0 and payload["verdict"] == "chow_zero" and len(payload["model"]) == 16


def test_hilbert_commands(capsys):
    assert run(capsys, "hilbert", "chern-number", "--n", "2", "c(T,4)")[:2] == (0, "324\n")
    code, out, _ = run(capsys, "hilbert", "pullback", "--n", "2", "--partition", "{1}{2}", "c(T,2)")
    assert (code, out) == (0, "24*o(1) + 24*o(2) + 3*D(1,2)\n")
    code, out, _ = run(capsys, "hilbert", "pullback", "--n", "1", "--partition", "{1}", "--l", "1",
                       "c(I,2,2)")
    assert out == "D(1,2)\n"
    code, out, _ = run(capsys, "hilbert", "verify", "--n", "2", "c(O,1)")
    assert code == 1 and out.startswith("cohomologically_nonzero\n")


def test_fano_and_grass(capsys):
    assert run(capsys, "fano", "integrate", "l^4")[:2] == (0, "108\n")
    assert run(capsys, "fano", "normalize", "cc*D(1)")[:2] == (0, "0\n")
    assert run(capsys, "fano", "verify", "12*cc*l - 5*l^3")[:2] == (0, "chow_zero\n")
    assert run(capsys, "fano", "verify", "l^2*D(1)^2 - 2*o")[:2] == (3, "indeterminate\n")
    assert run(capsys, "grass", "integrate", "s(1)^8")[:2] == (0, "14\n")


def test_errors_exit_2(capsys):
    code, out, err = run(capsys, "normalize", "--m", "2", "o(1) +")
    assert code == 2 and "line 1, column 7" in err
    code, out, _ = run(capsys, "normalize", "--m", "2", "--json", "x(1)")
    assert code == 2 and "error" in json.loads(out)
    assert run(capsys, "normalize", "--m", "1", "o(2)")[0] == 2
    assert run(capsys, "hilbert", "pullback", "--n", "2", "--partition", "{1}", "1")[0] == 2
    assert run(capsys, "realize", "--m", "1", "--model", "/nonexistent", "o(1)")[0] == 2
    assert run(capsys, "bogus")[0] == 2


COMMANDS = [
    ["normalize", "--m", "3", "D(1,2)*D(2,3)*o(3) + L(1,1)^2"],
    ["realize", "--m", "2", "--model", "MODEL", "D(1,2)"],
    ["verify-vanishing", "--m", "2", "--model", "MODEL", "D(1,2)^2 - 5*o(1)*o(2)"],
    ["hilbert", "pullback", "--n", "3", "--partition", "{1,3}{2}", "c(T,2)*c(O,1)"],
    ["hilbert", "chern-number", "--n", "2", "c(T,2)^2"],
    ["hilbert", "verify", "--n", "2", "c(T,4) - 9/23*c(T,2)^2"],
    ["fano", "integrate", "l^2*cc"],
    ["fano", "normalize", "D(1)^4"],
    ["fano", "verify", "D(1)^3 - 3*iql*q(1,1)*l^2*D(1)"],
    ["grass", "integrate", "s(1)^4*s(1,1)^2"],
]


def _cli(argv, env):
    return subprocess.run([sys.executable, "-m", "chowring", *argv], env=env, capture_output=True)


def test_outputs_are_byte_identical_with_and_without_cache(tmp_path, model_file):
    import os
    env = dict(os.environ, CHOWRING_CACHE_DIR=str(tmp_path / "cache"))
    for cmd in COMMANDS:
        argv = [model_file if a == "MODEL" else a for a in cmd]
        for extra in ([], ["--json"]):
            runs = [_cli(argv + extra + ["--no-cache"], env), _cli(argv + extra, env),
                    _cli(argv + extra, env)]
            assert len({(r.returncode, r.stdout) for r in runs}) == 1, argv
            assert runs[0].stdout
