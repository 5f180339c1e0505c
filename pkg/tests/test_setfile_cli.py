import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from smallbias import setfile
from smallbias.bias import CandidateSet, exact_max_bias
from smallbias.cli import main
from smallbias.legendre import next_prime
from smallbias.setfile import SetFileError


@st.composite
def sets(draw):
    n = draw(st.integers(1, 70))
    words = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=30))
    params = draw(st.dictionaries(st.sampled_from(["m", "t", "q", "shifts", "b"]),
                                  st.integers(0, 10**6) | st.lists(st.integers(0, 99), max_size=4)))
    return CandidateSet.from_words(n, words, method="manual", params=params, random_bits=draw(st.integers(0, 999)))


# -- set file ----------------------------------------------------------------


@given(sets())
def test_round_trip(S):
    back = setfile.parse(setfile.serialize(S))
    assert back.n == S.n
    assert back.elements == S.elements
    assert back.method == S.method and back.random_bits == S.random_bits
    assert back.params == S.params


def test_body_format():
    S = CandidateSet.from_words(9, [1, 0x1FF, 0x10, 1])
    lines = setfile.serialize(S).splitlines()
    body = [ln for ln in lines if not ln.startswith("#")]
    assert body == ["001", "1ff", "010", "001"]
    assert lines[0] == '# format: "smallbias-set/1"'


@pytest.mark.parametrize(
    "text,where",
    [
        ("# n: 4\n1\n", "format"),
        ('# format: "smallbias-set/1"\n1\n', "'n'"),
        ('# format: "smallbias-set/1"\n# n: 4\n12\n', "line 3"),
        ('# format: "smallbias-set/1"\n# n: 3\nf\n', "line 3"),
        ('# format: "smallbias-set/1"\n# n: 4\nz\n', "line 3"),
        ('# format: "smallbias-set/1"\n# n: 4\n1\n# size: 1\n', "line 4"),
        ('# format: "smallbias-set/1"\n# n: 4\n# size: 2\n1\n', "size"),
        ('# format: "smallbias-set/1"\n# n: 4\n', "no elements"),
        ('# format: "smallbias-set/1"\n# n 4\n1\n', "line 2"),
    ],
)
def test_parse_errors(text, where):
    with pytest.raises(SetFileError, match=where):
        setfile.parse(text)


def test_reserved_param_rejected():
    S = CandidateSet.from_words(3, [1], params={"size": 5})
    with pytest.raises(SetFileError):
        setfile.serialize(S)


# -- CLI ---------------------------------------------------------------------


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def header(path):
    return setfile.read(path)


def test_construct_aghp(tmp_path, capsys):
    out = tmp_path / "a.txt"
    code, stdout, _ = run(capsys, "construct", "--method", "aghp", "--n", "4", "--eps", "0.7", "-o", str(out))
    assert code == 0
    S = header(out)
    assert S.random_bits == 0
    assert len(S) == 37
    assert "random_bits: 0" in stdout
    assert "# random_bits: 0" in out.read_text()


def test_construct_naive_accounting(tmp_path, capsys):
    out = tmp_path / "n.txt"
    code, _, _ = run(capsys, "construct", "--method", "naive", "--n", "8", "--eps", "0.5", "--seed", "00", "-o", str(out))
    assert code == 0
    S = header(out)
    assert len(S) == 4 * 8 * 4
    assert S.random_bits == 8 * len(S)


def test_construct_naive_size_override(tmp_path, capsys):
    out = tmp_path / "n.txt"
    run(capsys, "construct", "--method", "naive", "--n", "8", "--eps", "0.5", "--size", "10", "-o", str(out))
    assert len(header(out)) == 10


@pytest.mark.parametrize(
    "argv",
    [
        ["--method", "naive", "--n", "8", "--eps", "0.5"],
        ["--method", "code-uniform", "--n", "8", "--eps", "0.5", "--A", "3"],
        ["--method", "code-nisan", "--n", "6", "--eps", "0.5", "--b", "8"],
        ["--method", "legendre-shift", "--n", "6", "--eps", "0.5", "--delta", "0.5"],
        ["--method", "aghp", "--n", "6", "--eps", "0.7"],
    ],
)
def test_construct_byte_identical(tmp_path, capsys, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "construct", *argv, "--seed", "c0ffee", "-o", str(a))
    run(capsys, "construct", *argv, "--seed", "c0ffee", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()
    if "aghp" not in argv:
        run(capsys, "construct", *argv, "--seed", "c0fff0", "-o", str(b))
        assert a.read_bytes() != b.read_bytes()


def test_construct_to_stdout(capsys):
    code, stdout, stderr = run(capsys, "construct", "--method", "aghp", "--n", "3", "--eps", "0.9")
    assert code == 0
    assert len(setfile.parse(stdout)) == next_prime(12).q
    assert "size: 13" in stderr


@pytest.mark.parametrize(
    "argv",
    [
        ["--method", "aghp", "--n", "4", "--eps", "0.5", "--delta", "0.5"],
        ["--method", "aghp", "--n", "4", "--eps", "0.5", "--A", "3"],
        ["--method", "code-uniform", "--n", "4", "--eps", "0.5", "--b", "8"],
        ["--method", "code-uniform", "--n", "4", "--eps", "0.5", "--size", "8"],
        ["--method", "legendre-shift", "--n", "4", "--eps", "0.5"],
        ["--method", "aghp", "--n", "4", "--eps", "1.5"],
        ["--method", "code-uniform", "--n", "4", "--eps", "0.5", "--A", "1.0"],
        ["--method", "code-nisan", "--n", "8", "--eps", "0.5", "--b", "4"],
        ["--method", "naive", "--n", "4", "--eps", "0.5", "--seed", "xyz"],
    ],
)
def test_construct_usage_errors(capsys, argv):
    code, _, err = run(capsys, "construct", *argv)
    assert code == 2
    assert "error" in err


def test_verify_full_space(tmp_path, capsys):
    f = tmp_path / "full.txt"
    setfile.write(CandidateSet.from_words(5, range(32)), f)
    code, out, _ = run(capsys, "verify", str(f), "--eps", "0.1")
    assert code == 0
    assert "max_bias: 0.000000" in out
    assert "weight  max_bias" in out


def test_verify_single_vector(tmp_path, capsys):
    f = tmp_path / "one.txt"
    setfile.write(CandidateSet.from_words(5, [0b10110]), f)
    code, out, _ = run(capsys, "verify", str(f), "--eps", "0.9")
    assert code == 1
    assert "max_bias: 1.000000" in out
    assert "FAIL" in out


def test_verify_sampled_below_exact(tmp_path, capsys):
    f = tmp_path / "s.txt"
    run(capsys, "construct", "--method", "naive", "--n", "10", "--eps", "0.5", "--size", "60", "-o", str(f))
    exact = exact_max_bias(setfile.read(f)).max_bias
    code, out, _ = run(capsys, "verify", str(f), "--mode", "sampled", "--samples", "200", "--eps", "0.5")
    sampled = float(next(ln for ln in out.splitlines() if ln.startswith("max_bias")).split()[1])
    assert sampled <= exact + 1e-6
    assert "(200 samples)" in out


def test_verify_exact_too_wide(tmp_path, capsys):
    f = tmp_path / "w.txt"
    setfile.write(CandidateSet.from_words(30, [1, 2, 3]), f)
    code, _, err = run(capsys, "verify", str(f), "--eps", "0.5")
    assert code == 2
    assert "sampled" in err
    code, _, _ = run(capsys, "verify", str(f), "--mode", "sampled", "--samples", "50", "--eps", "0.99")
    assert code in (0, 1)


def test_verify_bad_file(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("not a set file\n")
    assert run(capsys, "verify", str(f), "--eps", "0.5")[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing"), "--eps", "0.5")[0] == 2


def test_params_code_nisan(capsys):
    code, out, _ = run(capsys, "params", "--method", "code-nisan", "--n", "12", "--eps", "0.5", "--A", "2", "--b", "12")
    assert code == 0
    for line in ("m            96", "t            8", "k            3", "random_bits  84", "seed bits 84 < m = 96"):
        assert line in out


def test_params_legendre(capsys):
    code, out, _ = run(capsys, "params", "--method", "legendre-shift", "--n", "8", "--eps", "0.5", "--delta", "0.5")
    assert code == 0
    assert "ell          384" in out
    assert "q            4358257" in out
    assert f"random_bits  {8 * 23}" in out


def test_params_all(capsys):
    code, out, _ = run(capsys, "params", "--n", "12", "--eps", "0.5", "--b", "12")
    assert code == 0
    for m in ("naive", "code-uniform", "code-nisan", "legendre-shift", "aghp"):
        assert f"[{m}]" in out
    aghp = out.split("[aghp]")[1]
    assert "random_bits  0" in aghp
    assert "random_bits  2304" in out


@pytest.mark.parametrize(
    "q,coeffs,verdict,avg",
    [
        ("101", ["0", "1"], "PASS", "0.000000"),
        ("101", ["0", "0", "1"], "N/A", f"{100 / 101:.6f}"),
        ("5", ["0", "1", "1"], "PASS", "0.200000"),
    ],
)
def test_weil(capsys, q, coeffs, verdict, avg):
    code, out, _ = run(capsys, "weil", "--q", q, "--coeffs", *coeffs)
    assert code == 0
    assert f"verdict: {verdict}" in out
    assert f"average_sum: {avg}" in out


@pytest.mark.parametrize("argv", [["--q", "15", "--coeffs", "0", "1"], ["--q", "7", "--coeffs", "3"],
                                  ["--q", "7", "--coeffs", "1", "7"], ["--q", "2", "--coeffs", "0", "1"]])
def test_weil_errors(capsys, argv):
    assert run(capsys, "weil", *argv)[0] == 2


def test_console_entry_point(tmp_path):
    out = tmp_path / "x.txt"
    r = subprocess.run(
        [sys.executable, "-m", "smallbias.cli", "construct", "--method", "aghp", "--n", "3", "--eps", "0.9", "-o", str(out)],
        capture_output=True, text=True,
    )
    assert r.returncode == 0, r.stderr
    r = subprocess.run([sys.executable, "-m", "smallbias.cli", "verify", str(out), "--eps", "0.99"],
                       capture_output=True, text=True)
    assert r.returncode == 0
