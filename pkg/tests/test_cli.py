import pytest

from conftest import DATA
from gendist.cli import run

FIG_A = str(DATA / "figA.mua")
FIG_B = str(DATA / "figB.mua")


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dist_figure(capsys):
    assert call(capsys, "dist", FIG_A, FIG_B) == (0, "4\n", "")


def test_oracle_matches_dist(capsys, tmp_path):
    a = tmp_path / "a.mua"
    b = tmp_path / "b.mua"
    a.write_text("3\n0 0 1\n")
    b.write_text("4\n1 0 3 3\n")
    code, out, _ = call(capsys, "dist", str(a), str(b))
    code2, out2, _ = call(capsys, "oracle-dist", str(a), str(b))
    assert code == code2 == 0 and out == out2
    assert call(capsys, "oracle-dist", str(a), str(b), "--cap", "9")[1] == out


def test_single_file_commands(capsys):
    assert call(capsys, "mgen", FIG_B)[1] == "6\n"
    assert call(capsys, "core", FIG_A)[1] == "1: 0\n"
    assert call(capsys, "components", FIG_A)[1] == " ".join(map(str, range(12))) + "\n"
    assert call(capsys, "canon", FIG_A)[1].startswith("[(")
    assert call(capsys, "iso", FIG_A, FIG_A)[1] == "true\n"
    assert call(capsys, "iso", FIG_A, FIG_B)[1] == "false\n"


def test_large(capsys, tmp_path):
    c = tmp_path / "c.mua"
    m = tmp_path / "m.mua"
    c.write_text("1\n0\n")
    m.write_text("3\n0 0 1\n")
    assert call(capsys, "large", str(c), str(m))[1] == "YES tail\n"
    assert call(capsys, "large", FIG_A, FIG_B)[1] == "NO\n"


def test_net_sym4(capsys, tmp_path):
    dot = tmp_path / "s4.dot"
    code, out, _ = call(capsys, "net", "--builtin", "sym:4", "--dot", str(dot))
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["vertices 30", "red 60", "blue 224"]
    rows = [line.split("\t") for line in lines[4:]]
    no = sorted(r[4] for r in rows if r[3] == "NO")
    assert no == sorted(
        ["{e}", "{e, (12)(34)}", "{e, (13)(24)}", "{e, (14)(23)}", "{e, (12)(34), (13)(24), (14)(23)}"]
    )
    assert dot.read_text().count("color=red") == 60


def test_net_file(capsys, tmp_path):
    fa = tmp_path / "z3.fa"
    fa.write_text("# Z3 under addition\nn 3\nop 2\n0 1 2\n1 2 0\n2 0 1\nop 0\n0\n")
    code, out, _ = call(capsys, "net", str(fa))
    assert code == 0 and out.splitlines()[:3] == ["vertices 2", "red 0", "blue 1"]


def test_qz(capsys):
    assert call(capsys, "qz", "dist", "--left", "default=inf", "--right", "default=inf")[1] == "0\n"
    assert call(capsys, "qz", "dist", "--left", "default=0", "--right", "default=0;0:inf")[1] == "inf\n"
    assert call(capsys, "qz", "diam", "default=inf;3:7")[1] == "1\n"


def test_deterministic(capsys):
    first = call(capsys, "net", "--builtin", "alt:4")
    assert call(capsys, "net", "--builtin", "alt:4") == first


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["dist", "x"], ["net"], ["net", "f.fa", "--builtin", "sym:3"], ["mgen", "a", "--nope"]],
)
def test_usage_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 1 and out == "" and err


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.mua"
    bad.write_text("2\n0 5\n")
    code, _, err = call(capsys, "mgen", str(bad))
    assert code == 2 and "line 2" in err
    assert call(capsys, "mgen", str(tmp_path / "missing.mua"))[0] == 2
    assert call(capsys, "qz", "diam", "default=x")[0] == 2
    assert call(capsys, "net", "--builtin", "sym:9")[0] == 2
    assert call(capsys, "oracle-dist", FIG_A, FIG_B, "--cap", "40")[0] == 2
