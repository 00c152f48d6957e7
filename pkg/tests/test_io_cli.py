import numpy as np
import pytest

from dualbern import (
    CoeffTable,
    FormatError,
    TriPatch,
    compute_table,
    l2_distance,
    patch_eval,
    read_patch,
    read_table,
    reduce_degree,
    write_patch,
    write_table,
)
from dualbern.cli import main
from helpers import random_patch


# ---------------------------------------------------------------- patch files


def test_patch_round_trip_is_bitwise(tmp_path):
    vals = np.array(
        [[0.1 + 0.2], [1.0 / 3.0], [-1e-300], [1e300], [np.pi], [-0.0]]
    )
    p = TriPatch(2, vals)
    f = tmp_path / "p.txt"
    write_patch(str(f), p)
    q = read_patch(str(f))
    assert q.n == 2 and q.dim == 1 and q.weights is None
    assert np.array_equal(q.values, vals)


def test_rational_patch_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    p = random_patch(rng, 3, dim=2, rational=True)
    f = tmp_path / "p.txt"
    write_patch(str(f), p)
    q = read_patch(str(f))
    assert np.array_equal(q.values, p.values)
    assert np.array_equal(q.weights, p.weights)


def test_patch_records_in_any_order(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text(
        "# scrambled but complete\n"
        "degree 2\n"
        "dim 1\n"
        "\n"
        "2 0 6.0\n"
        "0 1 2.0   # trailing comment\n"
        "1 1 5.0\n"
        "0 0 1.0\n"
        "1 0 4.0\n"
        "0 2 3.0\n"
    )
    q = read_patch(str(f))
    assert q.values[:, 0].tolist() == [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]


@pytest.mark.parametrize(
    "text,hint",
    [
        ("dim 1\n0 0 1\n", "degree"),                       # record before headers
        ("degree 1\ndim 1\n0 0 1\n0 0 2\n1 0 3\n0 1 4\n", "duplicate"),
        ("degree 1\ndim 1\n0 0 1\n1 0 2\n", "missing"),     # incomplete
        ("degree 1\ndim 1\n0 0 1\n1 0 2\n2 0 9\n0 1 3\n", "outside"),
        ("degree 1\ndim 2\n0 0 1\n1 0 2 2\n0 1 3 3\n", "fields"),
        ("degree 1\ndim 1\nweights maybe\n", "weights"),
        ("degree one\ndim 1\n", "degree"),
    ],
)
def test_patch_format_errors(tmp_path, text, hint):
    f = tmp_path / "bad.txt"
    f.write_text(text)
    with pytest.raises(FormatError, match=hint):
        read_patch(str(f))


def test_patch_invalid_weights_rejected(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("degree 0\ndim 1\nweights yes\n0 0 1.0 -2.0\n")
    with pytest.raises(FormatError):
        read_patch(str(f))


# ---------------------------------------------------------------- table files


def test_table_round_trip(tmp_path):
    t = compute_table((0.5, 0.0, -0.3), 3)
    f = tmp_path / "t.txt"
    write_table(str(f), t)
    back, cc = read_table(str(f))
    assert cc.is_zero
    assert np.array_equal(back.data, t.data)
    assert back.alpha.as_tuple() == t.alpha.as_tuple()


def test_constrained_table_round_trip(tmp_path):
    c = (1, 0, 1)
    t = compute_table((0.0, 1.0, 0.0), 4, c)
    f = tmp_path / "t.txt"
    write_table(str(f), t, c)
    back, cc = read_table(str(f))
    assert cc.as_tuple() == c
    assert np.array_equal(back.data, t.data)


def test_table_write_requires_exponents(tmp_path):
    bare = CoeffTable(2)
    with pytest.raises(FormatError):
        write_table(str(tmp_path / "t.txt"), bare)


@pytest.mark.parametrize(
    "text,hint",
    [
        ("n 1\n0 0 0 0 1\n", "alpha"),                # records before alpha header
        ("alpha 0 0 0\n0 0 0 0 1\n", "headers"),      # records before n header
        ("n 1\nalpha 0 0 0\n0 0 0 0\n", "fields"),
        (
            "n 1\nalpha 0 0 0\n0 0 0 0 1\n0 1 0 1 1\n1 0 1 0 1\n0 0 0 1 1\n"
            "0 1 0 0 1\n1 0 0 1 1\n",
            "duplicate",
        ),
        ("n 1\nalpha 0 0 0\n0 0 0 0 1\n", "pairs"),   # wrong total
        ("n 1\nalpha 0 0 0\n0 0 2 0 1\n", "outside"),
        ("n 1\nalpha 0 0 x\n", "alpha"),
    ],
)
def test_table_format_errors(tmp_path, text, hint):
    f = tmp_path / "bad.txt"
    f.write_text(text)
    with pytest.raises(FormatError, match=hint):
        read_table(str(f))


# ------------------------------------------------------------------------ CLI


def test_cli_dual_table_with_checks(tmp_path, capsys):
    out = tmp_path / "t5.txt"
    rc = main(
        ["dual-table", "--n", "5", "--alpha", "0.5,0,-0.3", "--out", str(out), "--check", "gram"]
    )
    assert rc == 0
    text = capsys.readouterr().out
    assert "check gram: residual=" in text and f"wrote {out}" in text
    table, cc = read_table(str(out))
    assert cc.is_zero and table.n == 5

    out2 = tmp_path / "t5c.txt"
    rc = main(
        ["dual-table", "--n", "5", "--alpha", "0,0,0", "--c", "1,0,1",
         "--out", str(out2), "--check", "direct"]
    )
    assert rc == 0
    assert "check direct: rel_difference=" in capsys.readouterr().out
    table2, cc2 = read_table(str(out2))
    assert cc2.as_tuple() == (1, 0, 1)
    ref = compute_table((0.0, 0.0, 0.0), 5, (1, 0, 1))
    assert np.array_equal(table2.data, ref.data)


def test_cli_output_is_deterministic(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    argv = ["dual-table", "--n", "6", "--alpha", "1,2,3", "--out"]
    assert main(argv + [str(a)]) == 0
    assert main(argv + [str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_reduce_eval_distance(tmp_path, capsys):
    rng = np.random.default_rng(1)
    src = random_patch(rng, 4, dim=2, rational=True)
    bd = random_patch(rng, 2, dim=2)
    fsrc = tmp_path / "src.txt"
    fbd = tmp_path / "bd.txt"
    fout = tmp_path / "red.txt"
    write_patch(str(fsrc), src)
    write_patch(str(fbd), bd)

    rc = main(
        ["reduce", "--in", str(fsrc), "--m", "2", "--alpha", "0.5,1,0",
         "--c", "0,1,1", "--g", str(fbd), "--out", str(fout), "--report"]
    )
    assert rc == 0
    text = capsys.readouterr().out
    assert "l2_error=" in text

    got = read_patch(str(fout))
    want = reduce_degree(
        read_patch(str(fsrc)), 2, (0.5, 1.0, 0.0), c=(0, 1, 1),
        boundary=read_patch(str(fbd)).values,
    )
    assert np.array_equal(got.values, want.values)

    reported = float(text.split("l2_error=")[1].split()[0])
    assert reported == pytest.approx(
        l2_distance(read_patch(str(fsrc)), got, (0.5, 1.0, 0.0)), rel=1e-12
    )

    rc = main(["eval", "--in", str(fout), "--at", "0.25,0.5", "--at", "1,0"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2
    first = [float(t) for t in lines[0].split()]
    assert first[:2] == [0.25, 0.5]
    vals = patch_eval(got, np.array([[0.25, 0.5]]))
    assert first[2:] == vals[0].tolist()

    rc = main(["distance", "--a", str(fsrc), "--b", str(fout), "--alpha", "0.5,1,0"])
    assert rc == 0
    printed = float(capsys.readouterr().out.strip())
    assert printed == pytest.approx(
        l2_distance(read_patch(str(fsrc)), got, (0.5, 1.0, 0.0)), rel=1e-12
    )


def test_cli_bad_inputs_exit_2(tmp_path, capsys):
    out = str(tmp_path / "x.txt")
    cases = [
        ["dual-table", "--n", "3", "--alpha", "0.5,oops,0", "--out", out],
        ["dual-table", "--n", "3", "--alpha", "0.5,0", "--out", out],
        ["dual-table", "--n", "-2", "--alpha", "0,0,0", "--out", out],
        ["dual-table", "--n", "2", "--alpha", "0,0,0", "--c", "1,1,1", "--out", out],
        ["eval", "--in", str(tmp_path / "absent.txt"), "--at", "0.3,0.3"],
        ["reduce", "--in", str(tmp_path / "absent.txt"), "--m", "1",
         "--alpha", "0,0,0", "--out", out],
    ]
    for argv in cases:
        assert main(argv) == 2, argv
        assert capsys.readouterr().err.startswith("error:")


def test_cli_failed_check_exits_3(tmp_path, capsys, monkeypatch):
    import dualbern.cli as cli

    monkeypatch.setattr(cli, "duality_residual", lambda *a, **k: (1.0, 1.0))
    rc = main(
        ["dual-table", "--n", "2", "--alpha", "0,0,0",
         "--out", str(tmp_path / "t.txt"), "--check", "gram"]
    )
    assert rc == 3
    assert "error:" in capsys.readouterr().err


def test_cli_version_and_usage():
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    with pytest.raises(SystemExit) as exc:
        main([])  # a subcommand is required
    assert exc.value.code == 2
