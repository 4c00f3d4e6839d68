import json

import pytest
from click.testing import CliRunner
from hypothesis import given, strategies as st

from crossed_forge import INF, CocycleProfile, CrossedSystem, Holder, KleinBottle, TwistedFinite, TwistedInfinite, cyclic_table
from crossed_forge.cli import main
from crossed_forge.errors import ParseError, SemanticError
from crossed_forge.textio import format_construct, parse_construct

WORKED = "m = 3\nn = inf\nphi = [0,1,1]\n"


def run(tmp_path, *args, files=None):
    runner = CliRunner()
    with runner.isolated_filesystem(temp_dir=tmp_path):
        for name, text in (files or {}).items():
            with open(name, "w") as fh:
                fh.write(text)
        return runner.invoke(main, list(args))


def test_parse_examples():
    assert parse_construct("family = holder(n=4, m=2, i=2, j=3)") == Holder(4, 2, 2, 3)
    assert parse_construct(WORKED) == CocycleProfile(3, INF, (0, 1, 1))
    assert parse_construct("family = klein_bottle") == KleinBottle()
    assert parse_construct("family = twisted(n=inf, m=3, phi=[0,1,1])") == TwistedInfinite(3, (0, 1, 1))
    assert parse_construct("group = cyclic(5)  # comment") == cyclic_table(5)


def test_semantic_error_phi():
    with pytest.raises(SemanticError) as info:
        parse_construct("m = 2\nn = 3\nphi = [1,0]")
    assert info.value.line == 3


@pytest.mark.parametrize("text", ["m = 3\nm = 4", "family = holder(n=4", "x = 1", "family = 1 + 2", "no equals"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_construct(text)


ROUNDTRIP = [
    Holder(4, 2, 2, 3),
    KleinBottle(),
    TwistedFinite(2, 2, (0, 1)),
    TwistedInfinite(3, (0, -1, 4)),
    CocycleProfile(3, INF, (0, 1, 1)),
    CocycleProfile(4, 5, (0, 1, 2, 3)),
    CrossedSystem(cyclic_table(3), cyclic_table(2), [[0, 1, 2], [0, 2, 1]], [[0, 0], [0, 0]]),
    Holder(4, 2, 2, 3).to_table(),
]


@pytest.mark.parametrize("obj", ROUNDTRIP, ids=lambda o: type(o).__name__)
def test_format_roundtrip(obj):
    assert parse_construct(format_construct(obj)) == obj


@given(st.integers(2, 6), st.integers(2, 6), st.data())
def test_profile_roundtrip_property(m, n, data):
    rest = data.draw(st.lists(st.integers(0, n - 1), min_size=m - 1, max_size=m - 1))
    p = CocycleProfile(m, n, (0, *rest))
    assert parse_construct(format_construct(p)) == p


def test_cli_classify_worked(tmp_path):
    r = run(tmp_path, "classify", "p.txt", files={"p.txt": WORKED})
    assert r.exit_code == 0 and "witness: (0, 2)" in r.output
    r = run(tmp_path, "--format", "json", "classify", "p.txt", files={"p.txt": WORKED})
    data = json.loads(r.output)
    assert data["cyclic"] is True and data["witness"] == [0, 2]
    assert parse_construct(data["input"]) == TwistedInfinite(3, (0, 1, 1))


def test_cli_cocycles_cyclic_only(tmp_path):
    r = run(tmp_path, "--format", "json", "cocycles", "enumerate", "--m", "2", "--n", "2", "--cyclic-only")
    assert r.exit_code == 0
    assert [row["phi"] for row in json.loads(r.output)["profiles"]] == [[0, 1]]


def test_cli_iso(tmp_path):
    files = {"a.txt": "family = twisted(n=2, m=2, phi=[0,1])", "b.txt": "family = holder(n=2, m=2, i=1, j=1)"}
    r = run(tmp_path, "iso", "a.txt", "b.txt", files=files)
    assert r.exit_code == 0 and "isomorphic" in r.output
    files["c.txt"] = "group = klein_four"
    assert run(tmp_path, "iso", "a.txt", "c.txt", files=files).exit_code == 1


def test_cli_exit_codes(tmp_path):
    files = {
        "q8.txt": "family = holder(n=4, m=2, i=2, j=3)",
        "bad.txt": "family = holder(n=4,",
        "badphi.txt": "m = 2\nn = 3\nphi = [1, 0]",
        "sys.txt": "H = cyclic(2)\nG = cyclic(2)\nalpha = [[0,1],[0,1]]\nf = [[1,1],[1,0]]",
    }
    assert run(tmp_path, "classify", "q8.txt", files=files).exit_code == 1
    assert run(tmp_path, "classify", "bad.txt", files=files).exit_code == 2
    assert run(tmp_path, "classify", "missing.txt", files=files).exit_code == 2
    assert run(tmp_path, "validate", "q8.txt", files=files).exit_code == 0
    assert run(tmp_path, "validate", "badphi.txt", files=files).exit_code == 1
    assert run(tmp_path, "validate", "sys.txt", files=files).exit_code == 1
    assert run(tmp_path, "--budget", "0", "oracle", "enumerate", "--h", "2", "--g", "2").exit_code == 3
    assert run(tmp_path, "--budget", "3", "cocycles", "enumerate", "--m", "3", "--n", "3").exit_code == 3


def test_cli_product_generator_extract(tmp_path):
    files = {"q8.txt": "family = holder(n=4, m=2, i=2, j=3)", "p.txt": WORKED,
             "s.txt": "H = cyclic(2)\nG = cyclic(2)\nalpha = [[0,1],[0,1]]\nf = [[0,0],[0,1]]"}
    r = run(tmp_path, "--format", "json", "product", "q8.txt", "--order-profile", files=files)
    assert json.loads(r.output)["order_profile"] == [1, 2, 4, 4, 4, 4, 4, 4]
    r = run(tmp_path, "generator", "p.txt", files=files)
    assert r.exit_code == 0 and r.output.strip() == "(0, 2)"
    assert run(tmp_path, "generator", "q8.txt", files=files).exit_code == 1
    r = run(tmp_path, "extract", "--group", "q8.txt", "--normal", "0,2,4,6", "--transversal", "0,1", files=files)
    assert r.exit_code == 0
    sys = parse_construct(r.output)
    assert isinstance(sys, CrossedSystem) and sys.H.order == 4
    assert run(tmp_path, "extract", "--group", "q8.txt", "--normal", "0,2", files=files).exit_code == 2
    r = run(tmp_path, "classify", "s.txt", files=files)
    assert r.exit_code == 0 and "witness" in r.output


def test_cli_oracle(tmp_path):
    r = run(tmp_path, "oracle", "sweep", "--max-order", "8")
    assert r.exit_code == 0 and "failures=0" in r.output
    r = run(tmp_path, "--format", "json", "oracle", "enumerate", "--h", "2", "--g", "2")
    lines = [json.loads(x) for x in r.output.splitlines()]
    systems = [x for x in lines if "system" in x]
    assert len(systems) == 2
    for x in systems:
        assert isinstance(parse_construct(x["system"]), CrossedSystem)
