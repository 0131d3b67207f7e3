import pytest

from herzog.collapse import Graph
from herzog.errors import ParseError
from herzog.io import (
    InputMismatchError,
    complex_from_json,
    format_ideal_file,
    graph_to_json,
    parse_ideal_text,
    sweep_from_json,
)
from herzog.poly import DEGREVLEX, GF, LEX, QQ
from herzog.simplicial import SimplicialComplex


def test_headers_and_comments():
    f = parse_ideal_text("# conic\nvars: 3\norder: degrevlex\nfield: Fp:5\nX0*X2 - X1^2  # the only equation\n")
    assert f.field == GF(5) and f.order == DEGREVLEX and f.ring.nvars == 3
    assert [str(g) for g in f.ideal.generators] == ["X0*X2 + 4*X1^2"]


def test_defaults_and_inferred_vars():
    f = parse_ideal_text("X0*X3 - X1*X2\n")
    assert f.field == QQ and f.order == LEX and f.ring.nvars == 4


def test_flags_fill_missing_headers():
    f = parse_ideal_text("X0*X1\n", field=GF(3), order=DEGREVLEX)
    assert f.field == GF(3) and f.order == DEGREVLEX


@pytest.mark.parametrize("text,kw,names", [
    ("field: QQ\nX0\n", {"field": GF(2)}, ("QQ", "Fp:2")),
    ("order: lex\nX0\n", {"order": DEGREVLEX}, ("lex", "degrevlex")),
])
def test_mismatch_names_both_sides(text, kw, names):
    with pytest.raises(InputMismatchError) as e:
        parse_ideal_text(text, source="in.ideal", **kw)
    msg = str(e.value)
    assert all(n in msg for n in names) and "in.ideal" in msg


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_ideal_text("vars: 2\nX0*X1\nX0 $ X1\n", source="bad.ideal")
    assert (e.value.line, e.value.column) == (3, 4)


def test_header_after_body():
    with pytest.raises(ParseError):
        parse_ideal_text("X0\nvars: 2\n")


def test_bad_field_header():
    with pytest.raises(ParseError) as e:
        parse_ideal_text("field: Fp:4\nX0\n")
    assert e.value.column == 8


def test_round_trip():
    f = parse_ideal_text("vars: 4\norder: lex\nfield: Fp:3\nX0*X2 + 2*X3^2\n")
    text = format_ideal_file(f.ideal.generators, f.order, f.field, f.ring.nvars)
    g = parse_ideal_text(text)
    assert g.ideal.generators == f.ideal.generators and g.field == f.field


def test_hash_is_of_the_text():
    assert parse_ideal_text("X0\n").sha256 != parse_ideal_text("X0 \n").sha256


def test_complex_json():
    G = complex_from_json({"n": 3, "edges": [[0, 1], [1, 2]]})
    assert G == Graph(4, [(0, 1), (1, 2)])
    assert graph_to_json(G) == {"n": 3, "edges": [[0, 1], [1, 2]]}
    D = complex_from_json({"n": 2, "facets": [[0, 1, 2]]})
    assert D == SimplicialComplex.simplex(3)


@pytest.mark.parametrize("obj", [[], {"edges": []}, {"n": -1, "edges": []}, {"n": 2},
                                 {"n": 1, "edges": [[0, 5]]}])
def test_complex_json_errors(obj):
    with pytest.raises(ParseError):
        complex_from_json(obj)


def test_sweep_config():
    fam = sweep_from_json({"complex": {"n": 2, "edges": [[0, 1], [1, 2], [0, 2]]}, "field": "Fp:3",
                           "sampler": {"seed": 4, "count": 10}})
    assert fam.mode == "random" and fam.count == 10 and fam.seed == 4 and fam.field == GF(3)
    with pytest.raises(ParseError):
        sweep_from_json({"complex": {"n": 1, "edges": [[0, 1]]}, "sampler": {}})
    with pytest.raises(InputMismatchError):
        sweep_from_json({"complex": {"n": 1, "edges": [[0, 1]]}, "field": "QQ"}, field=GF(2))
