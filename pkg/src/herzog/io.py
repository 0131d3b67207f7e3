"""Readers for ideal files, complex/graph JSON and sweep configurations."""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path

from .collapse import Graph
from .errors import ParseError
from .groebner import DEFAULT_DEGREE_CEILING, Ideal
from .geometry import DEFAULT_POWER_BOUND
from .poly import LEX, QQ, Field, MonomialOrder, PolyRing, parse_polynomial
from .simplicial import SimplicialComplex

_HEADER = re.compile(r"^\s*(vars|order|field)\s*:\s*(.*?)\s*$")
_VAR = re.compile(r"X(\d+)")


class InputMismatchError(ParseError):
    """A command-line flag contradicts a file header."""


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass
class IdealFile:
    ideal: Ideal
    order: MonomialOrder
    field: Field
    sha256: str
    source: str

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring


def _resolve(name: str, header, flag, source, line):
    """Combine a header value and a flag value, rejecting contradictions."""
    if header is not None and flag is not None and header != flag:
        h = header.name
        f = flag.name
        raise InputMismatchError(f"{name} mismatch: file header says {h}, command line says {f}", source, line, 1)
    return header if header is not None else flag


def parse_ideal_text(text: str, source: str = "<string>", field: Field | None = None,
                     order: MonomialOrder | None = None) -> IdealFile:
    """Parse an ideal file.

    Lines are polynomials, ``#`` starts a comment, and the optional headers
    ``vars: N`` (number of variables), ``order: lex|degrevlex`` and
    ``field: QQ|Fp:<p>`` may appear before the first polynomial.  Flags that
    are None defer to the header; otherwise they must agree with it.  With
    neither, the field is QQ and the order lex.
    """
    headers: dict = {}
    header_line: dict = {}
    body = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        m = _HEADER.match(content)
        if m:
            key, val = m.groups()
            if body:
                raise ParseError(f"header '{key}' after the first polynomial", source, lineno, 1)
            if key in headers:
                raise ParseError(f"duplicate header '{key}'", source, lineno, 1)
            col = m.start(2) + 1
            try:
                if key == "vars":
                    if not val.isdigit() or int(val) < 1:
                        raise ValueError(f"expected a positive integer, found {val!r}")
                    headers[key] = int(val)
                elif key == "order":
                    headers[key] = MonomialOrder.parse(val)
                else:
                    headers[key] = Field.parse(val)
            except ValueError as exc:
                raise ParseError(str(exc), source, lineno, col) from None
            header_line[key] = lineno
            continue
        body.append((lineno, content))

    fld = _resolve("field", headers.get("field"), field, source, header_line.get("field", 1))
    ordr = _resolve("order", headers.get("order"), order, source, header_line.get("order", 1))
    fld = fld or QQ
    ordr = ordr or LEX
    nvars = headers.get("vars")
    if nvars is None:
        idx = [int(v) for _, c in body for v in _VAR.findall(c)]
        nvars = max(idx) + 1 if idx else 1
    ring = PolyRing(nvars, fld)
    polys = [parse_polynomial(c, ring, source, lineno) for lineno, c in body]
    return IdealFile(Ideal(ring, polys), ordr, fld, sha256_bytes(text.encode()), source)


def read_ideal_file(path, field: Field | None = None, order: MonomialOrder | None = None) -> IdealFile:
    p = Path(path)
    return parse_ideal_text(p.read_text(), str(p), field, order)


def format_ideal_file(polys, order: MonomialOrder, field: Field, nvars: int) -> str:
    lines = [f"vars: {nvars}", f"order: {order.name}", f"field: {field.name}"]
    lines += [f.to_str(order) for f in polys]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# complexes and graphs: {"n": <largest vertex index>, "facets"|"edges": [...]}


def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, source, exc.lineno, exc.colno) from None


def _vertex_count(obj: dict, source: str) -> int:
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError("'n' must be a non-negative integer (the largest vertex index)", source, 1, 1)
    return n + 1


def complex_from_json(obj, source: str = "<string>"):
    """A SimplicialComplex from ``facets`` or a Graph from ``edges``."""
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", source, 1, 1)
    nv = _vertex_count(obj, source)
    try:
        if "edges" in obj:
            return Graph(nv, [tuple(e) for e in obj["edges"]])
        if "facets" in obj:
            return SimplicialComplex(nv, [frozenset(f) for f in obj["facets"]])
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc), source, 1, 1) from None
    raise ParseError("expected 'facets' or 'edges'", source, 1, 1)


def as_graph(obj, source: str = "<string>") -> Graph:
    if isinstance(obj, Graph):
        return obj
    try:
        return Graph.from_complex(obj)
    except ValueError as exc:
        raise ParseError(str(exc), source, 1, 1) from None


def as_complex(obj) -> SimplicialComplex:
    return obj.to_complex() if isinstance(obj, Graph) else obj


def read_complex_file(path):
    p = Path(path)
    text = p.read_text()
    return complex_from_json(_load_json(text, str(p)), str(p)), sha256_bytes(text.encode())


def graph_to_json(G: Graph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.sorted_edges()]}


# --------------------------------------------------------------------------
# sweep configurations


def sweep_from_json(obj, source: str = "<string>", field: Field | None = None,
                    order: MonomialOrder | None = None):
    """CandidateFamily from {complex, order, field, coeff_grid | sampler{seed, count[, density]}, ...}."""
    from .search import CandidateFamily

    if not isinstance(obj, dict) or "complex" not in obj:
        raise ParseError("sweep configuration needs a 'complex' entry", source, 1, 1)
    graph = as_graph(complex_from_json(obj["complex"], source), source)
    try:
        hf = Field.parse(obj["field"]) if "field" in obj else None
        ho = MonomialOrder.parse(obj["order"]) if "order" in obj else None
    except ValueError as exc:
        raise ParseError(str(exc), source, 1, 1) from None
    fld = _resolve("field", hf, field, source, 1)
    ordr = _resolve("order", ho, order, source, 1) or LEX
    fld = fld or QQ
    kw = dict(
        degree_ceiling=obj.get("degree_ceiling", DEFAULT_DEGREE_CEILING),
        power_bound=obj.get("power_bound", DEFAULT_POWER_BOUND),
    )
    if "max_candidates" in obj:
        kw["max_candidates"] = obj["max_candidates"]
    if "time_budget" in obj:
        kw["time_budget"] = obj["time_budget"]
    if "coeff_grid" in obj:
        kw["coeff_grid"] = tuple(obj["coeff_grid"])
    if "sampler" in obj:
        s = obj["sampler"]
        if not isinstance(s, dict) or not isinstance(s.get("count"), int):
            raise ParseError("'sampler' needs an integer 'count'", source, 1, 1)
        kw.update(mode="random", seed=s.get("seed", 0), count=s["count"], density=s.get("density"))
    else:
        kw["mode"] = "exhaustive"
    return CandidateFamily(graph, ordr, fld, **kw)


def read_sweep_file(path, field: Field | None = None, order: MonomialOrder | None = None):
    p = Path(path)
    text = p.read_text()
    return sweep_from_json(_load_json(text, str(p)), str(p), field, order), sha256_bytes(text.encode())
