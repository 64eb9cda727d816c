"""JSON formats for complexes, filtrations and reports.

Complex::

    {"vertices": [{"id": "a", "height": "1/2"}, ...],
     "simplices": [["a", "b", "c"], ...]}

Filtration::

    {"vertices": [{"id": "a"}, ...],
     "stages": [[["a"]], [["a", "b"]], ...],
     "indices": [0, 1, ...]}

Heights and indices are integers or strings (``"p/q"`` or decimals).  JSON
float literals are rejected so that nothing passes through binary floating
point.  Simplices are maximal faces; the face closure is added on load.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .complex import Filtration, SimplicialComplex, as_rational
from .errors import FaceClosureError, ParseError
from .linalg import Matrix
from .zigzag import IntervalCover


def _reject_float(text):
    raise ParseError(f"floating point literal {text} rejected; write heights as integers or strings like \"1/2\"")


def loads(text: str):
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load(path) -> object:
    """Parse a JSON file; ``"-"`` reads standard input."""
    if str(path) == "-":
        return loads(sys.stdin.read())
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"{where}: expected an integer or a rational string, got {x!r}")
    try:
        return as_rational(x)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: cannot parse {x!r} as a rational") from None


def _vertex_id(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"{where}: vertex ids must be integers or strings, got {x!r}")
    return x


def _vertices(data, need_height: bool):
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    raw = data.get("vertices")
    if not isinstance(raw, list):
        raise ParseError("'vertices' must be a list")
    ids, heights = [], {}
    for i, v in enumerate(raw):
        where = f"vertices[{i}]"
        if not isinstance(v, dict) or "id" not in v:
            raise ParseError(f"{where}: expected an object with an 'id'")
        vid = _vertex_id(v["id"], where)
        if vid in heights:
            raise ParseError(f"{where}: duplicate vertex id {vid!r}")
        if "height" in v:
            heights[vid] = rational(v["height"], f"{where}.height")
        elif need_height:
            raise ParseError(f"{where}: vertex {vid!r} has no height")
        else:
            heights[vid] = Fraction(0)
        ids.append(vid)
    return ids, heights


def _simplices(raw, known, where: str) -> list[tuple]:
    if not isinstance(raw, list):
        raise ParseError(f"{where} must be a list of vertex-id lists")
    out = []
    for j, s in enumerate(raw):
        loc = f"{where}[{j}]"
        if not isinstance(s, list) or not s:
            raise ParseError(f"{loc}: a simplex is a nonempty list of vertex ids")
        for v in s:
            _vertex_id(v, loc)
            if v not in known:
                raise FaceClosureError(f"{loc}: simplex {s} uses undeclared vertex {v!r}")
        if len(set(s)) != len(s):
            raise FaceClosureError(f"{loc}: simplex {s} repeats a vertex")
        out.append(tuple(s))
    return out


def complex_from_data(data) -> SimplicialComplex:
    ids, heights = _vertices(data, need_height=True)
    simps = _simplices(data.get("simplices", []), heights, "simplices")
    simps += [(v,) for v in ids]
    return SimplicialComplex.from_maximal(simps, heights, vertices=ids)


def complex_to_data(K: SimplicialComplex) -> dict:
    return {
        "vertices": [{"id": _jsonable(v), "height": str(K.heights[v])} for v in K.vertices],
        "simplices": [[_jsonable(v) for v in s] for s in K.maximal_simplices()],
    }


def filtration_from_data(data) -> Filtration:
    ids, heights = _vertices(data, need_height=False)
    raw = data.get("stages")
    if not isinstance(raw, list) or not raw:
        raise ParseError("'stages' must be a nonempty list of simplex lists")
    stages = []
    for k, st in enumerate(raw):
        simps = _simplices(st, heights, f"stages[{k}]")
        used = {v for s in simps for v in s}
        vs = [v for v in ids if v in used]
        stages.append(SimplicialComplex.from_maximal(simps, {v: heights[v] for v in vs}, vertices=vs))
    idx = data.get("indices", list(range(len(stages))))
    if not isinstance(idx, list):
        raise ParseError("'indices' must be a list")
    return Filtration(tuple(stages), tuple(rational(x, f"indices[{k}]") for k, x in enumerate(idx)))


def filtration_to_data(F: Filtration) -> dict:
    last = F.stages[-1]
    return {
        "vertices": [{"id": _jsonable(v)} for v in last.vertices],
        "stages": [[[_jsonable(v) for v in s] for s in X.maximal_simplices()] for X in F.stages],
        "indices": [str(i) for i in F.indices],
    }


def is_filtration_data(data) -> bool:
    return isinstance(data, dict) and "stages" in data


def parse_levels(text: str) -> list[Fraction]:
    """``"0,1/2,1"`` -> sorted distinct rationals."""
    out = set()
    for part in filter(None, (p.strip() for p in text.split(","))):
        out.add(rational(part, "--levels"))
    return sorted(out)


def parse_intervals(text: str) -> IntervalCover:
    """``"-1:3/4,1/4:2"`` -> an :class:`IntervalCover` of open intervals."""
    ivs = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if part.count(":") != 1:
            raise ParseError(f"--intervals: expected 'a:b', got {part!r}")
        a, b = part.split(":")
        ivs.append((rational(a.strip(), "--intervals"), rational(b.strip(), "--intervals")))
    if not ivs:
        raise ParseError("--intervals: no interval given")
    return IntervalCover(tuple(ivs))


def bundled(name: str) -> SimplicialComplex:
    """Load a complex shipped with the package (e.g. ``"pinched_cylinder"``)."""
    text = resources.files("reebcx").joinpath("data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return complex_from_data(loads(text))


# report helpers


def _jsonable(v):
    return v if isinstance(v, (int, str)) and not isinstance(v, bool) else str(v)


def matrix_entries(M: Matrix) -> list[list[str]]:
    return [[M.field.render(x) for x in row] for row in M.to_rows()]


def dumps(report) -> str:
    """Deterministic rendering: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
