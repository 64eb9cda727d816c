"""Command-line interface: ``reebcx <command> INPUT [options]``.

Every run prints one JSON document.  Exit status is 0 on success, 1 when a
requested verification fails and 2 when the input or options are invalid.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .cech import build_cover, first_page, nerve_row, prepare_cover, second_page_two_column
from .complex import CutComplex, Filtration, cut_at_levels
from .errors import ReebError
from .homology import betti_numbers
from .linalg import parse_field
from .persistence import cut_telescope, persistence_direct, verify_ladder
from .reeb import adjacent_slabs, homology_of_base, reeb_levels, truncated_reeb, verify_diamond
from .zigzag import barcode, critical_cover, levelset_zigzag

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2


def _config(args) -> dict:
    cfg = {"command": args.command, "field": repr(args.field_obj), "max_degree": args.max_degree}
    for key in ("levels", "intervals", "check"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _top_degree(args, K) -> int:
    return args.max_degree if args.max_degree is not None else max(K.dim, 0)


def _extra_levels(args) -> list:
    return io.parse_levels(args.levels) if getattr(args, "levels", None) else []


def _load_complex(path):
    data = io.load(path)
    if io.is_filtration_data(data):
        raise ReebError("expected a complex (vertices + simplices), got a filtration")
    return io.complex_from_data(data)


def _load_filtration(path) -> Filtration:
    data = io.load(path)
    if not io.is_filtration_data(data):
        raise ReebError("expected a filtration (vertices + stages + indices)")
    return io.filtration_from_data(data)


def _reeb_cut(K, extra) -> CutComplex:
    return cut_at_levels(K, sorted(set(reeb_levels(K)) | set(extra)))


def _cover(args, K):
    if getattr(args, "intervals", None):
        return io.parse_intervals(args.intervals)
    return critical_cover(K.height_levels())


# sections of reports, shared between commands


def _reeb_section(C: CutComplex, top: int, F) -> dict:
    degrees, complexes = [], []
    for q in range(top + 1):
        T = truncated_reeb(C, q, F)
        complexes.append(T)
        degrees.append({
            "degree": q,
            "critical_levels": [str(c) for c in T.critical_levels],
            "fiber_dims": T.fiber_dims,
            "sect_dims": T.sect_dims,
            "differential": io.matrix_entries(T.differential),
            "rank": T.rank(),
            "cokernel": T.cokernel_dim(),
            "kernel": T.kernel_dim(),
        })
    return {"degrees": degrees, "betti": homology_of_base(complexes)}


def _diamond_section(C: CutComplex, top: int, F) -> tuple[list, bool]:
    out, ok = [], True
    for a, b in adjacent_slabs(C):
        for q in range(top + 1):
            r = verify_diamond(C, (a, b), q, F)
            ok &= r.passed
            out.append({
                "slab": [str(a), str(b)], "degree": q, "dims": list(r.dims()),
                "rank_first": r.rank_first, "rank_second": r.rank_second,
                "kernel_second": r.kernel_second, "composite_zero": r.composite_zero,
                "exact": r.exact, "passed": r.passed,
                "first": io.matrix_entries(r.first), "second": io.matrix_entries(r.second),
            })
    return out, ok


def _spectral_section(K, cover, top: int, F, extra) -> dict:
    C = prepare_cover(cut_at_levels(K, extra) if extra else K, cover)
    PC = build_cover(C, cover)
    FP = first_page(PC, top, F)
    nerve = nerve_row(PC, top, F)
    return {
        "intervals": cover.str_intervals(),
        "first_page": [{"degree": q, "dims": list(FP.dims(q)), "rank": r,
                        "differential": io.matrix_entries(FP.differentials[q])}
                       for q, r in enumerate(FP.ranks())],
        "betti": second_page_two_column(FP),
        "nerve": {
            "simplices": [list(s) for s in nerve.simplices],
            "betti": list(nerve.betti),
            "homologically_good": nerve.good,
            "checks": [{"pieces": list(i), "betti": list(b), "good": g} for i, b, g in nerve.checks],
        },
    }


def _ladder_section(Fl: Filtration, top: int, F) -> tuple[list, bool]:
    C = cut_telescope(Fl)
    out, ok = [], True
    for q in range(top + 1):
        r = verify_ladder(Fl, q, F, cut=C)
        ok &= r.passed
        out.append({
            "degree": q,
            "verdict": r.verdict,
            "invertibility": r.invertibility,
            "squares_commute": r.commutes,
            "barcodes_equal": r.barcodes_equal,
            "direct_barcode": r.direct.records() if r.direct else [],
            "telescope_barcode": r.via_telescope.records() if r.via_telescope else [],
            "squares": [{"stage": s.stage, "alpha_invertible": s.alpha_invertible,
                         "d1_invertible": s.d1_invertible, "commutes": s.commutes,
                         "inclusion": io.matrix_entries(s.inclusion),
                         "composite": io.matrix_entries(s.composite) if s.composite is not None else None,
                         **({"detail": s.detail} if s.detail else {})} for s in r.squares],
            **({"error": r.error} if r.error else {}),
        })
    return out, ok


# commands


def cmd_homology(args) -> tuple[dict, int]:
    K = _load_complex(args.input)
    extra = _extra_levels(args)
    X = cut_at_levels(K, extra).complex if extra else K
    top = _top_degree(args, K)
    return {"betti": betti_numbers(X, top, args.field_obj), "counts": [X.count(q) for q in range(X.dim + 1)],
            "euler_characteristic": X.euler_characteristic()}, EXIT_OK


def cmd_reeb(args) -> tuple[dict, int]:
    K = _load_complex(args.input)
    F = args.field_obj
    top = _top_degree(args, K)
    C = _reeb_cut(K, _extra_levels(args))
    rep = _reeb_section(C, top, F)
    diamonds, ok = _diamond_section(C, top, F)
    direct = betti_numbers(K, top, F)
    recovered = rep["betti"] == direct
    rep.update({"diamond": diamonds, "direct_betti": direct,
                "verification": {"diamond": ok, "recovery": recovered}})
    return rep, EXIT_OK if ok and recovered else EXIT_FAILED


def cmd_zigzag(args) -> tuple[dict, int]:
    K = _load_complex(args.input)
    F = args.field_obj
    if not K.vertices:
        return {"degrees": []}, EXIT_OK
    cover = _cover(args, K)
    top = _top_degree(args, K)
    C = _reeb_cut(K, _extra_levels(args))
    out = []
    for q in range(top + 1):
        Z = levelset_zigzag(C, cover, q, F)
        inner = Z.interior() if len(Z.dims) > 2 else Z
        out.append({
            "degree": q,
            "labels": [[str(x) if x is not None else None for x in lab] for lab in Z.labels],
            "dims": list(Z.dims),
            "directions": list(Z.directions),
            "ranks": Z.arrow_ranks(),
            "interior_dims": list(inner.dims),
            "interior_ranks": inner.arrow_ranks(),
            "barcode": barcode(Z).records(),
        })
    return {"intervals": cover.str_intervals(), "degrees": out}, EXIT_OK


def cmd_telescope(args) -> tuple[dict, int]:
    Fl = _load_filtration(args.input)
    F = args.field_obj
    top = args.max_degree if args.max_degree is not None else max(Fl.stages[-1].dim, 0)
    ladder, ok = _ladder_section(Fl, top, F)
    mods = []
    for q in range(top + 1):
        P = persistence_direct(Fl, q, F)
        mods.append({"degree": q, "dims": list(P.dims), "ranks": P.ranks()})
    return {"indices": [str(i) for i in Fl.indices], "persistence": mods, "ladder": ladder,
            "verification": {"ladder": ok}}, EXIT_OK if ok else EXIT_FAILED


def cmd_spectral(args) -> tuple[dict, int]:
    K = _load_complex(args.input)
    F = args.field_obj
    top = _top_degree(args, K)
    rep = _spectral_section(K, _cover(args, K), top, F, _extra_levels(args))
    direct = betti_numbers(K, top, F)
    ok = rep["betti"] == direct
    rep.update({"direct_betti": direct, "verification": {"collapse": ok}})
    return rep, EXIT_OK if ok else EXIT_FAILED


COMPLEX_CHECKS = ("diamond", "recovery", "collapse")


def cmd_verify(args) -> tuple[dict, int]:
    data = io.load(args.input)
    F = args.field_obj
    check = args.check
    results: dict = {}
    if io.is_filtration_data(data):
        if check not in ("ladder", "all"):
            raise ReebError(f"check {check!r} needs a complex, got a filtration")
        Fl = io.filtration_from_data(data)
        top = args.max_degree if args.max_degree is not None else max(Fl.stages[-1].dim, 0)
        detail, ok = _ladder_section(Fl, top, F)
        results["ladder"] = {"passed": ok, "detail": detail}
    else:
        if check == "ladder":
            raise ReebError("check 'ladder' needs a filtration (vertices + stages + indices)")
        K = io.complex_from_data(data)
        top = _top_degree(args, K)
        extra = _extra_levels(args)
        direct = betti_numbers(K, top, F)
        wanted = COMPLEX_CHECKS if check == "all" else (check,)
        if "diamond" in wanted or "recovery" in wanted:
            C = _reeb_cut(K, extra)
        if "diamond" in wanted:
            detail, ok = _diamond_section(C, top, F)
            results["diamond"] = {"passed": ok, "detail": detail}
        if "recovery" in wanted:
            betti = _reeb_section(C, top, F)["betti"]
            results["recovery"] = {"passed": betti == direct, "betti": betti, "direct_betti": direct}
        if "collapse" in wanted and K.vertices:
            betti = _spectral_section(K, _cover(args, K), top, F, extra)["betti"]
            results["collapse"] = {"passed": betti == direct, "betti": betti, "direct_betti": direct}
    ok = all(r["passed"] for r in results.values())
    return {"checks": results, "passed": ok}, EXIT_OK if ok else EXIT_FAILED


COMMANDS = {
    "homology": (cmd_homology, "Betti numbers of a complex"),
    "reeb": (cmd_reeb, "truncated Reeb complexes, recovered homology and diamond checks"),
    "zigzag": (cmd_zigzag, "levelset zigzag modules and their barcodes"),
    "telescope": (cmd_telescope, "persistence of a filtration directly and through its telescope"),
    "spectral": (cmd_spectral, "Čech first page of an interval cover and the two-column collapse"),
    "verify": (cmd_verify, "run verification checks only"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reebcx", description="Reeb complexes, levelset zigzags and telescopes "
                                "of PL functions on simplicial complexes, in exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        s = sub.add_parser(name, help=help_, description=help_)
        if name == "verify":
            s.add_argument("check", choices=["diamond", "ladder", "recovery", "collapse", "all"])
        s.add_argument("input", help="JSON input file, or - for standard input")
        s.add_argument("--field", default="QQ", help="QQ (default) or a prime p, e.g. 2 or GF(7)")
        s.add_argument("--max-degree", type=int, default=None, help="highest homological degree (default: dimension)")
        if name != "telescope":
            s.add_argument("--levels", default=None, help="extra cut levels, e.g. 1/4,3/4")
        if name in ("zigzag", "spectral", "verify"):
            s.add_argument("--intervals", default=None,
                           help="open interval cover a:b,c:d,... (default: one overlap per vertex height); "
                                "use --intervals=-1:2 when the first endpoint is negative")
        s.add_argument("--output", "-o", default=None, help="write the report here instead of standard output")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_degree is not None and args.max_degree < 0:
        parser.error("--max-degree must be >= 0")
    try:
        args.field_obj = parse_field(args.field)
    except ValueError as exc:
        parser.error(str(exc))
    handler = COMMANDS[args.command][0]
    try:
        report, code = handler(args)
    except ReebError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        for key in ("level", "simplex", "a", "b", "rank", "shape", "context"):
            if getattr(exc, key, None) is not None:
                err[key] = _plain(getattr(exc, key))
        if getattr(exc, "intervals", None):
            err["intervals"] = [[str(a), str(b)] for a, b in exc.intervals]
        sys.stderr.write(io.dumps(err))
        return EXIT_INVALID
    doc = {"config": _config(args), "result": report}
    text = io.dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (bool, int)) or x is None:
        return x
    return str(x)


if __name__ == "__main__":
    sys.exit(main())
