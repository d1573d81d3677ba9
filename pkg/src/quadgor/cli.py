"""Command-line interface: ``quadgor <command> [options]``.

Exit codes: 0 success, 1 engine error, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
import warnings

from . import __version__
from .errors import ParseError, QuadgorError
from .field import GF, QQ, parse_field
from .groebner import Ideal, minimal_generators
from .parse_io import format_ideal_file, format_polynomial, read_ideal_file, render_betti, report_to_json
from .ring import MonomialOrder

DEFAULT_STEPS = 4
DEFAULT_SLACK = 2


class UsageError(Exception):
    pass


def _field(args, default=None):
    if args.field is None:
        return default if default is not None else GF()
    return parse_field(args.field)


def _with_order(I: Ideal, args) -> Ideal:
    if args.order in (None, "grevlex"):
        return I
    ring = I.ring.with_order(MonomialOrder(args.order))
    return Ideal(ring, [g.change_ring(ring, list(range(ring.n))) for g in I.gens])


def _read(path, args):
    """Read an input file; --field overrides its header, and GF(32003) is the fallback."""
    if args.field:
        data = read_ideal_file(path, parse_field(args.field))
    else:
        data = read_ideal_file(path)
        if "field" not in data.header:
            data = read_ideal_file(path, GF())
    args.resolved_field = data.ring.field.spec()
    return data


def _load_ideal(path, args) -> Ideal:
    if path is None:
        raise UsageError("an --ideal file is required")
    data = _read(path, args)
    return _with_order(Ideal(data.ring, data.generators), args)


def _gens_text(gens):
    return [format_polynomial(g) for g in gens]


def _betti_block(table):
    return {"table": table.to_json(), "text": render_betti(table)}


# --- commands -----------------------------------------------------------------

def cmd_family(args) -> dict:
    from .inverse import annihilator, family_F
    from .koszul import cyclic_obstruction, koszul_certificate, syzygy_obstruction
    from .resolution import betti_table, gorenstein_diagnostics
    if args.c is None:
        raise UsageError("family needs --c")
    fld = _field(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        F = family_F(args.c, fld)
    I = _with_order(annihilator(F), args)
    gens = minimal_generators(I)
    counts = {}
    for g in gens:
        counts[g.degree()] = counts.get(g.degree(), 0) + 1
    out = {"inverse_polynomial": str(F), "generator_counts": {str(d): k for d, k in sorted(counts.items())}}
    if args.c < 7:
        parts = ", ".join(f"{k} of degree {d}" for d, k in sorted(counts.items()))
        msg = f"c = {args.c} < 7: the quadratic non-Koszul statements need c >= 7; generators: {parts}"
        print(f"warning: {msg}", file=sys.stderr)
        out["warning"] = msg
    table = betti_table(I)
    out["generators"] = _gens_text(gens)
    out["h_vector"] = I.hilbert().h
    out["betti"] = _betti_block(table)
    out["gorenstein"] = gorenstein_diagnostics(I, table)
    cert = koszul_certificate(I, args.steps, args.slack)
    out["koszul"] = cert.to_json()
    if all(g.degree() == 2 for g in gens):
        w, info = syzygy_obstruction(I)
        out["syzygy_obstruction"] = {"witness": None if w is None else [format_polynomial(f) for f in w.coords],
                                     **info}
    if args.c >= 7:
        cyc = cyclic_obstruction(I)
        out["cyclic_syzygy"] = {"sum_is_zero": cyc["sum_is_zero"], "in_z4": cyc["in_z4"],
                                "colon_linear_part": _gens_text(cyc["colon_linear_part"])}
    if args.c == 7:
        b = cert.betti.get((3, 4))
        out["beta_R_3_4"] = {"computed": b, "reference": 1, "agrees": b == 1,
                             "comparison": "via Artinian reduction of the toric ring"}
    return out


def cmd_example_g6(args) -> dict:
    from .inverse import annihilator, dual_module, example_G
    from .koszul import degree2_betti_bound, koszul_certificate
    from .resolution import betti_table, gorenstein_diagnostics
    fld = _field(args, QQ)
    G = example_G(fld)
    I = _with_order(annihilator(G), args)
    gens = minimal_generators(I)
    table = betti_table(I)
    diag = gorenstein_diagnostics(I, table)
    h = I.hilbert().h
    bound = degree2_betti_bound(I, table)
    cert = koszul_certificate(I, args.steps, args.slack)
    quadratic = all(g.degree() == 2 for g in gens)
    return {
        "inverse_polynomial": str(G),
        "generators": _gens_text(gens),
        "h_vector": h,
        "betti": _betti_block(table),
        "gorenstein": diag,
        "dual_generators": [str(x) for x in dual_module(I)],
        "degree2_bound": bound,
        "koszul": cert.to_json(),
        "quadratic_gorenstein_with_h_1_6_12_6_1": quadratic and diag["gorenstein"] and h == [1, 6, 12, 6, 1],
    }


def cmd_grid(args) -> dict:
    from .grid import build_witness, render_grid, status_grid
    cells = status_grid(args.c_max, args.r_max)
    out = {"text": render_grid(cells, args.c_max, args.r_max)}
    if args.json:
        out["cells"] = [x.to_json() for x in cells]
    else:
        out["witnesses"] = [f"({x.c}, {x.r}): {x.witness_text()}" for x in cells if x.witness]
    if args.verify:
        checks = []
        for x in cells:
            if x.witness is None:
                continue
            I = build_witness(x, _field(args))
            h = I.hilbert().h
            checks.append({"c": x.c, "r": x.r, "codim": len(h) > 1 and h[1], "regularity": len(h) - 1,
                           "gorenstein_h": h == h[::-1],
                           "ok": h[1] == x.c and len(h) - 1 == x.r and h == h[::-1]})
        out["verified"] = checks if args.json else [
            f"({x['c']}, {x['r']}): codim {x['codim']}, regularity {x['regularity']}, ok {x['ok']}" for x in checks]
    return out


def cmd_ann(args) -> dict:
    from .inverse import InversePolynomial, annihilator
    if args.input is None:
        raise UsageError("ann needs --input")
    data = _read(args.input, args)
    if len(data.generators) != 1:
        raise UsageError("an inverse-system file holds exactly one polynomial")
    I = annihilator(InversePolynomial(data.generators[0]))
    return {"generators": _gens_text(minimal_generators(I)), "h_vector": I.hilbert().h,
            "ideal_file": format_ideal_file(I.ring, minimal_generators(I))}


def cmd_res(args) -> dict:
    from .resolution import free_resolution
    I = _load_ideal(args.ideal, args)
    R = free_resolution(I, args.length)
    return {"betti": _betti_block(R.betti()), "complex": R.check_complex(), "minimal": R.check_minimal(),
            "ranks": [m.rank for m in R.modules]}


def cmd_betti(args) -> dict:
    from .resolution import betti_table, gorenstein_diagnostics, regularity_bound_check
    I = _load_ideal(args.ideal, args)
    table = betti_table(I, args.method)
    out = {"betti": _betti_block(table), "regularity": table.regularity, "pd": table.pd,
           "gorenstein": gorenstein_diagnostics(I, table)}
    out["regularity_bound"] = regularity_bound_check(I, table)
    return out


def cmd_hilbert(args) -> dict:
    I = _load_ideal(args.ideal, args)
    h = I.hilbert()
    return {"hilbert": h.to_json(), "series": h.series_text()}


def cmd_link(args) -> dict:
    from .construct import link
    if args.ci is None:
        raise UsageError("link needs --ci")
    L = _load_ideal(args.ci, args)
    I = _load_ideal(args.ideal, args)
    if L.ring.names != I.ring.names:
        raise UsageError("--ci and --ideal must use the same ring")
    L = Ideal(I.ring, [g.change_ring(I.ring, list(range(I.ring.n))) for g in L.gens])
    J, report = link(L, I, check_involution=args.involution)
    out = {"report": report}
    if J is not None:
        out["linked_generators"] = _gens_text(minimal_generators(J))
    return out


def cmd_pfaffian(args) -> dict:
    from .construct import DeviationTwoSpec, build_deviation_two, random_deviation_two, submaximal_pfaffians
    if args.input is not None:
        data = _read(args.input, args)
        if data.matrix is None:
            raise UsageError("the input file has no 'alternating' block")
        M, extra = data.matrix, data.generators
        if M.size != 5:
            return {"pfaffians": _gens_text(submaximal_pfaffians(M))}
        spec = DeviationTwoSpec(M, extra, None)
    else:
        if args.c is None:
            raise UsageError("pfaffian needs --input or --c")
        spec = random_deviation_two(args.c, args.seed, _field(args))
    I, rep = build_deviation_two(spec, with_betti=True)
    from .resolution import betti_table
    return {"pfaffians": _gens_text(submaximal_pfaffians(spec.M)), "c": spec.c,
            "validity": rep.to_json(), "ok": rep.ok, "betti": _betti_block(betti_table(I)),
            "ideal_file": format_ideal_file(I.ring, I.gens, spec.M)}


def cmd_koszul(args) -> dict:
    from .koszul import degree2_betti_bound, koszul_certificate, syzygy_obstruction
    I = _load_ideal(args.ideal, args)
    cert = koszul_certificate(I, args.steps, args.slack)
    out = {"certificate": cert.to_json()}
    if all(g.degree() == 2 for g in minimal_generators(I)):
        w, info = syzygy_obstruction(I)
        out["syzygy_obstruction"] = {"witness": None if w is None else [format_polynomial(f) for f in w.coords],
                                     **info}
        out["degree2_bound"] = degree2_betti_bound(I)
    return out


def cmd_tensor(args) -> dict:
    from .construct import tensor_product
    if args.ideal2 is None:
        raise UsageError("tensor needs --ideal and --ideal2")
    I = _load_ideal(args.ideal, args)
    J = _load_ideal(args.ideal2, args)
    T = tensor_product(I, J)
    return {"generators": _gens_text(T.gens), "h_vector": T.hilbert().h,
            "ideal_file": format_ideal_file(T.ring, T.gens)}


COMMANDS = {
    "family": cmd_family, "example-g6": cmd_example_g6, "grid": cmd_grid, "ann": cmd_ann,
    "res": cmd_res, "betti": cmd_betti, "hilbert": cmd_hilbert, "link": cmd_link,
    "pfaffian": cmd_pfaffian, "koszul": cmd_koszul, "tensor": cmd_tensor,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None, help="q or gf:<p> (default gf:32003; example-g6 uses q)")
    common.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    common.add_argument("--steps", type=int, default=DEFAULT_STEPS, help="homological steps for Koszul tests")
    common.add_argument("--slack", type=int, default=DEFAULT_SLACK, help="internal-degree slack for Koszul tests")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--out", default=None, help="write output to this path")

    p = argparse.ArgumentParser(prog="quadgor", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"quadgor {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("family", parents=[common], help="the cyclic inverse-system family")
    s.add_argument("--c", type=int)
    sub.add_parser("example-g6", parents=[common], help="the six-variable modified example")
    s = sub.add_parser("grid", parents=[common], help="Koszulness status by codimension and regularity")
    s.add_argument("--c-max", type=int, default=11)
    s.add_argument("--r-max", type=int, default=11)
    s.add_argument("--verify", action="store_true", help="build each witness and check its h-vector")
    s = sub.add_parser("ann", parents=[common], help="annihilator of an inverse polynomial")
    s.add_argument("--input")
    s = sub.add_parser("res", parents=[common], help="minimal free resolution")
    s.add_argument("--ideal")
    s.add_argument("--length", type=int, default=None)
    s = sub.add_parser("betti", parents=[common], help="graded Betti table and diagnostics")
    s.add_argument("--ideal")
    s.add_argument("--method", default="auto", choices=["auto", "koszul", "resolution"])
    s = sub.add_parser("hilbert", parents=[common], help="Hilbert series and h-vector")
    s.add_argument("--ideal")
    s = sub.add_parser("link", parents=[common], help="link by a quadratic complete intersection")
    s.add_argument("--ci")
    s.add_argument("--ideal")
    s.add_argument("--involution", action="store_true")
    s = sub.add_parser("pfaffian", parents=[common], help="Pfaffian ideals and deviation-two instances")
    s.add_argument("--input")
    s.add_argument("--c", type=int)
    s = sub.add_parser("koszul", parents=[common], help="Koszulness certificate")
    s.add_argument("--ideal")
    s = sub.add_parser("tensor", parents=[common], help="tensor product of two quotients")
    s.add_argument("--ideal")
    s.add_argument("--ideal2")
    return p


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "out", "resolved_field")}
    return cfg


def _text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in report.items():
        if isinstance(v, dict) and "text" in v and "table" in v:
            lines.append(f"{pad}{k}:")
            lines.extend(pad + "  " + row for row in v["text"].rstrip("\n").splitlines())
        elif k == "text":
            lines.extend(pad + row for row in str(v).splitlines())
        elif isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], str) and len(v) > 4:
            lines.append(f"{pad}{k}:")
            lines.extend(f"{pad}  {x}" for x in v)
        elif isinstance(v, str) and "\n" in v:
            lines.append(f"{pad}{k}:")
            lines.extend(pad + "  " + row for row in v.rstrip("\n").splitlines())
        else:
            lines.append(f"{pad}{k}: {_scalar(v)}")
    return "\n".join(x for x in lines if x != "")


def _scalar(v):
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_scalar(x) for x in v) + ")"
    if hasattr(v, "to_json"):
        return _scalar(v.to_json())
    return str(v)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        body = COMMANDS[args.command](args)
    except (UsageError, ParseError, FileNotFoundError) as exc:
        print(f"quadgor {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (QuadgorError, ValueError, ArithmeticError) as exc:
        print(f"quadgor {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    config = _config(args)
    config["field"] = getattr(args, "resolved_field", None) or _field(
        args, QQ if args.command == "example-g6" else None).spec()
    report = {"command": args.command, "config": config, "version": __version__, "result": body}
    text = report_to_json(report) if args.json else _text(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
