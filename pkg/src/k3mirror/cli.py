"""Single command-line entry point.

Every subcommand prints one JSON object {status, payload} on stdout; exact
quantities are decimal or "p/q" strings, monodromy matrices are [re, im]
pairs.  Exit codes: 0 for pass/value, 1 for a failed verification, 2 for a
usage error.  Output is byte-deterministic for fixed inputs on the exact
paths; --timing adds the elapsed-milliseconds field for humans.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import discriminant as disc_mod
from . import lattices, modular, mukai, picard_fuchs


@dataclass
class CommandResult:
    status: str          # "pass" | "fail" | "value"
    payload: object
    elapsed_ms: float


def _fail(operation: str, inputs, expected, got) -> dict:
    return {"operation": operation, "inputs": inputs,
            "expected": expected, "got": got}


def _lattice_by_name(name: str, n: int | None):
    return lattices.make_standard(name, n)


def _cmd_lattice(args) -> tuple[str, object]:
    lat = _lattice_by_name(args.name, args.n)
    p, q = lattices.signature(lat)
    payload = lattices.lattice_to_obj(lat)
    payload.update(signature=[p, q], even=lat.is_even, determinant=str(lat.determinant))
    return "value", payload


def _cmd_disc(args) -> tuple[str, object]:
    group = disc_mod.discriminant_group(_lattice_by_name(args.name, args.n))
    return "value", {
        "invariant_factors": list(group.invariant_factors),
        "qvals": [str(v) for v in group.qvals],
        "order": str(group.order),
    }


def _parse_triple(text: str):
    parts = [int(p) for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError("expected r,m,s with a rank-one degree-2 part")
    return parts


def _cmd_mukai(args) -> tuple[str, object]:
    if args.degree % 2 or args.degree <= 0:
        raise ValueError("degree must be a positive even integer")
    ctx = mukai.rank_one_context(args.degree // 2)
    if args.mukai_op == "pair":
        r1, m1, s1 = _parse_triple(args.v)
        r2, m2, s2 = _parse_triple(args.w)
        val = mukai.mukai_pairing(mukai.MukaiVector(ctx, r1, (m1,), s1),
                                  mukai.MukaiVector(ctx, r2, (m2,), s2))
        return "value", val
    if args.mukai_op == "normalize":
        r1, m1, s1 = _parse_triple(args.v)
        r2, m2, s2 = _parse_triple(args.u)
        word, v2, u2 = mukai.normalize_mukai_vector(
            ctx,
            mukai.MukaiVector(ctx, r1, (m1,), s1),
            mukai.MukaiVector(ctx, r2, (m2,), s2))
        return "value", {
            "word": [mukai.action_to_obj(a) for a in word],
            "v": mukai.mukai_vector_to_obj(v2),
            "u": mukai.mukai_vector_to_obj(u2),
        }
    raise ValueError(f"unknown mukai operation {args.mukai_op!r}")


def _cmd_fm_partners(args) -> tuple[str, object]:
    return "value", modular.fm_partner_count(args.degree)


def _cmd_monodromy_index(args) -> tuple[str, object]:
    n = args.n
    via_chain = modular.monodromy_index(n)
    via_primes = modular.fm_partner_count(2 * n)
    if via_chain != via_primes:
        return "fail", _fail("monodromy-index", {"n": n},
                             {"factorization": via_primes}, {"chain": via_chain})
    return "value", via_chain


def _cmd_verify_table1(_args) -> tuple[str, object]:
    report = modular.verify_degree12(6)
    return ("pass" if report.passed else "fail"), report.to_obj()


def _cmd_verify_glue(args) -> tuple[str, object]:
    n = args.n
    gd = disc_mod.construct_mirror_embedding(n)
    id_right = lattices.Isometry.identity(gd.right)
    results = {}
    if n == 6:
        gens = modular.monodromy_generators(6)
        expected = {"T": True, "S1": True, "S2": False}
        for key, g in gens.items():
            results[key] = disc_mod.glue_extends(gd, g, id_right) is not None
    else:
        lat = modular.u_plus_mn(n)
        tbar = modular.R_map(modular.translation(), n).to_isometry()
        s1bar = (-modular.R_map(modular.fricke(n), n)).to_isometry()
        refl = lattices.Isometry(lat, ((1, 0, 0), (0, -1, 0), (0, 0, 1)))
        expected = {"T": True, "S1": True, "v-reflection": n == 1}
        for key, g in (("T", tbar), ("S1", s1bar), ("v-reflection", refl)):
            results[key] = disc_mod.glue_extends(gd, g, id_right) is not None
    payload = {
        "n": n,
        "index": gd.index,
        "overlattice_determinant": str(gd.overlattice.determinant),
        "extends": results,
        "expected": expected,
    }
    if results == expected:
        return "pass", payload
    return "fail", _fail("verify-glue", {"n": n}, expected, results)


def _cmd_pf(args) -> tuple[str, object]:
    if args.pf_op == "series":
        by_sum = picard_fuchs.pi_series(args.order)
        by_rec = picard_fuchs.pi_series_by_recurrence(args.order)
        if not by_sum.eq_through(by_rec, args.order):
            k = next(k for k in range(args.order + 1)
                     if by_sum.coeff(k) != by_rec.coeff(k))
            return "fail", _fail("pf series", {"order": args.order},
                                 str(by_rec.coeff(k)), str(by_sum.coeff(k)))
        return "value", {"coefficients": [str(c) for c in by_sum.coeffs]}
    if args.pf_op == "schwarzian":
        check = picard_fuchs.schwarzian_check(args.order)
        payload = {"order": check.order}
        if check.ok:
            return "pass", payload
        k, got, want = check.first_mismatch
        return "fail", _fail("pf schwarzian", {"order": args.order, "power": k},
                             want, got)
    if args.pf_op == "standard-form":
        check = picard_fuchs.standard_form_check(args.order)
        if check.ok:
            return "pass", {"order": check.order}
        k, got, want = check.first_mismatch
        return "fail", _fail("pf standard-form", {"order": args.order, "power": k},
                             want, got)
    if args.pf_op == "mirror-map":
        mm = picard_fuchs.mirror_map(args.order)
        coeffs = [mm.x_of_q.coeff(k) for k in range(args.order + 1)]
        return "value", {
            "x_of_q": [str(c) for c in coeffs],
            "integral": all(c.denominator == 1 for c in coeffs),
        }
    if args.pf_op == "monodromy":
        point = Fraction(args.point)
        res = picard_fuchs.numeric_monodromy(point, basepoint=Fraction(args.basepoint),
                                             tol=args.tol)
        payload = {
            "loop": res.loop,
            "matrix": [[[v.real, v.imag] for v in row] for row in res.matrix],
            "invariants": {
                "det": [res.det.real, res.det.imag],
                "trace": [res.trace.real, res.trace.imag],
                "order2_residual": res.order2_residual,
            },
            "residual": res.residual,
        }
        return "value", payload
    raise ValueError(f"unknown pf operation {args.pf_op!r}")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--timing", action="store_true", help="include elapsed_ms")
    parser = argparse.ArgumentParser(
        prog="k3mirror",
        parents=[common],
        description="Exact lattice, modular and Picard-Fuchs computations "
                    "for the degree-12 K3 mirror family.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("lattice", help="build a standard lattice")
    p.add_argument("name", choices=lattices.STANDARD_NAMES)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=_cmd_lattice)

    p = add_parser("disc", help="discriminant group of a standard lattice")
    p.add_argument("name", choices=lattices.STANDARD_NAMES)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=_cmd_disc)

    p = add_parser("mukai", help="Mukai vector computations (Picard rank one)")
    psub = p.add_subparsers(dest="mukai_op", required=True)
    pp = psub.add_parser("pair", parents=[common])
    pp.add_argument("--degree", type=int, required=True)
    pp.add_argument("--v", required=True, help="r,m,s")
    pp.add_argument("--w", required=True, help="r,m,s")
    pn = psub.add_parser("normalize", parents=[common])
    pn.add_argument("--degree", type=int, required=True)
    pn.add_argument("--v", required=True, help="r,m,s")
    pn.add_argument("--u", required=True, help="r,m,s companion pairing to -1")
    p.set_defaults(func=_cmd_mukai)

    p = add_parser("fm-partners", help="number of Fourier-Mukai partners")
    p.add_argument("degree", type=int)
    p.set_defaults(func=_cmd_fm_partners)

    p = add_parser("monodromy-index", help="monodromy index, cross-checked")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_monodromy_index)

    p = add_parser("verify-table1",
                   help="run the six-check degree-12 verification report")
    p.set_defaults(func=_cmd_verify_table1)

    p = add_parser("verify-glue", help="glue extension dichotomy")
    p.add_argument("--n", type=int, default=6)
    p.set_defaults(func=_cmd_verify_glue)

    p = add_parser("pf", help="Picard-Fuchs computations")
    pfsub = p.add_subparsers(dest="pf_op", required=True)
    ps = pfsub.add_parser("series", parents=[common])
    ps.add_argument("--order", type=int, default=20)
    ps2 = pfsub.add_parser("schwarzian", parents=[common])
    ps2.add_argument("--order", type=int, default=40)
    ps3 = pfsub.add_parser("standard-form", parents=[common])
    ps3.add_argument("--order", type=int, default=30)
    ps4 = pfsub.add_parser("mirror-map", parents=[common])
    ps4.add_argument("--order", type=int, default=30)
    ps5 = pfsub.add_parser("monodromy", parents=[common])
    ps5.add_argument("--point", required=True, help="0, 1/36 or 1/4")
    ps5.add_argument("--tol", type=float, default=1e-6)
    ps5.add_argument("--basepoint", default="1/100")
    p.set_defaults(func=_cmd_pf)
    return parser


def _render_pretty(result: CommandResult) -> str:
    lines = [f"status: {result.status}"]
    payload = result.payload
    if isinstance(payload, dict) and "checks" in payload:
        for chk in payload["checks"]:
            mark = "PASS" if chk["passed"] else "FAIL"
            lines.append(f"  [{mark}] {chk['id']}: {chk['description']}")
    else:
        lines.append(json.dumps(payload, indent=2))
    return "\n".join(lines)


def run(argv) -> tuple[CommandResult | None, int]:
    """Parse and execute; returns (result, exit_code)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, int(exc.code or 0)
    start = time.perf_counter()
    inputs = {k: v for k, v in vars(args).items()
              if k not in ("func", "pretty", "timing") and v is not None}
    try:
        status, payload = args.func(args)
    except (ValueError, ZeroDivisionError, ArithmeticError,
            picard_fuchs.ToleranceNotMet) as exc:
        elapsed = (time.perf_counter() - start) * 1000.0
        result = CommandResult("fail", _fail(args.command, inputs, None, str(exc)),
                               elapsed)
        return result, 1
    elapsed = (time.perf_counter() - start) * 1000.0
    result = CommandResult(status, payload, elapsed)
    return result, (0 if status in ("pass", "value") else 1)


def main() -> None:
    result, code = run(sys.argv[1:])
    if result is not None:
        argv = sys.argv[1:]
        if "--pretty" in argv:
            print(_render_pretty(result))
        else:
            out = {"status": result.status, "payload": result.payload}
            if "--timing" in argv:
                out["elapsed_ms"] = result.elapsed_ms
            print(json.dumps(out))
    sys.exit(code)


if __name__ == "__main__":
    main()
