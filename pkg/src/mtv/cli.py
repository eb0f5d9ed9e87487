"""Command-line interface.

Subcommands: eval, reg, stuffle, shuffle, dr, matrix, det,
singular-lambda, enumerate, num, verify, report.  Results go to stdout,
diagnostics to stderr; exit code 0 on success or verification pass, 1
on verification failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import verify as verify_mod
from .closedform import eval_t22, eval_t2212_star, eval_t2232_tilde
from .indexcore import (
    SignedIndex,
    basis_sets,
    enumerate_hoffman,
    enumerate_saha,
    format_signed,
    format_word,
    parse_argument,
)
from .motivic import build_matrix, det_mod2_structure, deriv_D, reduce_deriv, singular_lambda
from .numoracle import NumEnv, altz_num, t_num
from .regularize import shuffle_reg, stuffle_reg
from .symring import SymPoly
from .wordalg import stuffle, shuffle as shuffle_product


def _env_from_args(args) -> NumEnv:
    prec = getattr(args, "prec", None) or int(os.environ.get("MTV_PREC", 128))
    cutoff = getattr(args, "cutoff", None) or int(os.environ.get("MTV_CUTOFF", 10 ** 6))
    return NumEnv(prec=prec, cutoff=cutoff)


def _print_lincomb(lc: dict, fmt: str):
    if fmt == "json":
        out = {}
        for key in sorted(lc, key=lambda s: (s.weight, s.parts)):
            out[format_signed(key)] = SymPoly.coerce(lc[key]).to_json()
        print(json.dumps(out, indent=1))
        return
    if not lc:
        print("0")
        return
    for key in sorted(lc, key=lambda s: (s.weight, s.parts)):
        coeff = SymPoly.coerce(lc[key])
        print(f"({coeff.text()}) * {format_signed(key)}")


def cmd_eval(args) -> int:
    text = args.expr.strip()
    import re

    m = re.fullmatch(r"t\*\(([^;)]*)(?:;\s*(\w+))?\)", text)
    if m:
        parts = tuple(int(x) for x in m.group(1).split(","))
        param = SymPoly.gen(m.group(2)) if m.group(2) else SymPoly.gen("V")
        a, b = _split_2a12b(parts, 1)
        value = eval_t2212_star(a, b, param)
        print(json.dumps(value.to_json()) if args.format == "json" else value.text())
        return 0
    idx = parse_argument(text)
    if isinstance(idx, SignedIndex):
        print("only t-indices have closed forms here; use `mtv num` for values", file=sys.stderr)
        return 2
    value = _closed_form_t(idx)
    if value is None:
        print(f"no closed form for {text}", file=sys.stderr)
        return 2
    print(json.dumps(value.to_json()) if args.format == "json" else value.text())
    return 0


def _split_2a12b(parts, letter):
    hits = [i for i, x in enumerate(parts) if x == letter]
    if len(hits) != 1 or any(x != 2 for j, x in enumerate(parts) if j != hits[0]):
        raise SystemExit(f"expected a {{2}}^a,{letter},{{2}}^b pattern, got {parts}")
    return hits[0], len(parts) - hits[0] - 1


def _closed_form_t(idx):
    if all(x == 2 for x in idx):
        return eval_t22(len(idx))
    ones = [i for i, x in enumerate(idx) if x == 1]
    threes = [i for i, x in enumerate(idx) if x == 3]
    if len(ones) == 1 and not threes and all(x == 2 for i, x in enumerate(idx) if i != ones[0]):
        a, b = ones[0], len(idx) - ones[0] - 1
        if b >= 1:
            return eval_t2212_star(a, b, SymPoly.zero())
        return None  # divergent without a parameter; use t*( ;V)
    if len(threes) == 1 and not ones and all(x == 2 for i, x in enumerate(idx) if i != threes[0]):
        a, b = threes[0], len(idx) - threes[0] - 1
        return SymPoly.const(Fraction(1, 2 ** (2 * a + 2 * b + 3))) * eval_t2232_tilde(a, b)
    return None


def cmd_reg(args) -> int:
    idx = parse_argument(args.index)
    param = SymPoly.zero() if args.param == "0" else SymPoly.gen(args.param)
    if isinstance(idx, SignedIndex):
        s = idx
    else:
        s = SignedIndex(tuple(idx), 0)
    if args.scheme == "stuffle":
        if s.lead_zeros:
            print("stuffle regularization needs no leading zeros", file=sys.stderr)
            return 2
        out = stuffle_reg(s, param)
    else:
        out = shuffle_reg(s, param)
    _print_lincomb(out, args.format)
    return 0


def cmd_stuffle(args) -> int:
    a, b = parse_argument(args.left), parse_argument(args.right)
    ka = a if isinstance(a, SignedIndex) else SignedIndex(tuple(a), 0)
    kb = b if isinstance(b, SignedIndex) else SignedIndex(tuple(b), 0)
    _print_lincomb(stuffle(ka, kb), args.format)
    return 0


def cmd_shuffle(args) -> int:
    u = tuple(int(c) for c in args.left.replace(",", "").replace(" ", ""))
    v = tuple(int(c) for c in args.right.replace(",", "").replace(" ", ""))
    out = shuffle_product(u, v)
    if args.format == "json":
        print(json.dumps({"".join(map(str, w)): str(c) for w, c in sorted(out.items())}, indent=1))
    else:
        for w, c in sorted(out.items()):
            print(f"{c} * {''.join(map(str, w))}")
    return 0


def cmd_dr(args) -> int:
    idx = parse_argument(args.index)
    if isinstance(idx, SignedIndex):
        print("the derivation acts on t-indices", file=sys.stderr)
        return 2
    terms = reduce_deriv(deriv_D(args.r, tuple(idx)))
    rows = []
    for (gen, right), coeff in sorted(terms.items(), key=lambda kv: (kv[0][1], str(kv[0][0]))):
        gen_text = "log2" if gen == ("log",) else f"z{gen[1]}"
        right_text = "1" if right == () else "t~(" + ",".join(map(str, right)) + ")"
        rows.append({"coeff": str(coeff), "left": gen_text, "right": right_text})
    if args.format == "json":
        print(json.dumps(rows, indent=1))
    else:
        if not rows:
            print("0")
        for r in rows:
            print(f"({r['coeff']}) * {r['left']} (x) {r['right']}")
    return 0


def cmd_matrix(args) -> int:
    m = build_matrix(args.kind, args.N, args.level)
    if args.format == "json":
        print(json.dumps(m.to_json(), indent=1))
    else:
        head = [""] + ["".join(map(str, w)) if w else "(empty)" for w in m.cols]
        widths = [max(len(str(x)) for x in col) for col in zip(*([head] + [
            ["".join(map(str, w))] + [str(x) for x in row] for w, row in zip(m.rows, m.entries)
        ]))]
        def fmt_row(cells):
            return "  ".join(str(c).rjust(w) for c, w in zip(cells, widths))
        print(fmt_row(head))
        for w, row in zip(m.rows, m.entries):
            print(fmt_row(["".join(map(str, w))] + [str(x) for x in row]))
    return 0


def cmd_det(args) -> int:
    m = build_matrix(args.kind, args.N, args.level)
    det = m.det()
    if args.lam is not None and isinstance(det, SymPoly):
        det = det.substitute({"lam": SymPoly.const(Fraction(args.lam))}).const_value()
    print(det if not isinstance(det, SymPoly) else det.text())
    if args.structure:
        rep = det_mod2_structure(m)
        for note in rep.notes:
            print(f"note: {note}")
        print("structure:", "ok" if rep.ok else "FAILED")
        return 0 if rep.ok else 1
    return 0


def cmd_singular_lambda(args) -> int:
    print(singular_lambda(args.N))
    return 0


def cmd_enumerate(args) -> int:
    if args.level is not None:
        B, Bp = basis_sets(args.kind, args.N, args.level)
        words = Bp if args.bprime else B
    else:
        words = enumerate_saha(args.N) if args.kind == "S" else enumerate_hoffman(args.N)
    if args.format == "json":
        print(json.dumps(["".join(map(str, w)) for w in words]))
    else:
        for w in words:
            print(format_word(w))
    return 0


def cmd_num(args) -> int:
    env = _env_from_args(args)
    idx = parse_argument(args.index)
    if isinstance(idx, SignedIndex):
        v = altz_num(idx, env)
    else:
        v = t_num(tuple(idx), env)
    import mpmath

    print(mpmath.nstr(mpmath.mpf(v.val), max(8, int(env.prec * 0.3))), "+-", f"{v.err:.3e}")
    return 0


def cmd_coeff(args) -> int:
    from .closedform import coeff_c_21, coeff_c_231, coeff_d_121, coeff_d_232

    table = {
        ("c", "2a1"): lambda a, b: coeff_c_21(a),
        ("c", "2a32b"): coeff_c_231,
        ("d", "2a12b"): coeff_d_121,
        ("d", "2a32b"): coeff_d_232,
    }
    fn = table.get((args.family, args.pattern))
    if fn is None:
        print(f"no coefficient family {args.family} {args.pattern}", file=sys.stderr)
        return 2
    print(fn(args.a, args.b))
    return 0


def _explicit_env(args):
    """Build an environment only when the user pinned precision or cutoff;
    otherwise the suites pick their own tuned defaults."""
    if args.prec or args.cutoff or os.environ.get("MTV_PREC") or os.environ.get("MTV_CUTOFF"):
        return _env_from_args(args)
    return None


def cmd_verify(args) -> int:
    if args.identity:
        return _verify_identity(args, _env_from_args(args))
    results = verify_mod.run_suite(args.suite, max_weight=args.max_weight, env=_explicit_env(args))
    failures = verify_mod.print_results(results, fmt=args.format)
    return 0 if failures == 0 else 1


def _verify_identity(args, env) -> int:
    from .closedform import eval_t2232
    from .numoracle import eval_num, t_num, t_star_a1_num

    a, b = args.a, args.b
    if args.identity == "t2212":
        closed = eval_num(eval_t2212_star(a, b), env, {"V": env.const("log2")})
        direct = t_star_a1_num(a, env.const("log2"), env) if b == 0 else t_num((2,) * a + (1,) + (2,) * b, env)
    elif args.identity == "t2232":
        closed = eval_num(eval_t2232(a, b), env)
        direct = t_num((2,) * a + (3,) + (2,) * b, env)
    else:
        print(f"unknown identity {args.identity!r}", file=sys.stderr)
        return 2
    resid = abs(float(closed.val - direct.val))
    bound = closed.err + direct.err
    ok = resid <= max(bound, 1e-6)
    print(f"value {float(direct.val):.12f}  closed {float(closed.val):.12f}  "
          f"residual {resid:.3e}  bound {max(bound, 1e-6):.3e}  {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_report(args) -> int:
    if not args.suite:
        print("a suite name is required", file=sys.stderr)
        return 2
    results = verify_mod.run_suite(args.suite, max_weight=args.max_weight, env=_explicit_env(args))
    print(json.dumps([r.to_json() for r in results], indent=1))
    return 1 if any(r.status == "FAIL" for r in results) else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mtv", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, num=False):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if num:
            sp.add_argument("--prec", type=int, default=None)
            sp.add_argument("--cutoff", type=int, default=None)

    sp = sub.add_parser("eval", help="closed-form evaluation of a t index")
    sp.add_argument("expr")
    common(sp)
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("reg", help="regularize an index")
    sp.add_argument("--scheme", choices=("stuffle", "shuffle"), required=True)
    sp.add_argument("--param", default="T")
    sp.add_argument("index")
    common(sp)
    sp.set_defaults(fn=cmd_reg)

    sp = sub.add_parser("stuffle", help="stuffle product of two indices")
    sp.add_argument("left")
    sp.add_argument("right")
    common(sp)
    sp.set_defaults(fn=cmd_stuffle)

    sp = sub.add_parser("shuffle", help="shuffle product of two words over 0/1/-1 digits")
    sp.add_argument("left")
    sp.add_argument("right")
    common(sp)
    sp.set_defaults(fn=cmd_shuffle)

    sp = sub.add_parser("dr", help="derivation of odd weight r on a t index")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("index")
    common(sp)
    sp.set_defaults(fn=cmd_dr)

    sp = sub.add_parser("matrix", help="graded derivation matrix")
    sp.add_argument("--kind", choices=("S", "H", "Hstar"), required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--level", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_matrix)

    sp = sub.add_parser("det", help="determinant of a graded derivation matrix")
    sp.add_argument("--kind", choices=("S", "H", "Hstar"), required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--lam", default=None, help="evaluate a parametric determinant at this rational")
    sp.add_argument("--structure", action="store_true", help="also verify the parity structure")
    common(sp)
    sp.set_defaults(fn=cmd_det)

    sp = sub.add_parser("singular-lambda", help="degeneration point of the parametric level-1 matrix")
    sp.add_argument("--N", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_singular_lambda)

    sp = sub.add_parser("enumerate", help="basis words by weight (and level)")
    sp.add_argument("--kind", choices=("S", "H"), required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--level", type=int, default=None)
    sp.add_argument("--bprime", action="store_true", help="list the lower-level basis instead")
    common(sp)
    sp.set_defaults(fn=cmd_enumerate)

    sp = sub.add_parser("num", help="numerical value of a t index or signed zeta index")
    sp.add_argument("index")
    common(sp, num=True)
    sp.set_defaults(fn=cmd_num)

    sp = sub.add_parser("coeff", help="rational coefficient tables")
    sp.add_argument("family", choices=("c", "d"))
    sp.add_argument("pattern", choices=("2a1", "2a32b", "2a12b"))
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, default=0)
    common(sp)
    sp.set_defaults(fn=cmd_coeff)

    sp = sub.add_parser("verify", help="run a verification suite or a single identity")
    sp.add_argument("--suite", default="all")
    sp.add_argument("--identity", choices=("t2212", "t2232"), default=None)
    sp.add_argument("--a", type=int, default=0)
    sp.add_argument("--b", type=int, default=0)
    sp.add_argument("--max-weight", type=int, default=6)
    common(sp, num=True)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("report", help="structured verification report (json)")
    sp.add_argument("--suite", default="")
    sp.add_argument("--max-weight", type=int, default=6)
    common(sp, num=True)
    sp.set_defaults(fn=cmd_report)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
