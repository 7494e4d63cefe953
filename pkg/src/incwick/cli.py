"""Command-line front end.

Subcommands: verify, enumerate, mobius, counterexample, tn, tables.
All output is deterministic; exit code 0 on success, 1 on verification
failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import counting, families, meixner, wick
from .gamma import COMMUTATIVE, FREE, indicator_mode

VERIFY_BOUNDS = {"P12": 6, "INC12": 6, "INC": 6, "IP": 5, "IPRM": 5, "MEIXNER": 5}
SUITES = ("monomial", "inversion", "product", "hypothesis", "meixner",
          "weighted", "symmetry", "counts", "all")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _params_from_args(args) -> dict:
    out = {}
    for name in ("alpha", "beta", "beta1", "beta2", "t", "gamma", "q"):
        value = getattr(args, name, None)
        if value is not None:
            out[name] = value
    return out


def _compositions(n: int, max_parts: int) -> list[tuple]:
    out = []

    def grow(rest, acc):
        if rest == 0:
            if len(acc) >= 2:
                out.append(tuple(acc))
            return
        if len(acc) >= max_parts:
            return
        for part in range(1, rest + 1):
            grow(rest - part, acc + [part])

    grow(n, [])
    return out


def _suite_cases(suite: str, family_filter: str, nmax: int | None, params: dict) -> list[tuple]:
    cases: list[tuple] = []

    def families_for(available):
        if family_filter == "all":
            return list(available)
        if family_filter not in available:
            return []
        return [family_filter]

    def cap(bound):
        return min(bound, nmax) if nmax else bound

    if suite in ("monomial", "all"):
        for fam in families_for(("P12", "INC12", "INC", "IP", "IPRM", "MEIXNER")):
            for n in range(1, cap(VERIFY_BOUNDS[fam]) + 1):
                mode = "free"
                cases.append(("monomial", fam, n, mode, params))
                if fam == "IP":
                    cases.append(("monomial", fam, n, "commutative", params))
    if suite in ("inversion", "all"):
        for fam in families_for(("P12", "INC12", "INC", "IP", "IPRM", "MEIXNER")):
            for n in range(1, cap(5) + 1):
                mode = "commutative" if fam == "IP" else "free"
                cases.append(("inversion", fam, n, mode, params))
        if family_filter in ("all", "MEIXNER"):
            cases.append(("oc-cases", None, 10, "rational", params))
    if suite in ("product", "all"):
        for fam in families_for(("P12", "INC12", "INC", "IP", "IPRM")):
            bound = cap(6 if fam in ("P12", "INC12", "INC") else 5)
            for n in range(2, bound + 1):
                for split in _compositions(n, 3):
                    mode = "commutative" if fam == "IP" else "free"
                    cases.append(("product", fam, split, mode, params))
    if suite in ("hypothesis", "all"):
        for fam in families_for(families.FAMILIES):
            for n in range(2, cap(5) + 1):
                for split in _compositions(n, n):
                    cases.append(("hypothesis", fam, split, "order", None))
    if suite in ("meixner", "all"):
        if family_filter in ("all", "MEIXNER"):
            for n in range(1, cap(5) + 1):
                cases.append(("moment", "MEIXNER", n, "free", params))
                cases.append(("kappa-omega", "MEIXNER", n, "formal", params))
            for n in range(1, cap(6) + 1):
                cases.append(("viennot", "MEIXNER", n, "formal", params))
            for n in range(2, cap(7) + 1):
                cases.append(("schroder", "MEIXNER", n, "rational", None))
            cases.append(("oc-gf", "MEIXNER", 10, "formal", params))
    if suite in ("weighted", "all"):
        if family_filter in ("all", "IPRM"):
            for n in range(1, cap(4) + 1):
                cases.append(("weighted", "IPRM", n, "free", params))
            for n in range(1, cap(4) + 1):
                cases.append(("rewrite", "IPRM", n, "commutative", None))
    if suite in ("symmetry", "all"):
        for fam in families_for(wick.SIX_FAMILIES):
            for n in range(1, cap(4) + 1):
                cases.append(("adjoint", fam, n, "free", params))
            cases.append(("traciality", fam, 5, "tracial", params))
            if fam != "IPRM":
                cases.append(("positivity", fam, 2, "indicator", params))
    if suite in ("counts", "all"):
        for fam in families_for(families.FAMILIES):
            bound = cap(6 if fam != "IPRM" else 5)
            for n in range(1, bound + 1):
                cases.append(("counts", fam, n, "exact", None))
        if family_filter in ("all", "INC"):
            cases.append(("narayana", "INC", cap(6), "exact", None))
        if family_filter in ("all", "IP", "P12", "IPRM"):
            cases.append(("classical", None, cap(5), "projection", None))
    return cases


def run_case(case: tuple) -> dict:
    kind, fam, size, mode_name, params = case
    mode = {"free": FREE, "commutative": COMMUTATIVE}.get(mode_name)
    if kind == "monomial":
        return wick.verify_monomial(fam, size, mode, params).to_dict()
    if kind == "inversion":
        return wick.verify_inversion(fam, size, mode, params).to_dict()
    if kind == "product":
        return wick.verify_product(fam, size, mode, params).to_dict()
    if kind == "hypothesis":
        from .poset import check_product_hypothesis

        return check_product_hypothesis(fam, size)
    if kind == "moment":
        return meixner.verify_moment_formula(size, mode, params).to_dict()
    if kind == "kappa-omega":
        return meixner.verify_kappa_omega_factorization(size, params).to_dict()
    if kind == "viennot":
        return meixner.verify_viennot(size, params).to_dict()
    if kind == "schroder":
        return meixner.verify_schroder_motzkin(size).to_dict()
    if kind == "oc-gf":
        return meixner.verify_oc_generating_functions(params, size).to_dict()
    if kind == "oc-cases":
        picks = [
            ({"alpha": 1, "beta": 3, "t": 2, "gamma": 0}, "I"),
            ({"alpha": 1, "beta": 3, "t": 5, "gamma": 2}, "II"),
            ({"alpha": 1, "beta": 4, "t": 3, "gamma": 3}, "II'"),
            ({"alpha": 0, "beta": 2, "t": 1, "gamma": 1}, "III"),
            ({"alpha": 1, "beta": 2, "t": 1, "gamma": 1}, "III'"),
        ]
        for chosen, tag in picks:
            rep = meixner.verify_case_closed_forms(chosen, size, expect_case=tag)
            if not rep.passed:
                return rep.to_dict()
        return rep.to_dict()
    if kind == "weighted":
        return wick.verify_weighted_iprm(size, params=params).to_dict()
    if kind == "rewrite":
        return wick.verify_commutative_iprm_rewrite(size).to_dict()
    if kind == "adjoint":
        mode = COMMUTATIVE if fam == "IP" else FREE
        return wick.verify_adjoint(fam, size, mode, params).to_dict()
    if kind == "traciality":
        return wick.verify_traciality(fam, size, params=params).to_dict()
    if kind == "positivity":
        mode = indicator_mode({"I": 1, "J": 1})
        extra = dict(params or {})
        if fam == "MEIXNER":
            extra.setdefault("alpha", 1)
            extra.setdefault("beta", 1)
            extra.setdefault("t", 1)
            extra.setdefault("gamma", 1)
        return wick.verify_positivity(fam, mode, size, ["I", "J"], extra).to_dict()
    if kind == "counts":
        return counting.verify_counts(fam, size).to_dict()
    if kind == "narayana":
        return counting.verify_narayana(size).to_dict()
    if kind == "classical":
        for rep in (
            counting.verify_recurrences("P12", size),
            counting.verify_recurrences("IP", size),
            counting.verify_recurrences("IPRM", size),
            counting.verify_explicit_polynomials(size),
            counting.verify_laguerre_monomial(size),
        ):
            if not rep.passed:
                return rep.to_dict()
        return rep.to_dict()
    raise ValueError(f"unknown case kind {kind!r}")


def _emit_reports(reports: list[dict], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(reports, indent=0, sort_keys=True))
        return
    for rep in reports:
        status = "PASS" if rep["pass"] else "FAIL"
        where = []
        if rep.get("family"):
            where.append(f"family={rep['family']}")
        where.append(f"identity={rep['identity']}")
        if "n" in rep:
            where.append(f"n={rep['n']}")
        if "split" in rep:
            where.append("split=" + ",".join(map(str, rep["split"])))
        if "mode" in rep:
            where.append(f"mode={rep['mode']}")
        if fmt == "tsv":
            print("\t".join([status] + where))
        else:
            print(f"{status} " + " ".join(where))


def cmd_verify(args) -> int:
    params = _params_from_args(args)
    cases = _suite_cases(args.suite, args.family, args.n, params)
    if not cases:
        print(f"no cases selected for suite {args.suite!r} family {args.family!r}",
              file=sys.stderr)
        return 2
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(run_case, cases))
    else:
        reports = [run_case(c) for c in cases]
    _emit_reports(reports, args.format)
    failures = [r for r in reports if not r["pass"]]
    if failures:
        first = failures[0]
        print(f"first counterexample: {first.get('counterexample')}", file=sys.stderr)
        return 1
    return 0


def cmd_enumerate(args) -> int:
    for element in families.generate(args.family, args.n):
        print(families.render(args.family, element))
    return 0


def cmd_mobius(args) -> int:
    poset = families.poset(args.family, args.n)
    bottom = families.bottom(args.family, args.n)
    mu = poset.mobius_from(bottom)
    mismatch = False
    print("element\tclosed\tgeneric")
    for element in poset.elements:
        closed = families.mobius_closed(args.family, element, args.n)
        generic = mu.get(element)
        print(f"{families.render(args.family, element)}\t{closed}\t{generic}")
        if generic != closed:
            mismatch = True
    return 1 if mismatch else 0


def cmd_counterexample(args) -> int:
    result = meixner.q_counterexample(args.measure_i, args.measure_j)
    print("phi_q( W_q(a0) W_q(a1,a2,a3) W_q(a4) )")
    print(f"symbolic  = {result['symbolic'].render()}")
    print(f"expected  = {result['expected_symbolic'].render()}")
    print(f"numeric   = {result['numeric'].render()}   "
          f"(|I| = {args.measure_i}, |J| = {args.measure_j})")
    print(f"at q=0    = {result['at_q0'].render()}")
    print(f"at q=1    = {result['at_q1'].render()}")
    return 0 if result["matches"] else 1


def cmd_tn(args) -> int:
    route_a, route_b = meixner.compute_T(args.max)
    if route_a != route_b:
        print(f"route mismatch: {route_a} vs {route_b}", file=sys.stderr)
        return 1
    print(" ".join(map(str, route_a)))
    return 0


def cmd_tables(args) -> int:
    if args.kind == "counts":
        rows = counting.table_rows(args.family, args.n)
        print(counting.render_table(rows, args.format))
        return 0
    if args.kind == "oc":
        params = _params_from_args(args)
        coeffs = meixner.inversion_coeffs(params, args.n)
        print(f"# case: {coeffs.case}")
        print("k\to_k\tc_k")
        for k in range(1, args.n + 1):
            print(f"{k}\t{coeffs.o[k].render()}\t{coeffs.c[k].render()}")
        return 0
    params = _params_from_args(args)
    print("n\tmoment")
    for m in range(args.n + 1):
        value = meixner.jacobi_path_moment(
            m,
            [meixner._params(params)[k] for k in ("alpha",)] +
            [meixner._params(params)["alpha"] + meixner._params(params)["beta"]],
            [meixner._params(params)["t"],
             meixner._params(params)["t"] + meixner._params(params)["gamma"]],
        )
        print(f"{m}\t{value.render()}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="incwick",
        description="Exact verification of incomplete-poset Wick product identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p):
        for name in ("alpha", "beta", "beta1", "beta2", "t", "gamma", "q"):
            p.add_argument(f"--{name}", type=_fraction, default=None,
                           help=f"exact rational value for {name} (default: formal)")

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--family", default="all",
                   choices=("all",) + families.FAMILIES + ("MEIXNER",))
    p.add_argument("--n", type=int, default=None, help="cap the size bounds")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("text", "tsv", "json"), default="text")
    add_params(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list the elements of a family")
    p.add_argument("--family", required=True, choices=families.FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("mobius", help="dump closed-form vs generic Mobius values")
    p.add_argument("--family", required=True, choices=families.FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_mobius)

    p = sub.add_parser("counterexample", help="the q-state product counterexample")
    p.add_argument("--measure-i", type=_fraction, default=Fraction(1))
    p.add_argument("--measure-j", type=_fraction, default=Fraction(1))
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("tn", help="coefficient-sum sequence by both routes")
    p.add_argument("--max", type=int, default=6)
    p.set_defaults(func=cmd_tn)

    p = sub.add_parser("tables", help="enumeration and coefficient tables")
    p.add_argument("--kind", choices=("counts", "oc", "moments"), default="counts")
    p.add_argument("--family", default="INC", choices=families.FAMILIES)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    add_params(p)
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
