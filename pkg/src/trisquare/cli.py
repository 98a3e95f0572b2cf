"""Command line entry point: ``trisquare <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import digits, driver, gap, pade, rnsolve, sieve
from .families import ThreeDigitSolution, classify


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, ensure_ascii=False) + "\n")


def _apply_config(args: argparse.Namespace) -> None:
    if not args.config:
        return
    with open(args.config, encoding="utf-8") as fh:
        cfg = json.load(fh)
    for key, val in cfg.items():
        key = key.replace("-", "_")
        if getattr(args, key, None) is None:
            setattr(args, key, val)


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise SystemExit("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def cmd_search(a):
    _need(a, "q", "bound")
    for h in digits.find_sparse_squares(a.q, a.k or 3, a.bound, chunk_size=a.chunk_size or digits.DEFAULT_CHUNK):
        sys.stdout.write(h.to_json() + "\n")


def cmd_verify(a):
    _need(a, "q", "bound")
    rep = driver.verify_theorem1(a.q, a.bound, literal=a.literal)
    _emit(rep.to_dict())
    return 0 if rep.passes else 1


def cmd_pipeline(a):
    _need(a, "q", "m_from", "m_to", "nmax")
    res = driver.pipeline_theorem2(a.q, range(a.m_from, a.m_to + 1), a.nmax, a.L or sieve.DEFAULT_L)
    if a.output:
        with open(a.output, "w", encoding="utf-8") as fh:
            driver.write_jsonl(res, fh)
    else:
        driver.write_jsonl(res, sys.stdout)
    if a.csv:
        with open(a.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(driver.csv_summary(res))


def cmd_classify(a):
    _need(a, "y", "q")
    d = driver.decompose(int(a.y), a.q)
    out = d.to_dict()
    if d.solution is not None:
        out.update(classify(d.solution).to_dict())
    _emit(out)


def cmd_pade_print(a):
    pair = pade.pade_pair(a.n1, a.n2)
    _emit({"n1": a.n1, "n2": a.n2, "P": [str(c) for c in pair.P.coeffs], "Q": [str(c) for c in pair.Q.coeffs]})


def cmd_pade_bound(a):
    _emit(pade.bound_q(a.m, a.n).to_dict())


def cmd_gap_witness(a):
    raw = a.solution
    if raw.startswith("@"):
        with open(raw[1:], encoding="utf-8") as fh:
            raw = fh.read()
    sol = ThreeDigitSolution.from_dict(json.loads(raw))
    out = {"verdict": gap.verify_gap_lemma(sol).value}
    try:
        w = gap.extract_witness(sol)
    except gap.WitnessUnavailable as exc:
        out["witness"] = None
        out["reason"] = exc.reason
    else:
        out["witness"] = w.to_dict()
        out["recomposes"] = gap.recompose(w, sol)
        if w.kappa2 is not None and w.upsilon is not None:
            out["congruences"] = gap.check_congruences(w, sol).to_dict()
    _emit(out)


def cmd_sieve_run(a):
    ts = sieve.sieve_tuples(a.q, a.m, a.L, a.cap)
    if a.survivors_only:
        ts = sieve.survivors(ts)
    sys.stdout.write(sieve.dumps(ts) + "\n")


def cmd_rn_solve(a):
    inst = rnsolve.RNInstance(int(a.c), a.N, a.q, a.nmax)
    _emit([s.to_dict() for s in rnsolve.solve_rn(inst, tuple(a.filter or ()))])


def cmd_mordell_scan(a):
    _emit([{"U": str(u), "V": str(v)} for u, v in rnsolve.mordell_scan(int(a.k), a.vmax)])


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trisquare", description=__doc__)
    p.add_argument("--config", help="JSON file supplying option defaults")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", help="squares with few nonzero base-q digits")
    s.add_argument("--q", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--bound", type=int)
    s.add_argument("--chunk-size", type=int)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify", help="check the small-base classification up to a bound")
    s.add_argument("--q", type=int)
    s.add_argument("--bound", type=int)
    s.add_argument("--literal", action="store_true", help="read the base-16 clause literally")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("pipeline", help="sieve and solve the three-digit equation for a range of m")
    s.add_argument("--q", type=int)
    s.add_argument("--m-from", type=int)
    s.add_argument("--m-to", type=int)
    s.add_argument("--nmax", type=int)
    s.add_argument("--L", type=int)
    s.add_argument("--output")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_pipeline)

    s = sub.add_parser("classify", help="decompose y^2 base q and name its family")
    s.add_argument("--y")
    s.add_argument("--q", type=int)
    s.set_defaults(func=cmd_classify)

    pd = sub.add_parser("pade").add_subparsers(dest="pade_cmd", required=True)
    s = pd.add_parser("print")
    s.add_argument("--n1", type=int, required=True)
    s.add_argument("--n2", type=int, required=True)
    s.set_defaults(func=cmd_pade_print)
    s = pd.add_parser("bound")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_pade_bound)

    g = sub.add_parser("gap").add_subparsers(dest="gap_cmd", required=True)
    s = g.add_parser("witness")
    s.add_argument("--solution", required=True, help="solution JSON, or @file")
    s.set_defaults(func=cmd_gap_witness)

    sv = sub.add_parser("sieve").add_subparsers(dest="sieve_cmd", required=True)
    s = sv.add_parser("run")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--L", type=int, default=sieve.DEFAULT_L)
    s.add_argument("--cap", type=int, default=sieve.DEFAULT_PRIME_CAP)
    s.add_argument("--survivors-only", action="store_true")
    s.set_defaults(func=cmd_sieve_run)

    rn = sub.add_parser("rn").add_subparsers(dest="rn_cmd", required=True)
    s = rn.add_parser("solve")
    s.add_argument("--c", required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--nmax", type=int, default=rnsolve.DEFAULT_NMAX)
    s.add_argument("--filter", type=int, nargs="*", help="auxiliary primes for local filtering")
    s.set_defaults(func=cmd_rn_solve)

    mo = sub.add_parser("mordell").add_subparsers(dest="mordell_cmd", required=True)
    s = mo.add_parser("scan")
    s.add_argument("--k", required=True)
    s.add_argument("--vmax", type=int, required=True)
    s.set_defaults(func=cmd_mordell_scan)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _apply_config(args)
    try:
        rc = args.func(args)
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
