"""Command-line front end.

Every subcommand builds a report dict; ``--json`` prints it as canonical JSON
(sorted keys, exact rationals as ``"p/q"``), otherwise a short human summary
is printed.  The exit code is 0 exactly when every check in the report passed.
"""

from __future__ import annotations

import argparse
import json
import logging
import multiprocessing
import sys
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .axioms import axiom_check, check_antisymmetry, check_jacobi, check_leibniz
from .brackets import Brackets, BracketResult, NoEngine, bv_obstruction, compare_table
from .cohomology import CohomologyClass
from .facts import verify_cup_identities, verify_homotopies, verify_liftings
from .session import Config, Session

log = logging.getLogger("fk3hh")

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2
EXPECTED_COUNTS = {0: 3, 1: 5, 2: 4, 3: 1, 4: 1}


# --------------------------------------------------------------------------
# helpers
# --------------------------------------------------------------------------


def class_dict(S: Session, cls: CohomologyClass) -> dict:
    F = S.C.field
    return {"value": S.P.format(cls), "bidegree": list(cls.bidegree),
            "coordinates": [F.fmt(c) for c in cls.coords]}


def parse_class(S: Session, text: str) -> Tuple[Optional[int], CohomologyClass]:
    """A generator name (``X_8`` or ``X8``) or a polynomial in the generators."""
    key = text.strip()
    if key in S.G.by_name:
        return S.G.by_name[key].index, S.G.by_name[key].cls
    return None, S.P.evaluate(key)


def status(ok: bool) -> str:
    return "pass" if ok else "fail"


def report(command: str, S: Session, checks: Dict[str, bool], result) -> dict:
    cfg = S.cfg.public()
    return {"command": command, "config": cfg,
            "status": status(all(checks.values())),
            "checks": {k: status(v) for k, v in sorted(checks.items())},
            "result": result}


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_build(S: Session, args) -> dict:
    R = S.R
    ranks = {str(n): R.P[n].rank for n in range(R.depth + 1)}
    cache = S.cache_file()
    res = {"ranks": ranks, "cache_file": cache.name if cache else None,
           "convention_trials": S.trials}
    return report("build", S, {"built": True}, res)


def cmd_verify_resolution(S: Session, args) -> dict:
    R = S.R
    sq = R.check_square_zero()
    ex = R.check_exactness()
    minimal = R.check_minimality()
    bad_ex = [list(k) for k, v in sorted(ex.items()) if not v]
    res = {"square_zero": {str(n): v for n, v in sorted(sq.items())},
           "exactness_checked": len(ex), "exactness_failures": bad_ex,
           "augmentation_kernel_is_image": all(v for (n, _), v in ex.items() if n == 0),
           "minimal": minimal}
    return report("verify-resolution", S,
                  {"square_zero": all(sq.values()), "exactness": not bad_ex, "minimality": minimal}, res)


def _fact_summary(rep) -> dict:
    return {"passed": rep.passed, "failed": [c.as_dict() for c in rep.failed],
            "skipped": [c.as_dict() for c in rep.skipped]}


def cmd_verify_facts(S: Session, args) -> dict:
    d = S.cfg.data
    hom = verify_homotopies(S.R, d / "facts_homotopies.json")
    lif = verify_liftings(S.R, d / "facts_liftings.json")
    cup = verify_cup_identities(S.P, d / "cup_identities.json")
    res = {"homotopies": _fact_summary(hom), "liftings": _fact_summary(lif),
           "cup_identities": _fact_summary(cup)}
    return report("verify-facts", S, {"homotopies": hom.ok, "liftings": lif.ok, "cup_identities": cup.ok}, res)


def cmd_dims(S: Session, args) -> dict:
    C, G = S.C, S.G
    dims = C.dims()
    rec = C.recursion_checks()
    counts = G.counts_by_degree()
    table = {str(n): {str(t): d for t, d in sorted(row.items()) if d} for n, row in dims.items()}
    res = {"dimensions": table, "recursion": rec,
           "generator_counts": {str(k): v for k, v in counts.items()}}
    return report("dims", S, {"recursion": all(r["ok"] for r in rec),
                              "generator_counts": counts == EXPECTED_COUNTS}, res)


def cmd_cup(S: Session, args) -> dict:
    _, x = parse_class(S, args.left)
    _, y = parse_class(S, args.right)
    val = S.C.cup(x, y)
    return report("cup", S, {"computed": True},
                  {"left": args.left, "right": args.right, **class_dict(S, val)})


def run_method(B: Brackets, method: str, i, x, j, y) -> BracketResult:
    """``[x, y]`` by one named engine (antisymmetry is applied when the engine
    computes the reversed order)."""
    if method == "hh0":
        if y.degree == 0:
            return B.hh0(x, y)
        if x.degree == 0:
            return B.swapped(B.hh0(y, x), x, y)
        raise NoEngine("hh0 needs a degree-zero argument")
    if method == "hh1":
        if x.degree == 1:
            return B.hh1(x, y)
        if y.degree == 1:
            return B.swapped(B.hh1(y, x), x, y)
        raise NoEngine("hh1 needs a degree-one argument")
    if method == "oracle":
        return B.oracle(x, y)
    if method == "oracle-central":
        return B.oracle_central(x, y)
    if method == "degree-vanishing":
        r = B.degree_vanishing(x, y)
        if r is None:
            raise NoEngine("the target bidegree is not zero")
        return r
    if method == "descent":
        X14, X13, a_x, a_y = B._descent_data()
        if x == X13:
            return B.descent(X14, X13, a_x, a_y, y)
        if y == X13:
            return B.swapped(B.descent(X14, X13, a_x, a_y, x), x, y)
        raise NoEngine("descent applies to brackets with X_13")
    raise ValueError(f"unknown method {method!r}")


def cmd_bracket(S: Session, args) -> dict:
    B = S.B
    i, x = parse_class(S, args.left)
    j, y = parse_class(S, args.right)
    if args.method:
        r = run_method(B, args.method, i, x, j, y)
    elif i is not None and j is not None:
        r = B.generator_bracket(i, j)
    else:
        r = B.bracket(x, y)
    res = {"left": args.left, "right": args.right, "method": r.method,
           "certificate": r.certificate, **class_dict(S, r.value)}
    return report("bracket", S, {"computed": True}, res)


_WORKER: Optional[Session] = None


def _table_chunk(pairs: List[Tuple[int, int]]) -> List[Tuple[Tuple[int, int], tuple, str]]:
    B = _WORKER.B
    out = []
    for i, j in pairs:
        r = B.generator_bracket(i, j)
        out.append(((i, j), r.value.coords, r.method))
    return out


def compute_table(S: Session, jobs: int = 1) -> Dict[Tuple[int, int], BracketResult]:
    """Upper triangle and diagonal, optionally spread over worker processes.

    The result does not depend on ``jobs``: each entry is canonical.
    """
    pairs = [(i, j) for i in range(1, 15) for j in range(i, 15)]
    B = S.B
    if jobs <= 1:
        return {p: B.generator_bracket(*p) for p in pairs}
    global _WORKER
    S.R  # build before forking so workers share it
    _WORKER = S
    chunks = [pairs[k::jobs] for k in range(jobs)]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(jobs) as pool:
        parts = pool.map(_table_chunk, chunks)
    G = S.G
    out = {}
    for part in parts:
        for (i, j), coords, method in part:
            n, t = B.target_bidegree(G[i], G[j])
            val = CohomologyClass(n, t, tuple(coords))
            out[(i, j)] = BracketResult(G.generators[i - 1].name, G.generators[j - 1].name, val, method)
    return dict(sorted(out.items()))


def table_entries(S: Session, jobs: int = 1) -> List[dict]:
    computed = compute_table(S, jobs)
    B, P = S.B, S.P
    rows = compare_table(B, _expected(S), full=True, computed=computed)
    out = []
    for e in sorted(rows, key=lambda e: (e.i, e.j)):
        d = e.as_dict(P)
        d.pop("certificate", None)
        out.append(d)
    return out


def _expected(S: Session):
    from .brackets import load_expected
    return load_expected(S.cfg.data_file("expected_table.json"))


def cmd_table(S: Session, args) -> dict:
    entries = table_entries(S, args.jobs or S.cfg.jobs)
    mism = [e for e in entries if e["status"] != "match"]
    return report("table", S, {"all_match": not mism},
                  {"entries": entries, "count": len(entries), "mismatches": len(mism)})


def cmd_bv(S: Session, args) -> dict:
    rep = bv_obstruction(S.B)
    return report("bv-check", S, {"infeasible": not rep.feasible,
                                  "certificate": rep.certificate_verified,
                                  "chain": all(s["ok"] for s in rep.chain)}, rep.as_dict())


def cmd_axioms(S: Session, args) -> dict:
    B = S.B
    if args.triple:
        x, y, z = (parse_class(S, t)[1] for t in args.triple)
        res = axiom_check(B, x, y, z)
        return report("axioms", S, {k: bool(v["ok"]) for k, v in res.items()}, res)
    anti = check_antisymmetry(B)
    jac = check_jacobi(B, args.samples, args.seed)
    leib = check_leibniz(B, args.samples, args.seed)
    res = {r.name: r.as_dict() for r in (anti, jac, leib)}
    need = {"antisymmetry": len(S.G) ** 2, "jacobi": min(30, args.samples), "leibniz": min(30, args.samples)}
    checks = {r.name: r.ok and r.checked >= need[r.name] for r in (anti, jac, leib)}
    return report("axioms", S, checks, res)


def cmd_choice(S: Session, args) -> dict:
    T = S.perturbed()
    a = compute_table(S)
    b = compute_table(T)
    diffs = [list(k) for k in a if a[k].value != b[k].value]
    moved = sum(S.B.homotopy(S.G[z])[n].images != T.B.homotopy(T.G[z])[n].images
                for z in (1, 2, 3) for n in range(S.C.max_degree))
    return report("choice-independence", S, {"identical": not diffs},
                  {"entries": len(a), "differences": diffs, "homotopy_components_changed": moved})


COMMANDS: Dict[str, Callable] = {
    "build": cmd_build, "verify-resolution": cmd_verify_resolution, "verify-facts": cmd_verify_facts,
    "dims": cmd_dims, "cup": cmd_cup, "bracket": cmd_bracket, "table": cmd_table,
    "bv-check": cmd_bv, "axioms": cmd_axioms, "choice-independence": cmd_choice,
}


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True)


def human(rep: dict) -> str:
    lines = [f"{rep['command']}: {rep['status'].upper()}"]
    for k, v in rep["checks"].items():
        lines.append(f"  {k:<24} {v}")
    res = rep["result"]
    cmd = rep["command"]
    if cmd in ("cup", "bracket"):
        extra = f" (method {res['method']})" if "method" in res else ""
        op = "*" if cmd == "cup" else ","
        head = f"{res['left']} {op} {res['right']}" if cmd == "cup" else f"[{res['left']}, {res['right']}]"
        lines.append(f"  {head} = {res['value']}{extra}")
    elif cmd == "table":
        width = max(len(e["value"]) for e in res["entries"])
        for e in res["entries"]:
            i, j = (int(e[k].split("_")[1]) for k in ("left", "right"))
            if i <= j:
                lines.append(f"  [{e['left']:>4}, {e['right']:>4}] = {e['value']:<{width}}  "
                             f"{e['method']:<16} {e['status']}")
        lines.append(f"  {res['count']} entries, {res['mismatches']} mismatches")
    elif cmd == "dims":
        for n, row in res["dimensions"].items():
            lines.append(f"  HH^{n}: " + ", ".join(f"t={t}:{d}" for t, d in row.items()))
        lines.append("  generators per degree: " + str(res["generator_counts"]))
    elif cmd == "bv-check":
        lines.append(f"  unknowns {res['unknowns']}, equations {res['equations']}, "
                     f"feasible {res['feasible']}")
        for s in res["chain"]:
            lines.append(f"  [{'ok' if s['ok'] else 'FAIL'}] {s['claim']}")
    elif cmd == "axioms" and "antisymmetry" in res and "checked" in res["antisymmetry"]:
        for name, r in res.items():
            lines.append(f"  {name}: {r['checked']} checked, {len(r['failures'])} failures")
    elif cmd == "verify-facts":
        for name, r in res.items():
            lines.append(f"  {name}: {r['passed']} passed, {len(r['failed'])} failed, "
                         f"{len(r['skipped'])} skipped")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="rational", help="rational or fp:<p> with p > 3")
    common.add_argument("--depth", type=int, default=8)
    common.add_argument("--sign-variant", default="3", help="1-4 or auto")
    common.add_argument("--orientation", default="left-right", choices=["left-right", "right-left"])
    common.add_argument("--solve-order", default="natural", choices=["natural", "reversed"])
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--cache", default=None, help="cache directory (or .pkl file)")
    common.add_argument("--data", default=None, help="data directory")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="fk3hh", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("build", "verify-resolution", "verify-facts", "dims", "table", "bv-check",
                 "choice-independence"):
        sub.add_parser(name, parents=[common])
    for name in ("cup", "bracket"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("left")
        sp.add_argument("right")
        if name == "bracket":
            sp.add_argument("--method", choices=["hh0", "hh1", "descent", "oracle", "oracle-central",
                                                 "degree-vanishing"])
    ax = sub.add_parser("axioms", parents=[common])
    ax.add_argument("--samples", type=int, default=40)
    ax.add_argument("--seed", type=int, default=0)
    ax.add_argument("--triple", nargs=3, metavar="CLASS")
    return p


def config_from_args(args) -> Config:
    sv = args.sign_variant if args.sign_variant == "auto" else int(args.sign_variant)
    return Config(field=args.field, depth=args.depth, sign_variant=sv, orientation=args.orientation,
                  solve_order=args.solve_order, cache_path=args.cache, data_dir=args.data, jobs=args.jobs)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    t0 = time.perf_counter()
    try:
        S = Session(config_from_args(args))
        rep = COMMANDS[args.command](S, args)
    except (ValueError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(dumps(rep) if args.json else human(rep))
    # timing goes to stderr so that the JSON report stays byte-identical across runs
    log.info("%s finished in %.2f s", args.command, time.perf_counter() - t0)
    return EXIT_OK if rep["status"] == "pass" else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
