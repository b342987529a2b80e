"""Command-line entry point: single-pair tools and the sweep harness."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import NoReturn, Optional, Sequence

from . import __version__
from .complexes import VertexBoundExceeded, codimension, from_squarefree, is_vertex_decomposable
from .groebner import DEFAULT_PAIR_LIMIT, PairLimitExceeded, groebner_basis, initial_ideal, is_groebner
from .ideals import (
    GMODB,
    PATCH,
    build_matrix,
    family_ideal,
    grading as torus_grading,
    kl_ideal,
    patch_ideal,
    term_order,
    to_z,
)
from .kpoly import PreconditionError, kpoly_of, verify_kostant
from .linkage import (
    family_ideal_ordered,
    InhomogeneousChainInput,
    classify_homogeneity,
    glicci_chain,
    schubert_glicci,
    recursion_step,
    verify_step,
)
from .permcore import Permutation, all_permutations, bruhat_leq, rothe_diagram

WORKERS_ENV = "SCHUBPATCH_WORKERS"
REPORT_SCHEMA = 1
ALL_CHECKS = ("gb", "klgb", "squarefree", "vdec", "codim", "kostant", "recursion", "homogeneity", "glicci")


def _usage_error(msg: str) -> NoReturn:
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(2)


def _perm(s: Optional[str], flag: str) -> Permutation:
    if s is None:
        _usage_error(f"{flag} is required")
    try:
        return Permutation.parse(s)
    except ValueError as e:
        _usage_error(f"{flag}: {e}")


def _emit(obj, args, pretty_text: Optional[str] = None) -> None:
    if args.pretty and pretty_text is not None:
        text = pretty_text
    else:
        text = json.dumps(obj, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# Per-pair sweep work -------------------------------------------------------


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _guarded(fn):
    try:
        return fn()
    except PairLimitExceeded as e:
        return {"status": "resource-limit", "detail": str(e)}
    except VertexBoundExceeded as e:
        return {"status": "resource-limit", "detail": str(e)}


def _check_gb(gs, pair_limit: int) -> dict:
    r = is_groebner(gs.generators, gs.order, pair_limit)
    return {"status": _status(r.certified), "n_spairs": r.n_spairs, "n_skipped": r.n_skipped, "failures": r.failures}


def sweep_pair(v_str: str, w_str: str, checks: Sequence[str], pair_limit: int = DEFAULT_PAIR_LIMIT) -> dict:
    v, w = Permutation.parse(v_str), Permutation.parse(w_str)
    below = bruhat_leq(w, v)
    out: dict = {"v": v_str, "w": w_str, "w_leq_v": below, "checks": {}}
    res = out["checks"]
    Q = patch_ideal(v, w)
    if "gb" in checks:
        res["gb"] = _guarded(lambda: _check_gb(Q, pair_limit))
    if "klgb" in checks:
        I = kl_ideal(v, w)
        res["klgb"] = _guarded(lambda: _check_gb(I, pair_limit))

    need_in = {"squarefree", "vdec", "codim"} & set(checks)
    if need_in:
        def initial_checks():
            inQ = initial_ideal(groebner_basis(Q.generators, Q.order, pair_limit))
            r = {}
            if "squarefree" in checks:
                I = kl_in_patch_order(v, w)
                inI = initial_ideal(groebner_basis(I.generators, I.order, pair_limit))
                r["squarefree"] = {
                    "status": _status(inQ.is_squarefree() and inQ == inI.rename(to_z)),
                    "initial": str(inQ),
                }
            if not inQ.is_squarefree():
                return r
            cx = from_squarefree(inQ, Q.ring)
            if "vdec" in checks:
                r["vdec"] = {"status": _status(is_vertex_decomposable(cx)), "facets": len(cx.facets)}
            if "codim" in checks:
                c = codimension(cx)
                ok = c == w.length() if below else c == float("inf")
                r["codim"] = {"status": _status(ok), "codim": None if c == float("inf") else c, "length_w": w.length()}
            return r

        got = _guarded(initial_checks)
        if "status" in got:
            for k in need_in:
                res[k] = got
        else:
            res.update(got)

    if "kostant" in checks:
        def kostant():
            try:
                r = verify_kostant(v, w, "bminus")
            except PreconditionError:
                return {"status": "n/a"}
            return {"status": _status(r.holds), "case": r.case}
        res["kostant"] = _guarded(kostant)

    if "recursion" in checks:
        def rec():
            if v.is_identity() or not below:
                return {"status": "n/a"}
            rep = verify_step(recursion_step(v, w))
            return {"status": _status(rep.passed), "case": rep.case, "failed": [c.name for c in rep.checks if not c.passed]}
        res["recursion"] = _guarded(rec)

    if "homogeneity" in checks:
        def hom():
            h = classify_homogeneity(v, w)
            if not h.applicable:
                return {"status": "n/a"}
            d = h.to_json()
            d.pop("witnesses")
            d["status"] = _status(h.sound)
            return d
        res["homogeneity"] = _guarded(hom)

    if "glicci" in checks:
        def gl():
            if not below or Q.is_unit or Q.is_zero:
                return {"status": "n/a"}
            try:
                ch = glicci_chain(v, w)
            except InhomogeneousChainInput:
                return {"status": "n/a", "reason": "inhomogeneous"}
            ok = ch.terminal_is_linear and ch.witnesses_ok and len(ch.terminal) == w.length()
            return {"status": _status(ok), "length": len(ch.steps), "terminal": ch.terminal_strings()}
        res["glicci"] = _guarded(gl)
    return out


def kl_in_patch_order(v: Permutation, w: Permutation):
    return family_ideal_ordered(v, w, True)


def _sweep_task(task):
    return sweep_pair(*task)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def sweep(n: int, checks: Sequence[str], sample: Optional[int] = None, seed: int = 0,
          pair_limit: int = DEFAULT_PAIR_LIMIT, workers: Optional[int] = None, timing: bool = False) -> dict:
    """Run checks over S_n x S_n (or a seeded sample of pairs with w <= v)."""
    if n > 6:
        raise ValueError("sweep supports n <= 6")
    checks = sorted(set(checks))
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    perms = list(all_permutations(n))
    if n >= 5 and sample is None:
        raise ValueError("n >= 5 needs --sample")
    if sample is None:
        pairs = [(str(v), str(w)) for v in perms for w in perms]
    else:
        pool = [(str(v), str(w)) for v in perms for w in perms if bruhat_leq(w, v)]
        pairs = sorted(random.Random(seed).sample(pool, min(sample, len(pool))))
    t0 = time.perf_counter()
    tasks = [(v, w, checks, pair_limit) for v, w in pairs]
    workers = workers or default_workers()
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_sweep_task, tasks, chunksize=8))
    else:
        results = [_sweep_task(t) for t in tasks]
    results.sort(key=lambda r: (r["v"], r["w"]))
    summary = {c: {"pass": 0, "fail": 0, "n/a": 0, "resource-limit": 0} for c in checks}
    for r in results:
        for c, d in r["checks"].items():
            summary[c][d["status"]] += 1
    report = {
        "schema": REPORT_SCHEMA,
        "version": __version__,
        "n": n,
        "checks": checks,
        "sample": sample,
        "seed": seed if sample is not None else None,
        "pair_limit": pair_limit,
        "n_pairs": len(results),
        "summary": summary,
        "pairs": results,
    }
    if timing:
        report["seconds"] = round(time.perf_counter() - t0, 3)
    return report


def sweep_failed(report: dict) -> bool:
    return any(s["fail"] or s["resource-limit"] for s in report["summary"].values())


# Subcommands ---------------------------------------------------------------


def cmd_diagram(args) -> int:
    w = _perm(args.w, "--w")
    d = rothe_diagram(w)
    from .permcore import essential_set

    obj = {"w": str(w), "boxes": sorted(map(list, d.boxes)), "essential": sorted(map(list, essential_set(d))), "length": w.length()}
    _emit(obj, args, d.ascii(w))
    return 0


def cmd_ideal(args) -> int:
    v = _perm(args.v, "--v") if args.family.lower() != "schubert" else None
    w = _perm(args.w, "--w")
    gs = family_ideal(v if v is not None else w, w, args.family)
    _emit(gs.to_json(), args, gs.pretty())
    return 0


def cmd_verify_gb(args) -> int:
    v, w = _perm(args.v, "--v"), _perm(args.w, "--w")
    gs = family_ideal(v, w, args.family)
    try:
        r = is_groebner(gs.generators, gs.order, args.pair_limit)
    except PairLimitExceeded as e:
        _emit({"certified": False, "error": str(e)}, args)
        return 1
    _emit(r.to_json(), args, f"certified={r.certified} spairs={r.n_spairs} skipped={r.n_skipped}")
    return 0 if r.certified else 1


def cmd_verify_recursion(args) -> int:
    v, w = _perm(args.v, "--v"), _perm(args.w, "--w")
    rep = verify_step(recursion_step(v, w, args.family))
    text = "\n".join(f"{'PASS' if c.passed else 'FAIL'}  {c.name}" for c in rep.checks)
    _emit(rep.to_json(), args, f"case {rep.case}\n{text}")
    return 0 if rep.passed else 1


def cmd_kpoly(args) -> int:
    v, w = _perm(args.v, "--v"), _perm(args.w, "--w")
    if args.convention == "gmodb":
        from .ideals import gmodb_ideal

        gs, g = gmodb_ideal(v, w), torus_grading(v, GMODB)
    else:
        gs = family_ideal(v, w, args.family)
        g = torus_grading(v, PATCH if args.family == "patch" else "kl")
    k = kpoly_of(gs, g)
    _emit({"v": str(v), "w": str(w), "kpoly": k.to_json()}, args, str(k))
    return 0


def cmd_verify_kostant(args) -> int:
    v, w = _perm(args.v, "--v"), _perm(args.w, "--w")
    try:
        r = verify_kostant(v, w, args.convention, args.family)
    except PreconditionError as e:
        _emit({"error": str(e)}, args)
        return 2
    _emit(r.to_json(), args, f"case {r.case}\nlhs = {r.lhs}\nrhs = {r.rhs}\nholds = {r.holds}")
    return 0 if r.holds else 1


def cmd_complex(args) -> int:
    v, w = _perm(args.v, "--v"), _perm(args.w, "--w")
    Q = patch_ideal(v, w)
    mi = initial_ideal(groebner_basis(Q.generators, Q.order, args.pair_limit))
    cx = from_squarefree(mi, Q.ring)
    c = codimension(cx)
    obj = {
        "facets": len(cx.facets),
        "dim": cx.dim(),
        "pure": cx.is_pure(),
        "vertex_decomposable": is_vertex_decomposable(cx),
        "codim": None if c == float("inf") else c,
    }
    _emit(obj, args, "\n".join(f"{k}: {val}" for k, val in obj.items()))
    return 0


def cmd_homogeneity(args) -> int:
    if args.pair:
        v, w = _perm(args.pair[0], "--pair V"), _perm(args.pair[1], "--pair W")
        h = classify_homogeneity(v, w)
        _emit({"v": str(v), "w": str(w), **h.to_json()}, args)
        return 0 if h.sound else 1
    rep = sweep(args.n, ["homogeneity"], args.sample, args.seed, workers=args.workers, timing=args.timing)
    _emit(rep, args)
    return 1 if sweep_failed(rep) else 0


def cmd_glicci(args) -> int:
    w = _perm(args.w, "--w")
    try:
        if args.v is None:
            # no --v: the Schubert determinantal ideal of w
            ch = schubert_glicci(w, check_witness=not args.skip_witness)
        else:
            ch = glicci_chain(_perm(args.v, "--v"), w, args.family, check_witness=not args.skip_witness)
    except InhomogeneousChainInput as e:
        _emit({"error": str(e)}, args)
        return 2
    lines = [f"{s.kind:18s} v={s.v} w={s.w} b={s.b}" for s in ch.steps]
    _emit(ch.to_json(), args, "\n".join(lines + ["terminal: <" + ", ".join(ch.terminal_strings()) + ">"]))
    return 0 if ch.terminal_is_linear and ch.witnesses_ok else 1


def cmd_sweep(args) -> int:
    checks = ALL_CHECKS if args.checks == "all" else [c.strip() for c in args.checks.split(",") if c.strip()]
    try:
        rep = sweep(args.n, checks, args.sample, args.seed, args.pair_limit, args.workers, args.timing)
    except ValueError as e:
        _usage_error(str(e))
    table = "\n".join(f"{c:12s} " + " ".join(f"{k}={n}" for k, n in s.items()) for c, s in rep["summary"].items())
    _emit(rep, args, f"n={rep['n']} pairs={rep['n_pairs']}\n{table}")
    return 1 if sweep_failed(rep) else 0


def cmd_show(args) -> int:
    what = args.what
    v = _perm(args.v, "--v")
    if what == "matrix":
        print(build_matrix(v, args.convention))
    elif what == "order":
        print(" > ".join(x.short() for x in term_order(v, args.convention).ranking))
    elif what == "grading":
        g = torus_grading(v, args.convention)
        for x in term_order(v, args.convention).ranking:
            print(f"{x.short()}: {list(g.deg(x))}")
    elif what == "diagram":
        print(rothe_diagram(v).ascii(v))
    elif what == "ideal":
        w = _perm(args.w, "--w")
        print(family_ideal(v, w, args.family).pretty())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="schubpatch", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, v=True, w=True):
        if v:
            sp.add_argument("--v")
        if w:
            sp.add_argument("--w")
        sp.add_argument("--out")
        sp.add_argument("--pretty", action="store_true")
        sp.add_argument("--pair-limit", type=int, default=DEFAULT_PAIR_LIMIT)
        return sp

    common(sub.add_parser("diagram", help="Rothe diagram and essential set"), v=False).set_defaults(fn=cmd_diagram)
    sp = common(sub.add_parser("ideal", help="generators with provenance"))
    sp.add_argument("--family", default="patch")
    sp.set_defaults(fn=cmd_ideal)
    sp = common(sub.add_parser("verify-gb", help="certify the minors as a Groebner basis"))
    sp.add_argument("--family", default="patch", choices=["patch", "kl", "gmodb", "t", "n"])
    sp.set_defaults(fn=cmd_verify_gb)
    sp = common(sub.add_parser("verify-recursion", help="check one step of the descent recursion"))
    sp.add_argument("--family", default="patch", choices=["patch", "kl"])
    sp.set_defaults(fn=cmd_verify_recursion)
    sp = common(sub.add_parser("kpoly", help="multigraded K-polynomial"))
    sp.add_argument("--family", default="patch", choices=["patch", "kl"])
    sp.add_argument("--convention", default="bminus", choices=["bminus", "gmodb"])
    sp.set_defaults(fn=cmd_kpoly)
    sp = common(sub.add_parser("verify-kostant", help="K-polynomial recursion at one pair"))
    sp.add_argument("--family", default="patch", choices=["patch", "kl"])
    sp.add_argument("--convention", default="bminus", choices=["bminus", "gmodb"])
    sp.set_defaults(fn=cmd_verify_kostant)
    common(sub.add_parser("complex", help="complex of the initial ideal")).set_defaults(fn=cmd_complex)
    sp = common(sub.add_parser("homogeneity", help="pattern criteria vs direct homogeneity"), v=False, w=False)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--pair", nargs=2, metavar=("V", "W"))
    sp.add_argument("--sample", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int)
    sp.add_argument("--timing", action="store_true")
    sp.set_defaults(fn=cmd_homogeneity)
    sp = common(sub.add_parser("glicci", help="biliaison chain to a linear ideal"))
    sp.add_argument("--family", default="patch", choices=["patch", "kl"])
    sp.add_argument("--skip-witness", action="store_true", help="do not re-verify biliaison witnesses")
    sp.set_defaults(fn=cmd_glicci)
    sp = common(sub.add_parser("sweep", help="run checks over S_n x S_n"), v=False, w=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--checks", default="all", help="comma list from: " + ",".join(ALL_CHECKS))
    sp.add_argument("--sample", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, help=f"defaults to ${WORKERS_ENV} or 1")
    sp.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    sp.set_defaults(fn=cmd_sweep)
    sp = sub.add_parser("show", help="render a matrix, order, grading, diagram or ideal")
    sp.add_argument("what", choices=["matrix", "order", "grading", "diagram", "ideal"])
    sp.add_argument("--v")
    sp.add_argument("--w")
    sp.add_argument("--family", default="patch")
    sp.add_argument("--convention", default="patch")
    sp.set_defaults(fn=cmd_show)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
