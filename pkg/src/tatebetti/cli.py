"""Command-line interface.

    tatebetti COMMAND PROBLEM.json [flags]

Exit status: 0 on success or SKIP, 1 when a verification fails, 2 on bad input
(including rings that are not Artinian, local, or Gorenstein where required).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .artinalg import (
    FinModule,
    LocalAlgebra,
    double_dual_map,
    free_module,
    gorenstein_form,
    matlis_dual,
    module_from_presentation,
    random_module,
    residue_field,
    ring_invariants,
)
from .errors import InputError, InvariantViolation, ParseError
from .period import detect_complex_periodicity, invariant_periodicity
from .polyring import PolyRing, buchberger, build_quotient_algebra
from .resolve import (
    bass_numbers_ext,
    complete_resolution,
    ext_hat,
    minimal_resolution,
    tate_bass,
    tate_bass_ext,
    tor_hat,
)
from .suites import SUITES, run_suite

COMMANDS = ("resolve", "tate-betti", "bass", "tate-bass", "ext-hat", "tor-hat", "dual", "periodicity", "verify")


@dataclass
class Problem:
    path: str
    p: int
    ring: LocalAlgebra
    modules: dict


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing key {key!r}")
    return obj[key]


def load_problem(path: str) -> Problem:
    """Read a JSON problem file and build the ring and all named modules."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    p = _require(_require(data, "field", path), "p", "field")
    ring_spec = _require(data, "ring", path)
    variables = _require(ring_spec, "vars", "ring")
    relations = _require(ring_spec, "relations", "ring")
    if not isinstance(p, int):
        raise InputError("field.p must be an integer")
    try:
        P = PolyRing(variables, p, ring_spec.get("order", "degrevlex"))
    except ValueError as exc:
        raise InputError(f"ring: {exc}") from exc
    polys = []
    for i, rel in enumerate(relations):
        try:
            polys.append(P.parse(rel))
        except ParseError as exc:
            raise InputError(f"ring.relations[{i}]: {exc}") from exc
    G = buchberger(polys) if polys else buchberger([P.zero()])
    R = build_quotient_algebra(G)

    specs = data.get("modules", {})
    built: dict = {}

    def build(name, stack=()):
        if name in built:
            return built[name]
        if name not in specs:
            raise InputError(f"unknown module {name!r}")
        if name in stack:
            raise InputError(f"module references form a cycle: {' -> '.join(stack + (name,))}")
        spec = specs[name]
        where = f"modules.{name}"
        if "presentation" in spec:
            try:
                M = module_from_presentation(R, spec["presentation"])
            except ParseError as exc:
                raise InputError(f"{where}: {exc}") from exc
        elif "builtin" in spec:
            M = _builtin(R, spec["builtin"], where, lambda ref: build(ref, stack + (name,)))
        else:
            raise InputError(f"{where}: needs 'presentation' or 'builtin'")
        built[name] = M
        return M

    for name in specs:
        build(name)
    return Problem(path, p, R, built)


def _builtin(R: LocalAlgebra, spec: str, where: str, lookup) -> FinModule:
    kind, _, arg = str(spec).partition(":")
    if kind == "residue_field" and not arg:
        return residue_field(R)
    if kind == "free":
        try:
            n = int(arg)
        except ValueError:
            raise InputError(f"{where}: free:<n> needs an integer rank") from None
        if n < 0:
            raise InputError(f"{where}: free rank must be non-negative")
        return free_module(R, n)
    if kind == "dual" and arg:
        return matlis_dual(lookup(arg))
    if kind == "random":
        try:
            seed = int(arg)
        except ValueError:
            raise InputError(f"{where}: random:<seed> needs an integer seed") from None
        return random_module(R, seed)
    raise InputError(f"{where}: unknown builtin {spec!r}")


# ---------------------------------------------------------------------------
# reports


def _ring_info(R: LocalAlgebra) -> dict:
    inv = ring_invariants(R)
    return {
        "p": R.p,
        "vars": list(R.variables),
        "groebner_basis": [str(g) for g in R.groebner] if R.groebner is not None else [],
        "dim": R.dim,
        "basis": [R.label(j) for j in range(R.dim)],
        "socle_dim": inv.socle_dim,
        "embedding_dim": inv.embedding_dim,
        "is_gorenstein": inv.is_gorenstein,
        "is_hypersurface": inv.is_hypersurface,
    }


def _module(problem: Problem, name: str | None, flag: str = "--module") -> FinModule:
    if name is None:
        raise InputError(f"{flag} is required for this command")
    if name not in problem.modules:
        raise InputError(f"unknown module {name!r} (have: {', '.join(problem.modules) or 'none'})")
    return problem.modules[name]


def _series(values, start) -> dict:
    return {str(start + i): v for i, v in enumerate(values)}


def _diff_strings(R, E) -> list:
    return [[R.format_element(E[a, c]) for c in range(E.shape[1])] for a in range(E.shape[0])]


def cmd_resolve(pb, args):
    M = _module(pb, args.module)
    res = minimal_resolution(M, args.steps)
    return {
        "module": args.module,
        "module_dim": M.dim,
        "steps": args.steps,
        "betti": _series(res.betti, 0),
        "differentials": {str(n): _diff_strings(pb.ring, E) for n, E in sorted(res.complex.diffs.items())},
    }, True


def cmd_tate_betti(pb, args):
    M = _module(pb, args.module)
    T = complete_resolution(M, args.lo, args.hi)
    return {
        "module": args.module,
        "window": [args.lo, args.hi],
        "free_rank_stripped": T.free_rank,
        "tate_betti": _series([T.complex.ranks[n] for n in range(args.lo, args.hi + 1)], args.lo),
    }, True


def cmd_bass(pb, args):
    N = _module(pb, args.module)
    ext = bass_numbers_ext(N, args.steps).values
    dual = minimal_resolution(matlis_dual(N), args.steps).betti
    return {
        "module": args.module,
        "steps": args.steps,
        "bass": _series(ext, 0),
        "routes": {"ext_k_N": ext, "betti_of_dual": dual},
        "routes_agree": ext == dual,
    }, ext == dual


def cmd_tate_bass(pb, args):
    N = _module(pb, args.module)
    gorenstein_form(pb.ring)
    dual = tate_bass(N, args.lo, args.hi).values
    ext = tate_bass_ext(N, args.lo, args.hi).values
    return {
        "module": args.module,
        "window": [args.lo, args.hi],
        "tate_bass": _series(dual, args.lo),
        "routes": {"dual_complete_resolution": dual, "hom_T_k_N": ext},
        "routes_agree": dual == ext,
    }, dual == ext


def _binary(pb, args, fn, key):
    M = _module(pb, args.module)
    N = _module(pb, args.other, "--with")
    rep = fn(M, N, args.lo, args.hi)
    return {"module": args.module, "with": args.other, "window": [args.lo, args.hi], key: _series(rep.values, args.lo)}, True


def cmd_ext_hat(pb, args):
    return _binary(pb, args, ext_hat, "ext_hat")


def cmd_tor_hat(pb, args):
    return _binary(pb, args, tor_hat, "tor_hat")


def cmd_dual(pb, args):
    M = _module(pb, args.module)
    D = matlis_dual(M)
    can = double_dual_map(M)
    ok = can.is_linear() and M.field.is_invertible(can.matrix)
    return {
        "module": args.module,
        "dim": M.dim,
        "dual_dim": D.dim,
        "dual_actions": {v: A.tolist() for v, A in zip(pb.ring.variables, D.actions)},
        "betti_dual": _series(minimal_resolution(D, args.steps).betti, 0),
        "double_dual_canonical_iso": ok,
    }, ok


def cmd_periodicity(pb, args):
    M = _module(pb, args.module)
    res = minimal_resolution(M, args.steps)
    cert = detect_complex_periodicity(res, args.max_period, seed=args.seed)
    out = {
        "module": args.module,
        "steps": args.steps,
        "max_period": args.max_period,
        "seed": args.seed,
        "betti": _series(res.betti, 0),
        "resolution_certificate": None if cert is None else cert.as_dict(),
    }
    if ring_invariants(pb.ring).is_gorenstein:
        T = complete_resolution(M, args.lo, args.hi)
        tcert = detect_complex_periodicity(T, args.max_period, seed=args.seed)
        vals = [T.complex.ranks[n] for n in range(args.lo, args.hi + 1)]
        inv = invariant_periodicity(vals, min(args.max_period, len(vals) // 2), start=args.lo)
        out["window"] = [args.lo, args.hi]
        out["tate_betti"] = _series(vals, args.lo)
        out["complete_resolution_certificate"] = None if tcert is None else tcert.as_dict()
        out["tate_betti_period"] = None if inv is None else inv.s
    return out, True


def cmd_verify(pb, args):
    if args.suite is None:
        raise InputError(f"--suite is required; choose from {', '.join(SUITES)}")
    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    rep = run_suite(
        args.suite,
        pb.ring,
        seed=args.seed,
        pairs=args.pairs,
        named=pb.modules,
        lo=args.lo_raw,
        hi=args.hi_raw,
        steps=args.steps,
        max_period=args.max_period,
    )
    return rep.as_dict(), not rep.failed


HANDLERS = {
    "resolve": cmd_resolve,
    "tate-betti": cmd_tate_betti,
    "bass": cmd_bass,
    "tate-bass": cmd_tate_bass,
    "ext-hat": cmd_ext_hat,
    "tor-hat": cmd_tor_hat,
    "dual": cmd_dual,
    "periodicity": cmd_periodicity,
    "verify": cmd_verify,
}


def _render_table(report: dict) -> str:
    lines = [f"tatebetti {report['version']}  {report['command']}  {report['problem']}"]
    ring = report["ring"]
    lines.append(
        f"ring: F_{ring['p']}[{', '.join(ring['vars'])}]/({', '.join(ring['groebner_basis'])})  "
        f"dim={ring['dim']}  socle={ring['socle_dim']}  embdim={ring['embedding_dim']}  "
        f"gorenstein={ring['is_gorenstein']}  hypersurface={ring['is_hypersurface']}"
    )
    res = report["result"]
    series_keys = [k for k, v in res.items() if isinstance(v, dict) and v and all(isinstance(x, int) for x in v.values())]
    if series_keys:
        degrees = list(res[series_keys[0]].keys())
        width = max(4, *(len(d) for d in degrees), *(len(str(v)) for k in series_keys for v in res[k].values()))
        label_w = max(len(k) for k in series_keys + ["n"])
        lines.append(f"{'n':>{label_w}} | " + " ".join(f"{d:>{width}}" for d in degrees))
        lines.append("-" * (label_w + 3 + (width + 1) * len(degrees)))
        for k in series_keys:
            lines.append(f"{k:>{label_w}} | " + " ".join(f"{res[k].get(d, ''):>{width}}" for d in degrees))
    for k, v in res.items():
        if k in series_keys or k in ("instances", "differentials", "dual_actions", "status"):
            continue
        lines.append(f"{k}: {json.dumps(v)}")
    if "instances" in res:
        for inst in res["instances"]:
            extra = {k: v for k, v in inst.items() if k not in ("instance", "verdict")}
            lines.append(f"  [{inst['verdict']}] {inst['instance']}  {json.dumps(extra)}")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tatebetti", description="Betti, Tate-Betti, Bass and Tate-Bass numbers over Artinian local rings.")
    ap.add_argument("--version", action="version", version=f"tatebetti {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("problem", help="JSON problem file")
    ap.add_argument("--module")
    ap.add_argument("--with", dest="other")
    ap.add_argument("--steps", type=int, default=8)
    ap.add_argument("--from", dest="lo_raw", type=int)
    ap.add_argument("--to", dest="hi_raw", type=int)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-period", type=int, default=6)
    ap.add_argument("--suite")
    ap.add_argument("--pairs", type=int, default=10)
    ap.add_argument("--format", choices=("table", "json"), default="table")
    return ap


FLAG_NAMES = (
    ("module", "module"),
    ("with", "other"),
    ("steps", "steps"),
    ("from", "lo_raw"),
    ("to", "hi_raw"),
    ("seed", "seed"),
    ("max_period", "max_period"),
    ("suite", "suite"),
    ("pairs", "pairs"),
)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.lo = -6 if args.lo_raw is None else args.lo_raw
    args.hi = 6 if args.hi_raw is None else args.hi_raw
    try:
        if args.steps < 0:
            raise InputError("--steps must be non-negative")
        explicit = args.lo_raw is not None or args.hi_raw is not None
        if (args.command != "verify" or explicit) and not args.lo < 0 <= args.hi:
            raise InputError("window must satisfy --from < 0 <= --to")
        if args.pairs < 1 or args.max_period < 1:
            raise InputError("--pairs and --max-period must be positive")
        pb = load_problem(args.problem)
        result, ok = HANDLERS[args.command](pb, args)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 2
    except InvariantViolation as exc:
        print(f"verification failure: {exc}", file=err)
        return 1
    status = result.get("status") if args.command == "verify" else ("ok" if ok else "FAIL")
    report = {
        "tool": "tatebetti",
        "version": __version__,
        "command": args.command,
        "problem": args.problem,
        "flags": {
            name: getattr(args, k)
            for name, k in FLAG_NAMES
            if getattr(args, k) is not None
        },
        "ring": _ring_info(pb.ring),
        "result": result,
        "status": status,
    }
    if args.format == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(_render_table(report) + "\n")
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
