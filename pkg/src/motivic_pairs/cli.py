"""Command line: walls, stratum types, chamber classes, pair classes and checks.

    python3 -m motivic_pairs walls --g 2 --n 2 --d 5
    python3 -m motivic_pairs class --g 2 --n 2 --d 5 --chamber top --output plain
    python3 -m motivic_pairs pairs --g 2 --n 2 --d 5 --tau 3
    python3 -m motivic_pairs check --grid small

Exit status: 0 success, 1 failed checks, 2 usage errors, 3 engine errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from . import domain as dm
from . import motive_expr as mx
from .checks import GRIDS, run_grid
from .classed import Classed
from .domain import NegativeExtDim, PairProblem
from .poly import NonExactDivision, poincare
from .strata import MINUS, PLUS, UnsupportedShape, enumerate_types
from .wallcross import (CacheConflict, ClassCache, MissingIngredient, WallCrossingEngine,
                        WallValue, default_cache_path)

EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_ENGINE = 3

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
ENGINE_ERRORS = (NonExactDivision, MissingIngredient, NegativeExtDim, CacheConflict, UnsupportedShape)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    g: int = 2
    n: int = 1
    d: int = 0
    d0: int = 0
    selector: Optional[str] = None
    sigma: Optional[str] = None
    side: str = "both"
    grid: str = "small"
    output: str = "json"
    cache: Optional[str] = None
    jobs: int = 1
    verbose: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.g < 2:
            raise UsageError("--g must be at least 2")
        if self.command not in ("check",) and not 1 <= self.n <= 4:
            raise UsageError("--n must satisfy 1 <= n <= 4")


def parse_rational(text: str) -> Fraction:
    """Exact "p/q" or integer; decimal notation is refused."""
    text = text.strip()
    if not _RATIONAL.match(text):
        raise UsageError(f"expected an exact rational like 7/2, got {text!r}")
    value = Fraction(text)
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="motivic-pairs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, problem: bool = True) -> None:
        p.add_argument("--g", type=int, required=problem, default=2)
        if problem:
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--d", type=int, required=True)
            p.add_argument("--d0", type=int, default=0)
        p.add_argument("--output", choices=("json", "plain"), default="json")
        p.add_argument("--cache", default=None, help="cache file (default from $MOTIVIC_PAIRS_CACHE)")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--verbose", action="store_true")

    common(sub.add_parser("walls", help="critical values"))
    types = sub.add_parser("types", help="stratum types and classes at walls")
    common(types)
    types.add_argument("--sigma", default=None, help="wall or endpoint; all of them by default")
    types.add_argument("--side", choices=("plus", "minus", "both"), default="both")
    for name in ("class", "pairs"):
        p = sub.add_parser(name, help=f"class of the moduli space ({name})")
        common(p)
        sel = p.add_mutually_exclusive_group(required=True)
        sel.add_argument("--sigma" if name == "class" else "--tau", dest="param")
        sel.add_argument("--chamber", help="index, 'top' or 'bottom'")
        if name == "class":
            sel.add_argument("--at-wall", dest="at_wall", help="stable locus at a wall")
    check = sub.add_parser("check", help="oracle and consistency suite")
    common(check, problem=False)
    check.add_argument("--grid", choices=sorted(GRIDS), default="small")
    return parser


def _chamber_index(p: PairProblem, text: str) -> int:
    count = len(dm.walls(p))
    if text == "top":
        return count
    if text == "bottom":
        return 0
    if not re.match(r"^\d+$", text):
        raise UsageError(f"--chamber takes an index, 'top' or 'bottom', not {text!r}")
    k = int(text)
    if k > count:
        raise UsageError(f"chamber index {k} out of range 0..{count}")
    return k


def _poly_text(c) -> str:
    return c.to_q_str() if c.is_tate() else c.to_str()


def _class_payload(engine: WallCrossingEngine, value: Classed, dim: int, key: Optional[str]) -> dict:
    poly = value.poly
    cert = engine.cache.certificate(key) if key else value.cert
    return {
        "e_polynomial": poly.to_json_obj(),
        "poincare": poincare(poly),
        "euler": poly.euler(),
        "dimension": dim,
        "top_q_degree": poly.q_degree(),
        "key": key,
        "certificate": mx.serialize(cert),
        "certificate_ok": engine.check_certificate(value),
    }


def _emit(cfg: RunConfig, payload, plain_lines: List[str]) -> None:
    if cfg.output == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(plain_lines))


def _plain_class(payload: dict, value: Classed) -> List[str]:
    return [f"E = {_poly_text(value.poly)}",
            "P = " + " ".join(str(c) for c in payload["poincare"]),
            f"euler = {payload['euler']}",
            f"dim = {payload['dimension']}",
            f"certificate = {payload['certificate']}"]


def run(cfg: RunConfig) -> int:
    cfg.validate()
    cache = ClassCache(cfg.cache or default_cache_path())
    engine = WallCrossingEngine(cfg.g, cache, cfg.jobs)
    try:
        status = _dispatch(cfg, engine)
    finally:
        cache.save()
    return status


def _dispatch(cfg: RunConfig, engine: WallCrossingEngine) -> int:
    if cfg.command == "check":
        return _check(cfg, engine)
    p = PairProblem(cfg.g, cfg.n, cfg.d, cfg.d0)
    notes = engine.notes
    if cfg.command == "walls":
        ws = dm.walls(p)
        payload = [{"sigma": str(w.sigma), "mu_c": str(w.mu_c)} for w in ws]
        _emit(cfg, payload, [f"sigma={w.sigma} mu_c={w.mu_c}" for w in ws])
        return 0
    if cfg.command == "types":
        lo, hi = dm.sigma_range(p)
        if cfg.sigma is not None:
            points = [parse_rational(cfg.sigma)]
        else:
            points = [lo] + [w.sigma for w in dm.walls(p)] + ([hi] if p.n > 1 else [])
        sides = (PLUS, MINUS) if cfg.side == "both" else (cfg.side,)
        payload, lines = [], []
        engine.chambers(p)
        for s in points:
            for side in sides:
                try:
                    results = engine.strata_results(p, s, side) if s != lo else \
                        [_stratum(engine, t) for t in enumerate_types(p, s, side)]
                except ValueError as exc:
                    if isinstance(exc, ENGINE_ERRORS):
                        raise
                    raise UsageError(str(exc)) from exc
                for r in results:
                    obj = r.to_json_obj()
                    if not cfg.verbose:
                        obj.pop("emptiness_assumed")
                    payload.append(obj)
                    lines.append(f"sigma={s} {side} pieces={list(r.type.pieces)} a={[list(x) for x in r.type.a]} "
                                 f"n'={r.type.n_prime} d'={r.type.d_prime} |S|={obj['group_order']} "
                                 f"class={_poly_text(r.value.poly)}")
        _emit(cfg, {"types": payload, "notes": notes}, lines + notes)
        return 0
    if cfg.command == "class":
        pn = p.normalized()
        if cfg.extra.get("at_wall"):
            s = parse_rational(cfg.extra["at_wall"])
            if not dm.is_wall(p, s):
                raise UsageError(f"sigma={s} is not a wall")
            value = engine.nclass_stable_at_wall(p, s)
        elif cfg.extra.get("param") is not None:
            s = parse_rational(cfg.extra["param"])
            try:
                value = engine.nclass(p, s)
            except WallValue as exc:
                raise UsageError(str(exc)) from exc
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        else:
            value = engine.chamber(pn, _chamber_index(pn, cfg.selector))
        key = value.cert.value if value.cert.kind == mx.NAMED else None
        payload = _class_payload(engine, value, dm.moduli_dim(p), key)
        payload["notes"] = notes
        _emit(cfg, payload, _plain_class(payload, value) + notes)
        return 0
    if cfg.command == "pairs":
        pn = p.normalized()
        if cfg.d0:
            raise UsageError("pairs are defined for d0 = 0")
        if cfg.extra.get("param") is not None:
            tau = parse_rational(cfg.extra["param"])
            sigma = p.tau_to_sigma(tau)
            if dm.is_wall(p, sigma):
                raise UsageError(f"tau={tau} is a critical value")
            lo, hi = dm.sigma_range(p)
            if not dm._in_open(sigma, lo, hi):
                raise UsageError(f"tau={tau} outside the parameter range")
            value = engine.pairs_class(p.n, p.d, tau=tau)
        else:
            value = engine.pairs_class(p.n, p.d, chamber=_chamber_index(pn, cfg.selector))
        dim = dm.moduli_dim(p) - cfg.g
        payload = _class_payload(engine, value, dim, value.cert.value)
        payload["notes"] = notes
        _emit(cfg, payload, _plain_class(payload, value) + notes)
        return 0
    raise UsageError(f"unknown command {cfg.command}")


def _stratum(engine, t):
    from .strata import stratum_class
    return stratum_class(t, engine)


def _check(cfg: RunConfig, engine: WallCrossingEngine) -> int:
    grid = GRIDS[cfg.grid]
    if grid["g"] != engine.g:
        engine = WallCrossingEngine(grid["g"], engine.cache, engine.jobs)
    oracles, checks = run_grid(cfg.grid, engine)
    failed = [r for r in oracles if not r.passed] + [c for c in checks if not c.passed]
    payload = {"grid": cfg.grid, "oracles": [r.to_json_obj() for r in oracles],
               "checks": [c.to_json_obj() for c in checks], "failures": len(failed)}
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name} {json.dumps(r.inputs, sort_keys=True)}"
             for r in oracles + checks]
    lines.append(f"{len(failed)} failure(s)")
    if not cfg.verbose and cfg.output == "json":
        for r in payload["oracles"]:
            r.pop("expected")
            r.pop("actual")
    _emit(cfg, payload, lines)
    return EXIT_FAILED if failed else 0


def config_from_args(argv: Optional[List[str]] = None) -> RunConfig:
    args = _build_parser().parse_args(argv)
    extra = {}
    for name in ("param", "at_wall"):
        if getattr(args, name, None) is not None:
            extra[name] = getattr(args, name)
    return RunConfig(
        command=args.command, g=args.g, n=getattr(args, "n", 1), d=getattr(args, "d", 0),
        d0=getattr(args, "d0", 0), selector=getattr(args, "chamber", None),
        sigma=getattr(args, "sigma", None), side=getattr(args, "side", "both"),
        grid=getattr(args, "grid", "small"), output=args.output, cache=args.cache,
        jobs=args.jobs, verbose=args.verbose, extra=extra)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        cfg = config_from_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if cfg.verbose else logging.WARNING)
    try:
        return run(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ENGINE_ERRORS as exc:
        print(f"engine error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
