"""Oracle comparisons and internal consistency checks shared by the CLI."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from . import domain as dm
from .lambda_ops import lambda_k
from .oracles import (OracleReport, hn_coprime_bundle_class, macdonald_sym_curve,
                      rank2_poincare_closed_form, squarefree_config_count)
from .configurations import decorated_config_quotient_class
from .poly import ONE, L, curve, poincare
from .wallcross import WallCrossingEngine

GRIDS: Dict[str, Dict] = {
    "small": {"g": 2, "problems": [(2, 5), (2, 6), (2, 7), (3, 5), (3, 6), (3, 7)],
              "bundles": [(2, 1), (3, 1), (3, 2)]},
    "full": {"g": 2, "problems": [(n, d) for n in (2, 3) for d in range(4, 10)]
             + [(4, 13), (4, 14)], "bundles": [(2, 1), (3, 1), (3, 2)]},
}


@dataclass
class CheckResult:
    name: str
    inputs: Dict
    passed: bool
    detail: str = ""

    def to_json_obj(self) -> dict:
        return {"name": self.name, "inputs": self.inputs, "pass": self.passed, "detail": self.detail}


def is_palindromic_nonnegative(coeffs: Sequence[int]) -> bool:
    return list(coeffs) == list(coeffs)[::-1] and all(c >= 0 for c in coeffs)


def oracle_reports(g: int, bundles: Sequence[Tuple[int, int]], engine: WallCrossingEngine) -> List[OracleReport]:
    out = []
    for k in range(9):
        out.append(OracleReport("macdonald", {"g": g, "k": k},
                                macdonald_sym_curve(k, g), lambda_k(curve(g), k)))
    for k in range(1, 6):
        out.append(OracleReport("squarefree", {"k": k}, squarefree_config_count(k),
                                decorated_config_quotient_class([(L, ONE, k)])))
    for n, d in bundles:
        out.append(OracleReport("hn-bundle", {"g": g, "n": n, "d": d},
                                hn_coprime_bundle_class(n, d, g), engine.msbundle_class(n, d).poly))
    return out


def consistency_checks(engine: WallCrossingEngine, problems: Sequence[Tuple[int, int]]) -> List[CheckResult]:
    out = []
    g = engine.g
    for n, d in problems:
        p = engine.problem(n, d)
        inputs = {"g": g, "n": n, "d": d}
        chambers = engine.chambers(p)
        dim = dm.moduli_dim(p)
        for k, c in enumerate(chambers):
            top = c.poly.q_degree()
            ok = top == dim and c.poly.coeff(top, top) == 1
            out.append(CheckResult("dimension", dict(inputs, chamber=k), ok, f"top degree {top}, expected {dim}"))
            out.append(CheckResult("poincare", dict(inputs, chamber=k),
                                   is_palindromic_nonnegative(poincare(c.poly))))
            out.append(CheckResult("certificate", dict(inputs, chamber=k), engine.check_certificate(c)))
        if n <= 3:
            try:
                up = engine.ascent(p)
                ok = [a.poly for a in up] == [c.poly for c in chambers]
                out.append(CheckResult("ascent", inputs, ok, engine.um_route(p)))
            except Exception as exc:  # reported, not raised
                out.append(CheckResult("ascent", inputs, False, f"{type(exc).__name__}: {exc}"))
    return out


def rank2_closed_form_check(g: int, engine: WallCrossingEngine) -> CheckResult:
    got = poincare(engine.msbundle_class(2, 1).poly)
    return CheckResult("rank2-closed-form", {"g": g}, got == rank2_poincare_closed_form(g))


def run_grid(name: str, engine: WallCrossingEngine = None) -> Tuple[List[OracleReport], List[CheckResult]]:
    grid = GRIDS[name]
    engine = engine or WallCrossingEngine(grid["g"])
    oracles = oracle_reports(grid["g"], grid["bundles"], engine)
    checks = consistency_checks(engine, grid["problems"])
    checks.append(rank2_closed_form_check(grid["g"], engine))
    return oracles, checks
