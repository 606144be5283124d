"""Chamber-by-chamber classes of moduli of triples of type (n, 1).

The top chamber is the union of the strata of the flip locus below the upper
endpoint; every lower chamber follows from

    [N_{sigma_c -}] = [N_{sigma_c +}] - [S_{sigma_c +}] + [S_{sigma_c -}].

All classes are memoized in a :class:`ClassCache` under canonical keys, and
every stored class carries a certificate whose ``named`` leaves are other
cache keys.
"""
from __future__ import annotations

import json
import logging
import math
import os
import tempfile
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import domain as dm
from . import motive_expr as mx
from .classed import ZERO_C, Classed, csum
from .domain import PairProblem
from .poly import ClassPoly
from .strata import MINUS, PLUS, StratumResult, enumerate_types, stratum_class

log = logging.getLogger(__name__)

CACHE_VERSION = 1
CACHE_ENV = "MOTIVIC_PAIRS_CACHE"


class WallValue(ValueError):
    """A chamber class was requested at a critical value."""


class MissingIngredient(RuntimeError):
    pass


class CacheConflict(RuntimeError):
    pass


@dataclass(frozen=True)
class ChamberKey:
    g: int
    n: int
    d: int
    d0: int = 0
    chamber: Optional[int] = None
    wall: Optional[Fraction] = None

    def __post_init__(self):
        if (self.chamber is None) == (self.wall is None):
            raise ValueError("give exactly one of chamber and wall")

    def canonical(self) -> str:
        d = self.d - self.n * self.d0
        if self.chamber is not None:
            return f"N:g{self.g}:n{self.n}:d{d}:c{self.chamber}"
        return f"W:g{self.g}:n{self.n}:d{d}:s{self.wall}"


class ClassCache:
    """Thread-safe map from canonical keys to (class, certificate).

    Writing a key twice is allowed only with an identical class.
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self._lock = threading.Lock()
        self._polys: Dict[str, ClassPoly] = {}
        self._certs: Dict[str, mx.MotiveExpr] = {}
        self._cert_text: Dict[str, str] = {}
        if path and os.path.exists(path):
            self._load(path)

    def _load(self, path: str) -> None:
        with open(path) as fh:
            data = json.load(fh)
        if data.get("version") != CACHE_VERSION:
            log.warning("ignoring cache %s with version %r", path, data.get("version"))
            return
        for key, entry in data.get("entries", {}).items():
            self._polys[key] = ClassPoly.from_json_obj(entry["class"])
            self._cert_text[key] = entry["certificate"]

    def __contains__(self, key: str) -> bool:
        with self._lock:
            return key in self._polys

    def __len__(self) -> int:
        return len(self._polys)

    def keys(self) -> List[str]:
        with self._lock:
            return sorted(self._polys)

    def get(self, key: str) -> Optional[ClassPoly]:
        with self._lock:
            return self._polys.get(key)

    def certificate(self, key: str) -> mx.MotiveExpr:
        with self._lock:
            cert = self._certs.get(key)
            if cert is None:
                cert = mx.parse(self._cert_text[key])
                self._certs[key] = cert
            return cert

    def put(self, key: str, value: Classed) -> None:
        with self._lock:
            old = self._polys.get(key)
            if old is not None:
                if old != value.poly:
                    raise CacheConflict(f"two different classes for {key}")
                return
            self._polys[key] = value.poly
            self._certs[key] = value.cert

    def save(self, path: Optional[str] = None) -> None:
        path = path or self.path
        if not path:
            return
        with self._lock:
            entries = {}
            for key in sorted(self._polys):
                text = self._cert_text.get(key)
                if text is None:
                    text = mx.serialize(self._certs[key])
                    self._cert_text[key] = text
                entries[key] = {"class": self._polys[key].to_json_obj(), "certificate": text}
        payload = {"version": CACHE_VERSION, "entries": entries}
        folder = os.path.dirname(os.path.abspath(path))
        os.makedirs(folder, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=folder, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, path)


def default_cache_path() -> Optional[str]:
    return os.environ.get(CACHE_ENV) or None


class WallCrossingEngine:
    """Classes of N_sigma(n, 1, d, d0), of bundle moduli and of pair moduli for one genus."""

    def __init__(self, g: int, cache: Optional[ClassCache] = None, jobs: int = 1):
        if g < 2:
            raise ValueError("genus must be at least 2")
        self.g = g
        self.cache = cache if cache is not None else ClassCache()
        self.jobs = max(1, int(jobs))
        self._key_locks: Dict[str, threading.RLock] = {}
        self._locks_guard = threading.Lock()
        self.strata_details: Dict[str, List[StratumResult]] = {}
        self.jac = Classed(*dm.cls_jacobian(g))

    @property
    def notes(self) -> List[str]:
        if self.g == 2:
            return ["g=2: the vanishing and smoothness hypotheses used for the bundle "
                    "background are stated for g>=3; results at g=2 rely on them holding"]
        return []

    # memo plumbing

    def _lock_for(self, key: str) -> threading.RLock:
        with self._locks_guard:
            lk = self._key_locks.get(key)
            if lk is None:
                lk = self._key_locks[key] = threading.RLock()
            return lk

    def _memo(self, key: str, compute) -> Classed:
        hit = self.cache.get(key)
        if hit is not None:
            return Classed.named(key, hit)
        with self._lock_for(key):
            hit = self.cache.get(key)
            if hit is None:
                value = compute()
                self.cache.put(key, value)
                hit = value.poly
        return Classed.named(key, hit)

    def resolve(self, key: str) -> mx.MotiveExpr:
        return self.cache.certificate(key)

    def check_certificate(self, value: Classed) -> bool:
        return mx.evaluate(value.cert, self.g, self.resolve) == value.poly

    # problems

    def problem(self, n: int, d: int, d0: int = 0) -> PairProblem:
        return PairProblem(self.g, n, d, d0).normalized()

    def _empty(self, p: PairProblem) -> bool:
        lo, hi = dm.sigma_range(p)
        return p.n > 1 and not lo < hi

    # strata

    def strata(self, p: PairProblem, sigma, side: str) -> Classed:
        p = p.normalized()
        sigma = Fraction(sigma)
        key = f"S:g{self.g}:n{p.n}:d{p.d}:s{sigma}:{side}"

        def compute() -> Classed:
            types = enumerate_types(p, sigma, side)
            if self.jobs > 1 and len(types) > 1:
                with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                    results = list(pool.map(lambda t: stratum_class(t, self), types))
            else:
                results = [stratum_class(t, self) for t in types]
            self.strata_details[key] = results
            return csum(r.value for r in results)

        return self._memo(key, compute)

    def strata_results(self, p: PairProblem, sigma, side: str) -> List[StratumResult]:
        """Per-type results, recomputed when the sum came from a stored cache."""
        p = p.normalized()
        sigma = Fraction(sigma)
        key = f"S:g{self.g}:n{p.n}:d{p.d}:s{sigma}:{side}"
        if key not in self.strata_details:
            self.strata_details[key] = [stratum_class(t, self) for t in enumerate_types(p, sigma, side)]
        return self.strata_details[key]

    # chambers

    def chamber(self, p: PairProblem, index: int) -> Classed:
        """Class of the index-th chamber (0 = bottom) by descent from the top."""
        p = p.normalized()
        ws = dm.walls(p)
        if not 0 <= index <= len(ws):
            raise ValueError(f"chamber index {index} out of range 0..{len(ws)}")
        key = ChamberKey(self.g, p.n, p.d, 0, chamber=index).canonical()

        def compute() -> Classed:
            if p.n == 1:
                return Classed(*dm.cls_sym_curve(p.d, self.g)) * self.jac
            if self._empty(p):
                return ZERO_C
            lo, hi = dm.sigma_range(p)
            if index == len(ws):
                return self.strata(p, hi, MINUS)
            w = ws[index].sigma
            above = self.chamber(p, index + 1)
            return above - self.strata(p, w, PLUS) + self.strata(p, w, MINUS)

        if p.n > 1 and not self._empty(p):
            # fill from the top so the recursion depth stays at one
            for k in range(len(ws), index, -1):
                self.chamber(p, k)
        return self._memo(key, compute)

    def chambers(self, p: PairProblem) -> List[Classed]:
        p = p.normalized()
        return [self.chamber(p, k) for k in range(len(dm.walls(p)) + 1)]

    def nclass(self, p: PairProblem, sigma) -> Classed:
        sigma = _exact(sigma)
        lo, hi = dm.sigma_range(p)
        if dm.is_wall(p, sigma):
            raise WallValue(f"sigma={sigma} is a critical value; use nclass_stable_at_wall")
        if not dm._in_open(sigma, lo, hi):
            raise ValueError(f"sigma={sigma} outside ({lo}, {hi})")
        return self.chamber(p, dm.chamber_index(p, sigma))

    def nclass_stable_at_wall(self, p: PairProblem, sigma) -> Classed:
        sigma = _exact(sigma)
        if not dm.is_wall(p, sigma):
            return self.nclass(p, sigma)
        return self._stable_at_wall(p.normalized(), sigma)

    def _stable_at_wall(self, p: PairProblem, sigma: Fraction) -> Classed:
        ws = [w.sigma for w in dm.walls(p)]
        idx = ws.index(sigma) + 1
        key = ChamberKey(self.g, p.n, p.d, 0, wall=sigma).canonical()
        return self._memo(key, lambda: self.chamber(p, idx) - self.strata(p, sigma, PLUS))

    # class provider for the strata engine

    def residual(self, n: int, d: int, d0: int, sigma: Fraction) -> Tuple[Classed, bool]:
        """[N^s_sigma(n, 1, d, d0)] and whether it was pruned as empty."""
        if n == 0:
            return self.jac, False
        raw = PairProblem(self.g, n, d, d0)
        lo, hi = dm.sigma_range(raw)
        if not dm._in_open(sigma, lo, hi):
            return ZERO_C, True
        # twisting to d0 = 0 leaves sigma and the walls unchanged
        p = raw.normalized()
        if n == 1:
            return self.chamber(p, 0), False
        if dm.is_wall(p, sigma):
            return self._stable_at_wall(p, sigma), False
        return self.chamber(p, dm.chamber_index(p, sigma)), False

    def bundle(self, n: int, d: int) -> Classed:
        """[M^s(n, d)] via the bottom chamber of a problem with large slope."""
        if n == 1:
            return self.jac
        D = _large_degree(n, d, self.g)
        key = f"M:g{self.g}:n{n}:r{d % n}"
        return self._memo(key, lambda: self._bundle_at(n, D))

    def _bundle_at(self, n: int, D: int) -> Classed:
        p = self.problem(n, D)
        um = self.chamber(p, 0) - self.dm_class(p)
        b = D + n * (1 - self.g) - 1
        fib = self.jac * Classed(*dm.cls_projective(b))
        return um.div_exact(fib)

    def msbundle_class(self, n: int, d: int, twist: int = 0, check_twist: bool = False) -> Classed:
        if math.gcd(n, d) != 1:
            raise dm.NotCoprime(f"gcd({n}, {d}) != 1")
        if n > 3:
            raise MissingIngredient("bundle classes are provided for rank at most 3")
        if twist == 0 and not check_twist:
            return self.bundle(n, d)
        if n == 1:
            return self.jac
        D = _large_degree(n, d, self.g) + twist * n
        value = self._bundle_at(n, D)
        if check_twist:
            other = self._bundle_at(n, D + n)
            assert value.poly == other.poly, f"twist invariance fails for M({n},{d})"
        return value

    # bottom chamber

    def dm_class(self, p: PairProblem) -> Classed:
        p = p.normalized()
        key = f"D:g{self.g}:n{p.n}:d{p.d}"
        if p.n == 1 or self._empty(p):
            return self._memo(key, lambda: ZERO_C)
        lo, _ = dm.sigma_range(p)

        def compute() -> Classed:
            types = [t for t in enumerate_types(p, lo, PLUS)
                     if not (t.b == 1 and t.pieces[0][0] == p.n)]
            try:
                results = [stratum_class(t, self) for t in types]
            except dm.NegativeExtDim as exc:
                # below slope 2g-2 the fibres are not governed by the Euler form
                raise MissingIngredient(f"bottom-chamber strata of {p}: {exc}") from exc
            self.strata_details[key] = results
            return csum(r.value for r in results)

        return self._memo(key, compute)

    def um_route(self, p: PairProblem) -> str:
        p = p.normalized()
        if p.n == 1 or (math.gcd(p.n, p.d) == 1 and Fraction(p.d, p.n) > 2 * self.g - 2):
            return "direct"
        return "subtraction"

    def um_class(self, p: PairProblem) -> Classed:
        p = p.normalized()
        key = f"U:g{self.g}:n{p.n}:d{p.d}"

        def compute() -> Classed:
            if self._empty(p):
                return ZERO_C
            if self.um_route(p) == "direct":
                b = p.d + p.n * (1 - self.g) - 1
                return self.bundle(p.n, p.d) * self.jac * Classed(*dm.cls_projective(b))
            return self.chamber(p, 0) - self.dm_class(p)

        return self._memo(key, compute)

    def ascent(self, p: PairProblem) -> List[Classed]:
        """Chamber classes going up from um + dm; a consistency check only."""
        p = p.normalized()
        if p.n == 1:
            return [self.um_class(p)]
        cur = self.um_class(p) + self.dm_class(p)
        out = [cur]
        for w in dm.walls(p):
            cur = cur - self.strata(p, w.sigma, MINUS) + self.strata(p, w.sigma, PLUS)
            out.append(cur)
        return out

    # pairs

    def pairs_class(self, n: int, d: int, tau=None, chamber: Optional[int] = None) -> Classed:
        p = self.problem(n, d)
        if (tau is None) == (chamber is None):
            raise ValueError("give exactly one of tau and chamber")
        if chamber is None:
            sigma = p.tau_to_sigma(_exact(tau))
            if dm.is_wall(p, sigma):
                raise WallValue(f"tau={tau} is a critical value")
            chamber = dm.chamber_index(p, sigma)
        key = f"P:g{self.g}:n{n}:d{d}:c{chamber}"
        return self._memo(key, lambda: self.chamber(p, chamber).div_exact(self.jac))


def _exact(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("parameters must be exact rationals, not floats")
    return Fraction(x)


def _large_degree(n: int, d: int, g: int) -> int:
    """Smallest D = d mod n with D/n > 2g - 1."""
    D = d % n
    while Fraction(D, n) <= 2 * g - 1:
        D += n
    return D
