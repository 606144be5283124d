import json
from fractions import Fraction

import pytest

from motivic_pairs import domain as dm
from motivic_pairs import motive_expr as mx
from motivic_pairs.checks import is_palindromic_nonnegative
from motivic_pairs.classed import Classed
from motivic_pairs.domain import PairProblem
from motivic_pairs.lambda_ops import lambda_k
from motivic_pairs.poly import ClassPoly, curve, poincare
from motivic_pairs.strata import MINUS, PLUS
from motivic_pairs.wallcross import (CACHE_VERSION, CacheConflict, ChamberKey, ClassCache,
                                     MissingIngredient, WallCrossingEngine, WallValue)


def test_chamber_key_canonical():
    assert ChamberKey(2, 2, 5, chamber=1).canonical() == "N:g2:n2:d5:c1"
    assert ChamberKey(2, 3, 7, wall=Fraction(9, 2)).canonical() == "W:g2:n3:d7:s9/2"
    with pytest.raises(ValueError):
        ChamberKey(2, 2, 5)
    with pytest.raises(ValueError):
        ChamberKey(2, 2, 5, chamber=0, wall=Fraction(4))


def test_rank_one_chamber(engine2):
    p = PairProblem(2, 1, 5)
    jac = dm.jacobian_poly(2)
    assert engine2.nclass(p, 100).poly == lambda_k(curve(2), 5) * jac
    assert engine2.nclass_stable_at_wall(PairProblem(2, 1, 2), 4).poly == lambda_k(curve(2), 2) * jac


def test_top_chamber_2_5(engine2):
    p = PairProblem(2, 2, 5)
    top = engine2.nclass(p, Fraction(17, 2))
    assert top.poly.q_degree() == 9
    assert is_palindromic_nonnegative(poincare(top.poly))


def test_chamber_invariance(engine2):
    p = PairProblem(2, 2, 5)
    assert engine2.nclass(p, Fraction(9, 2)).poly == engine2.nclass(p, 6).poly
    assert engine2.nclass(p, 3).poly == engine2.nclass(p, Fraction(39, 10)).poly


def test_wall_value_and_range(engine2):
    p = PairProblem(2, 2, 5)
    with pytest.raises(WallValue):
        engine2.nclass(p, 4)
    with pytest.raises(ValueError):
        engine2.nclass(p, 11)
    with pytest.raises(TypeError):
        engine2.nclass(p, 5.5)


def test_stable_at_wall(engine2):
    p = PairProblem(2, 2, 5)
    for w in dm.walls(p):
        idx = dm.chamber_index(p, w.sigma + Fraction(1, 100))
        above = engine2.chamber(p, idx)
        expect = above - engine2.strata(p, w.sigma, PLUS)
        assert engine2.nclass_stable_at_wall(p, w.sigma).poly == expect.poly
        # crossing the wall from either side reaches the same stable locus
        below = engine2.chamber(p, idx - 1)
        assert (below - engine2.strata(p, w.sigma, MINUS)).poly == expect.poly
    assert engine2.nclass_stable_at_wall(p, 6).poly == engine2.nclass(p, 6).poly


def test_flip_relation(engine2):
    p = PairProblem(2, 3, 7)
    chambers = engine2.chambers(p)
    for k, w in enumerate(dm.walls(p)):
        lhs = chambers[k] - chambers[k + 1]
        rhs = engine2.strata(p, w.sigma, MINUS) - engine2.strata(p, w.sigma, PLUS)
        assert lhs.poly == rhs.poly


def test_um_dm_rank_one(engine2):
    p = PairProblem(2, 1, 5)
    jac = dm.jacobian_poly(2)
    um = engine2.um_class(p)
    assert um.poly == jac * jac * dm.projective_poly(3)
    assert um.poly == lambda_k(curve(2), 5) * jac
    assert engine2.dm_class(p).poly == ClassPoly()


@pytest.mark.parametrize("n,d", [(2, 5), (2, 6), (3, 7)])
def test_bottom_chamber_split(engine2, n, d):
    p = engine2.problem(n, d)
    assert (engine2.um_class(p) + engine2.dm_class(p)).poly == engine2.chamber(p, 0).poly


def test_um_routes(engine2):
    assert engine2.um_route(engine2.problem(2, 5)) == "direct"
    assert engine2.um_route(engine2.problem(2, 6)) == "subtraction"
    assert engine2.um_route(engine2.problem(1, 3)) == "direct"


def test_dm_low_slope_is_missing(engine3):
    with pytest.raises(MissingIngredient):
        engine3.dm_class(engine3.problem(4, 6))


def test_msbundle(engine2):
    assert engine2.msbundle_class(1, 4).poly == dm.jacobian_poly(2)
    m25 = engine2.msbundle_class(2, 5, check_twist=True)
    assert m25.poly == engine2.msbundle_class(2, 7).poly
    assert m25.poly == engine2.msbundle_class(2, 1).poly
    assert m25.poly.q_degree() == 5
    with pytest.raises(dm.NotCoprime):
        engine2.msbundle_class(2, 4)
    with pytest.raises(MissingIngredient):
        engine2.msbundle_class(4, 1)


def test_pairs(engine2):
    assert engine2.pairs_class(1, 5, tau=6).poly == lambda_k(curve(2), 5)
    top = engine2.pairs_class(2, 5, chamber=len(dm.walls(engine2.problem(2, 5))))
    assert len(poincare(top.poly)) - 1 == 14
    p = engine2.problem(2, 5)
    tau = (Fraction(17, 2) + p.d) / (p.n + 1)
    assert engine2.pairs_class(2, 5, tau=tau).poly == top.poly
    with pytest.raises(ValueError):
        engine2.pairs_class(2, 5)
    # tau for the wall sigma = 4
    with pytest.raises(WallValue):
        engine2.pairs_class(2, 5, tau=3)


def test_certificates(engine2):
    p = engine2.problem(3, 7)
    for c in engine2.chambers(p):
        assert engine2.check_certificate(c)
        assert c.cert.kind == mx.NAMED
    for key in engine2.cache.keys():
        cert = engine2.cache.certificate(key)
        assert mx.evaluate(cert, 2, engine2.resolve) == engine2.cache.get(key), key


def test_cache_round_trip(tmp_path):
    path = str(tmp_path / "cache.json")
    first = WallCrossingEngine(2, ClassCache(path))
    values = [c.poly for c in first.chambers(first.problem(2, 6))]
    first.cache.save()
    data = json.loads(open(path).read())
    assert data["version"] == CACHE_VERSION
    assert "N:g2:n2:d6:c0" in data["entries"]

    second = WallCrossingEngine(2, ClassCache(path))
    assert len(second.cache) == len(first.cache)
    assert [c.poly for c in second.chambers(second.problem(2, 6))] == values
    assert second.check_certificate(second.chamber(second.problem(2, 6), 0))


def test_cache_version_mismatch(tmp_path):
    path = tmp_path / "cache.json"
    path.write_text(json.dumps({"version": CACHE_VERSION + 1, "entries": {"x": {}}}))
    assert len(ClassCache(str(path))) == 0


def test_cache_conflict():
    cache = ClassCache()
    cache.put("k", Classed.const(1))
    cache.put("k", Classed.const(1))
    with pytest.raises(CacheConflict):
        cache.put("k", Classed.const(2))


def test_parallel_matches_serial():
    serial = WallCrossingEngine(2)
    parallel = WallCrossingEngine(2, jobs=4)
    for n, d in [(2, 7), (3, 8)]:
        a = [c.poly for c in serial.chambers(serial.problem(n, d))]
        b = [c.poly for c in parallel.chambers(parallel.problem(n, d))]
        assert a == b


def test_twist_normalization(engine2):
    a = engine2.chambers(PairProblem(2, 2, 9, 2))
    b = engine2.chambers(PairProblem(2, 2, 5, 0))
    assert [x.poly for x in a] == [x.poly for x in b]


def test_notes_genus_two(engine2, engine3):
    assert engine2.notes
    assert not engine3.notes
