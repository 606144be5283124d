import pytest
from hypothesis import given, strategies as st

from motivic_pairs import configurations as cf
from motivic_pairs import motive_expr as mx
from motivic_pairs.classed import Classed
from motivic_pairs.domain import cls_grassmannian
from motivic_pairs.oracles import squarefree_config_count
from motivic_pairs.poly import L, ONE, ClassPoly, curve
from conftest import class_polys

BELL = [1, 1, 2, 5, 15, 52]


@pytest.mark.parametrize("k", range(1, 6))
def test_partition_counts(k):
    assert sum(1 for _ in cf.set_partitions(k)) == BELL[k]


def test_partition_lattice_meet_and_order():
    a = cf.PartitionLattice.from_blocks(4, [[0, 1], [2, 3]])
    b = cf.PartitionLattice.from_blocks(4, [[0, 1, 2], [3]])
    m = a.meet(b)
    assert m == cf.PartitionLattice.from_blocks(4, [[0, 1], [2], [3]])
    assert m.refines(a) and m.refines(b)
    assert cf.PartitionLattice.discrete(4).refines(m)
    assert not a.refines(b)
    with pytest.raises(ValueError):
        cf.PartitionLattice.from_blocks(3, [[0, 1]])


def test_ordered_config_examples():
    m = ClassPoly({(1, 0): 1, (0, 1): 3, (0, 0): -2})
    assert cf.ordered_config_class(m, 2) == m * m - m
    assert cf.ordered_config_class(m, 3) == m ** 3 - 3 * m ** 2 + 2 * m
    assert cf.ordered_config_class(L, 3) == L * (L - 1) * (L - 2)
    with pytest.raises(ValueError):
        cf.ordered_config_class(m, 0)


@given(class_polys(max_exp=2, max_terms=3, coeff=4), st.integers(1, 4))
def test_ordered_config_is_falling_factorial(m, k):
    out = ONE
    for t in range(k):
        out = out * (m - t)
    assert cf.ordered_config_class(m, k) == out
    c = cf.ordered_config_classed(Classed.tate(L), k)
    assert mx.evaluate(c.cert, 2) == c.poly


@pytest.mark.parametrize("k", range(1, 6))
def test_squarefree(k):
    assert cf.decorated_config_quotient_class([(L, ONE, k)]) == squarefree_config_count(k)


def test_single_point_is_base_times_decoration():
    base, dec = curve(2), ClassPoly.from_q([1, 1])
    assert cf.decorated_config_quotient_class([(base, dec, 1)]) == base * dec


def test_species_on_distinct_bases_multiply():
    a = cf.decorated_config_quotient_class([(L, ONE, 2)])
    b = cf.decorated_config_quotient_class([(curve(2), ONE, 1)])
    assert cf.decorated_config_quotient_class([(L, ONE, 2), (curve(2), ONE, 1)]) == a * b


def test_two_species_on_the_line():
    # one point of each kind, distinct: q^2 - q
    assert cf.decorated_config_quotient_class([(L, ONE, 1), (L, L, 1)]) == (L * L - L) * L


def test_mobius():
    assert [cf.mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


@pytest.mark.parametrize("g", [2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_cycle_index_matches_collision_recursion(g, k):
    y = Classed(curve(g), mx.C)
    for w in (1, 2, 3):
        dec = Classed(*cls_grassmannian(1, w))
        via_collisions = cf.decorated_config_quotient_classed([(y, dec, k)])
        # unordered configurations of y x dec with distinct projections to y
        ycoords = cf.unordered_config_by_cycle_index(y, k) if w == 1 else None
        if ycoords is not None:
            assert via_collisions.poly == ycoords.poly
        assert mx.evaluate(via_collisions.cert, g) == via_collisions.poly


@given(st.integers(1, 4))
def test_cycle_index_certificate(k):
    y = Classed(curve(2), mx.C)
    c = cf.unordered_config_by_cycle_index(y, k)
    assert mx.evaluate(c.cert, 2) == c.poly
