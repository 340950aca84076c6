from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from kawt.errors import SortError
from kawt.semiring import (BOOLEAN, INF, LUKASIEWICZ, MUTANT, SEMIRINGS, TROPICAL,
                           check_semiring_axioms, get_semiring)

trop = st.one_of(st.just(INF), st.integers(0, 10**6))
luk = st.fractions(0, 1, max_denominator=64)


def test_tropical_add_and_mul():
    assert TROPICAL.add(3, INF) == 3
    assert TROPICAL.add(INF, 3) == 3
    assert TROPICAL.mul(2, 5) == 7
    assert TROPICAL.mul(4, INF) is INF
    assert TROPICAL.zero is INF and TROPICAL.one == 0


def test_lukasiewicz_add_and_mul():
    assert LUKASIEWICZ.add(F(1, 4), F(3, 4)) == F(3, 4)
    assert LUKASIEWICZ.mul(F(7, 10), F(5, 10)) == F(2, 10)
    assert LUKASIEWICZ.mul(F(1, 4), F(1, 4)) == 0


def test_natural_order():
    assert TROPICAL.le(INF, 3)
    assert not TROPICAL.le(3, INF)
    assert not LUKASIEWICZ.le(F(3, 4), F(1, 4))
    assert LUKASIEWICZ.le(F(1, 4), F(3, 4))


def test_big_sum():
    for S in SEMIRINGS.values():
        assert S.sum([]) == S.zero
    assert TROPICAL.sum([5, 2, 9]) == 2
    assert TROPICAL.sum([INF, INF]) is INF


def test_sort_errors():
    with pytest.raises(SortError):
        TROPICAL.add(-1, 3)
    with pytest.raises(SortError):
        LUKASIEWICZ.mul(F(3, 2), F(1, 2))
    with pytest.raises(SortError):
        TROPICAL.add(True, 1)


def test_get_semiring():
    assert get_semiring("tropical") is TROPICAL
    assert get_semiring("mutant") is MUTANT
    with pytest.raises(ValueError):
        get_semiring("reals")


def test_literals_round_trip():
    for S, vals in ((TROPICAL, [0, 7, INF]), (LUKASIEWICZ, [F(0), F(3, 8), F(1)]),
                    (BOOLEAN, [False, True])):
        for v in vals:
            assert S.parse(S.render(v)) == v


@given(trop)
def test_tropical_idempotent(x):
    assert TROPICAL.add(x, x) == x


@given(trop, trop, trop)
def test_tropical_distributes(x, y, z):
    S = TROPICAL
    assert S.mul(x, S.add(y, z)) == S.add(S.mul(x, y), S.mul(x, z))


@given(luk, luk, luk)
def test_lukasiewicz_associative_and_distributive(x, y, z):
    S = LUKASIEWICZ
    assert S.mul(S.mul(x, y), z) == S.mul(x, S.mul(y, z))
    assert S.mul(S.add(x, y), z) == S.add(S.mul(x, z), S.mul(y, z))


@given(st.lists(trop, max_size=6), trop)
def test_tropical_sum_is_least_upper_bound(xs, y):
    s = TROPICAL.sum(xs)
    assert all(TROPICAL.le(x, s) for x in xs)
    if all(TROPICAL.le(x, y) for x in xs):
        assert TROPICAL.le(s, y)


@pytest.mark.parametrize("name", sorted(SEMIRINGS))
def test_axiom_suite_passes(name):
    rep = check_semiring_axioms(get_semiring(name), 1000, 42)
    assert rep.ok, rep.render()
    assert min(rep.checks.values()) >= 1


def test_mutant_fails_with_witness():
    rep = check_semiring_axioms(MUTANT, 1000, 42)
    assert not rep.ok
    assert rep.violations[0][1] is not None
    assert "left distributive" in " ".join(rep.failed_laws()) or "zero annihilates" in rep.failed_laws()


def test_suite_is_deterministic():
    a = check_semiring_axioms(MUTANT, 200, 5).render()
    assert a == check_semiring_axioms(MUTANT, 200, 5).render()
