import itertools
import math

import pytest

from fibcobweb.cobweb import (
    binomial_check,
    build_cobweb,
    chain_quotient_identity,
    count_max_chains_layer,
    enumerate_max_chains,
    interval_chain_count,
    mobius_convolution_check,
    mobius_table,
    poset_mobius,
)
from fibcobweb.errors import BadRange, CapExceeded
from fibcobweb.fnomial import fnomial_product
from fibcobweb.sequences import constant_one, fibonacci, gaussian, natural


def chains_by_selection(p, k, n):
    """Independent oracle: every choice of one vertex per level, checked for comparability."""
    levels = [p.level(s) for s in range(k + 1, n + 1)]
    return sum(
        1
        for pick in itertools.product(*levels)
        if all(p.leq(a, b) and a != b for a, b in zip(pick, pick[1:]))
    )


def test_build_examples():
    p = build_cobweb(fibonacci(), 1)
    assert list(p.vertices()) == [(1, 1)]
    assert p.comparable_pair_count() == 0
    p = build_cobweb(fibonacci(), 5)
    assert p.level_sizes == (1, 1, 2, 3, 5) and p.vertex_count == 12
    p = build_cobweb(natural(), 3)
    assert p.level_sizes == (1, 2, 3)
    verts = list(p.vertices())
    assert sum(1 for x in verts for y in verts if p.covers(x, y)) == 1 * 2 + 2 * 3 == p.covering_pair_count()


def test_order_is_level_comparison():
    p = build_cobweb(natural(), 4)
    verts = list(p.vertices())
    for x, y in itertools.product(verts, verts):
        assert p.leq(x, y) == (x == y or x[0] < y[0])
        assert p.covers(x, y) == (y[0] == x[0] + 1)
    # transitivity and antisymmetry
    for x, y, z in itertools.product(verts, repeat=3):
        if p.leq(x, y) and p.leq(y, z):
            assert p.leq(x, z)
        if p.leq(x, y) and p.leq(y, x):
            assert x == y


def test_build_errors():
    with pytest.raises(BadRange):
        build_cobweb(fibonacci(), 0)
    with pytest.raises(CapExceeded):
        build_cobweb(natural(), 200)
    assert build_cobweb(fibonacci(), 17).vertex_count <= 5000
    with pytest.raises(CapExceeded):
        build_cobweb(fibonacci(), 18)


def test_layer_counts():
    p = build_cobweb(fibonacci(), 7)
    assert count_max_chains_layer(p, 0, 5) == 30
    assert count_max_chains_layer(p, 1, 4) == 6
    for n in range(1, 8):
        assert count_max_chains_layer(p, n - 1, n) == p.seq.term(n)
        for k in range(n):
            assert count_max_chains_layer(p, k, n) == p.seq.factorial(n) // p.seq.factorial(k)
    for k, n in [(-1, 3), (3, 3), (2, 8), (5, 4)]:
        with pytest.raises(BadRange):
            count_max_chains_layer(p, k, n)


def test_enumeration_examples():
    fib = build_cobweb(fibonacci(), 7)
    assert enumerate_max_chains(fib, 0, 7).value == 3120
    assert enumerate_max_chains(fib, 0, 1).value == 1
    assert enumerate_max_chains(build_cobweb(natural(), 4), 2, 4).value == 12


@pytest.mark.parametrize(
    "seq, n_max", [(fibonacci(), 7), (natural(), 6), (gaussian(2), 4)], ids=["fib", "nat", "q2"]
)
def test_enumeration_matches_closed_form_and_selection_oracle(seq, n_max):
    p = build_cobweb(seq, n_max)
    for n in range(1, n_max + 1):
        for k in range(n):
            closed = count_max_chains_layer(p, k, n)
            assert enumerate_max_chains(p, k, n).value == closed
            if closed <= 5000:
                assert chains_by_selection(p, k, n) == closed


def test_enumeration_cap_checked_up_front():
    p = build_cobweb(natural(), 9)
    with pytest.raises(CapExceeded):
        enumerate_max_chains(p, 0, 9, cap=1000)


def test_chain_quotient_examples():
    p = build_cobweb(fibonacci(), 7)
    rep = chain_quotient_identity(p, 2, 6)
    assert (rep.lhs, rep.rhs, rep.equal) == (240, 240, True)
    assert fnomial_product(p.seq, 6, 2) == 40 and p.seq.factorial(4) == 6
    for n in range(8):
        assert chain_quotient_identity(p, n, n).lhs == 1
    assert chain_quotient_identity(build_cobweb(gaussian(2), 4), 1, 4).equal
    assert "surrogate" in rep.to_json()["identity"]


@pytest.mark.parametrize(
    "seq, n_max", [(fibonacci(), 7), (gaussian(2), 5), (natural(), 6), (constant_one(), 6)]
)
def test_chain_quotient_everywhere(seq, n_max):
    p = build_cobweb(seq, n_max)
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            assert chain_quotient_identity(p, k, n).equal


def test_mobius_examples():
    p = build_cobweb(fibonacci(), 5)
    mu = mobius_table(p)
    verts = list(p.vertices())
    for x, y in itertools.product(verts, verts):
        if p.covers(x, y):
            assert mu[(x, y)] == -1
        if x[0] == 1 and y[0] == 3:
            assert mu[(x, y)] == 0
        if x[0] == 2 and y[0] == 4:
            assert mu[(x, y)] == 1
    assert all(mu[(x, x)] == 1 for x in verts)


@pytest.mark.parametrize("seq", [fibonacci(), natural(), gaussian(2)], ids=lambda s: s.name)
def test_mobius_convolution_and_generic_recursion(seq):
    for n in range(1, 6):
        p = build_cobweb(seq, n)
        table = mobius_table(p)
        assert mobius_convolution_check(p, table).ok
        assert dict(table) == poset_mobius(list(p.vertices()), p.leq)


def test_poset_mobius_on_boolean_lattice():
    subsets = sorted(
        (frozenset(c) for r in range(4) for c in itertools.combinations(range(3), r)), key=len
    )
    mu = poset_mobius(subsets, lambda a, b: a <= b)
    for (a, b), value in mu.items():
        assert value == (-1) ** len(b - a)


def test_convolution_check_detects_corruption():
    p = build_cobweb(fibonacci(), 4)
    table = mobius_table(p)
    table[((2, 1), (4, 1))] = 7
    rep = mobius_convolution_check(p, table)
    assert not rep.ok and rep.first_failure is not None


def test_binomial_check_fibonacci_4():
    rep = binomial_check(build_cobweb(fibonacci(), 4))
    assert not rep.is_binomial
    (x1, y1, c1), (x2, y2, c2) = rep.counterexample
    assert (x1[0], y1[0], c1) == (1, 3, 1)
    assert (x2[0], y2[0], c2) == (2, 4, 2)
    assert rep.sample_ok and rep.sampled >= 1


@pytest.mark.parametrize("n", [4, 5, 6, 8, 10])
def test_fibonacci_cobweb_never_binomial(n):
    rep = binomial_check(build_cobweb(fibonacci(), n))
    assert not rep.is_binomial
    assert {1, 2} <= rep.by_length[2]
    assert rep.sample_ok


@pytest.mark.parametrize(
    "seq, n", [(fibonacci(), 2), (fibonacci(), 3), (constant_one(), 6), (natural(), 3)]
)
def test_small_or_chain_posets_look_binomial(seq, n):
    assert binomial_check(build_cobweb(seq, n)).is_binomial


@pytest.mark.parametrize("n", [4, 5, 6])
def test_natural_cobweb_not_binomial_from_four_levels(n):
    rep = binomial_check(build_cobweb(natural(), n))
    assert not rep.is_binomial
    assert {2, 3} <= rep.by_length[2]


def test_binomial_check_is_deterministic_and_counts_pairs():
    p = build_cobweb(fibonacci(), 9)
    a, b = binomial_check(p, seed=7), binomial_check(p, seed=7)
    assert a == b and a.to_json() == b.to_json()
    assert a.pairs_examined == p.comparable_pair_count()
    assert a.sampled + a.sample_skipped == min(math.ceil(p.comparable_pair_count() * 0.1), 256)


def test_interval_chain_count_matches_walk():
    p = build_cobweb(gaussian(2), 4)
    x, y = (1, 1), (4, 2)
    assert interval_chain_count(p, x, y) == 3 * 7
    assert sum(1 for _ in itertools.product(p.level(2), p.level(3))) == 21
