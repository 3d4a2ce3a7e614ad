from __future__ import annotations

import itertools

import pytest

from shortbrauer.brauer import U, compose, sigma
from shortbrauer.chains import (Chain, boundary_height_seq, enumerate_li_chain, is_chain, is_li_chain,
                                iter_li_chain_decompositions, li_chain_decompose, verify_chain_basis_theorem,
                                verify_module_closure)
from shortbrauer.errors import DomainError
from shortbrauer.pairpart import B, T, _interleaved, cap, cup, enumerate_J, format_pair, identity, parse_diagram, \
    tensor

EXAMPLE = "J(7,3): (1,2')(2,7)(3,3')(4,1')(5,6)"


def test_is_chain_examples():
    assert is_chain([(T(1), B(1))], (1, 1))
    assert is_chain([(T(2), T(7)), (T(3), B(3))], (7, 3))
    assert not is_chain([(T(1), T(2)), (T(3), T(4))], (4, 0))


@pytest.mark.parametrize("links,ctx,expected", [
    ([(T(1), B(1))], (1, 1), [0, 1, 0]),
    ([(T(1), B(2)), (T(2), B(1))], (2, 2), [0, 1, 2, 1, 0]),
    ([(T(1), T(3)), (T(2), B(2)), (B(3), B(1))], (3, 3), [0, 1, 2, 1, 2, 1, 0]),
])
def test_boundary_heights(links, ctx, expected):
    assert boundary_height_seq(Chain.from_links(links, ctx)) == expected


def test_boundary_heights_reject_non_chain():
    with pytest.raises(DomainError):
        boundary_height_seq(Chain.from_links([(T(1), T(2)), (T(3), T(4))], (4, 0)))


def test_worked_decomposition():
    d = li_chain_decompose(parse_diagram(EXAMPLE), 3)
    chains = [[format_pair(l) for l in c.links] for c in d.chains]
    assert chains == [["(1,2')"], ["(2,7)", "(4,1')"], ["(3,3')"]]
    assert [format_pair(p) for p in d.remainder_pairs] == ["(5,6)"]


def test_worked_example_chain_links_from_the_picture():
    # the chain through T2 is {T2,T7} then {T3,B3} when read as drawn; both must be chains
    assert is_chain([(T(2), T(7)), (T(3), B(3))], (7, 3))
    assert is_chain([(T(2), T(7)), (T(4), B(1))], (7, 3))


def test_identity_and_small_cases():
    d = li_chain_decompose(identity(3), 1)
    assert [len(c) for c in d.chains] == [1] and len(d.remainder) == 2
    assert li_chain_decompose(U(1, 2), 1) is None
    assert is_li_chain(sigma(1, 2), 1)
    assert not is_li_chain(U(1, 2), 1)
    assert all(is_li_chain(identity(4), i) for i in range(1, 5))


def test_domain_errors():
    with pytest.raises(DomainError):
        li_chain_decompose(identity(2), 3)
    with pytest.raises(DomainError):
        enumerate_li_chain(1, 3, 2)


def test_enumeration_sizes():
    assert set(enumerate_li_chain(2, 2, 1)) == {identity(2), sigma(1, 2)}
    assert len(enumerate_li_chain(3, 3, 1)) == 6
    assert len(enumerate_li_chain(4, 4, 1)) == 20


@pytest.mark.parametrize("m,n", [(a, b) for a in range(1, 6) for b in range(1, 6) if (a + b) % 2 == 0])
def test_decomposition_is_unique(m, n):
    for p in enumerate_J(m, n):
        for i in range(1, min(m, n) + 1):
            assert len(list(iter_li_chain_decompositions(p, i))) <= 1


@pytest.mark.parametrize("m,n", [(3, 3), (4, 2), (5, 5)])
def test_remainder_is_non_crossing(m, n):
    for p in enumerate_li_chain(m, n, 1):
        d = li_chain_decompose(p, 1)
        links = list(d.chains[0].positions)
        for a, b in itertools.combinations(d.remainder, 2):
            assert not _interleaved(a, b)
        assert not any(_interleaved(a, l) for a in d.remainder for l in links)


@pytest.mark.parametrize("i,m,n", [(1, 2, 2), (1, 3, 3), (1, 4, 2), (2, 4, 4), (2, 3, 5), (3, 4, 4)])
def test_module_closure(i, m, n):
    report = verify_module_closure(i, m, n)
    assert report.passed, str(report)


def test_module_closure_counts():
    report = verify_module_closure(1, 3, 3)
    assert report.sizes == {"diagrams": 6, "generators": 2} and report.checked == 12


@pytest.mark.parametrize("i,m,size", [(1, 3, 6), (1, 4, 20), (2, 4, 24), (3, 4, 24)])
def test_chain_basis_theorem(i, m, size):
    report = verify_chain_basis_theorem(i, m)
    assert report.passed and report.sizes["closure"] == size


@pytest.mark.parametrize("i,m,n", [(1, 2, 2), (1, 3, 3), (1, 2, 4), (2, 3, 3), (2, 4, 2)])
def test_tensoring_preserves_membership(i, m, n):
    for p in enumerate_J(m, n):
        member = is_li_chain(p, i)
        for w in (cup(), cap(), identity(1)):
            assert is_li_chain(tensor(p, w), i) == member


@pytest.mark.parametrize("i", [1, 2])
def test_category_closure(i):
    sizes = [k for k in range(i, 5)]
    sets = {(a, b): enumerate_li_chain(a, b, i) for a in sizes for b in sizes if (a + b) % 2 == 0}
    for (a, b), ps in sets.items():
        for (b2, c), qs in sets.items():
            if b2 != b:
                continue
            for p in ps:
                for q in qs:
                    assert is_li_chain(compose(p, q)[0], i)
