from __future__ import annotations

from fractions import Fraction

import pytest

from shortbrauer.cellrep import (DETERMINANT_TABLE, LMatrix, Sign, bareiss_det, det_closed_form, det_recurrence,
                                 determinant_table, gram_det, gram_matrix, half_diagram_basis, parse_lambda,
                                 rank_at, site_reversal, spin_hamiltonian, spin_rep_U, check_spin_relations)
from shortbrauer.errors import DomainError, ResourceLimitError
from shortbrauer.scalars import LaurentQ, Poly, chebyshev_d

x = Poly.x()
d, z, o = x, Poly(), Poly.const(1)

# basis order of the printed 11x11 matrix, as indices into the natural order
PRINTED_ORDER_6_0 = [0, 1, 3, 4, 10, 6, 7, 8, 5, 2, 9]
PRINTED_ARCS_6_0 = ["(1,2)(3,4)(5,6)", "(1,2)(3,5)(4,6)", "(1,3)(2,4)(5,6)", "(1,3)(2,5)(4,6)",
                    "(1,6)(2,5)(3,4)", "(1,4)(2,3)(5,6)", "(1,5)(2,3)(4,6)", "(1,5)(2,6)(3,4)",
                    "(1,3)(2,6)(4,5)", "(1,2)(3,6)(4,5)", "(1,6)(2,3)(4,5)"]
EXPONENTS_6_0 = [
    [3, 2, 2, 1, 2, 2, 1, 2, 1, 2, 1],
    [2, 3, 1, 2, 1, 1, 2, 1, 1, 2, 1],
    [2, 1, 3, 2, 1, 2, 1, 1, 2, 1, 1],
    [1, 2, 2, 3, 2, 1, 2, 1, 2, 1, 1],
    [2, 1, 1, 2, 3, 1, 1, 2, 1, 1, 2],
    [2, 1, 2, 1, 1, 3, 2, 1, 1, 1, 2],
    [1, 2, 1, 2, 1, 2, 3, 2, 1, 1, 2],
    [2, 1, 1, 1, 2, 1, 2, 3, 2, 1, 1],
    [1, 1, 2, 2, 1, 1, 1, 2, 3, 2, 2],
    [2, 2, 1, 1, 1, 1, 1, 1, 2, 3, 2],
    [1, 1, 1, 1, 2, 2, 2, 1, 2, 2, 3],
]


def _arcs(h):
    return "".join(f"({a},{b})" for a, b in h.diagram.position_pairs())


def test_parse_lambda():
    assert parse_lambda("4+") == (4, Sign.PLUS)
    assert parse_lambda("2-") == (2, Sign.MINUS)
    assert parse_lambda("1") == (1, Sign.NONE)
    with pytest.raises(DomainError):
        parse_lambda("x")


def test_sign_rules():
    with pytest.raises(DomainError):
        gram_matrix(4, (2, None))
    with pytest.raises(DomainError):
        gram_matrix(3, "1+")


@pytest.mark.parametrize("n,m,size", [(3, 1, 3), (4, 0, 3), (4, 2, 4), (5, 1, 11), (5, 3, 5), (6, 0, 11),
                                      (6, 2, 16), (6, 4, 6)])
def test_basis_sizes(n, m, size):
    assert len(half_diagram_basis(n, m)) == size


@pytest.mark.parametrize("n,m", [(3, 1), (4, 0), (4, 2), (5, 1), (5, 3), (6, 4)])
def test_orbit_basis_matches_closure(n, m):
    assert set(half_diagram_basis(n, m)) == set(half_diagram_basis(n, m, method="closure"))


def test_printed_3_1():
    g = gram_matrix(3, "1")
    assert g.entries == ((d, o, o), (o, d, o), (o, o, d))


@pytest.mark.parametrize("sign", ["+", "-"])
def test_printed_4_2(sign):
    e = o if sign == "+" else -o
    g = gram_matrix(4, "2" + sign)
    assert g.entries == ((d, o, o, z), (o, d, o, e), (o, o, d, o), (z, e, o, d))


def test_printed_6_4_plus():
    g = gram_matrix(6, "4+")
    expected = [[d, o, o, z, z, z], [o, d, o, o, z, z], [o, o, d, o, z, z],
                [z, o, o, d, o, z], [z, z, z, o, d, o], [z, z, z, z, o, d]]
    assert [list(r) for r in g.entries] == expected


def test_printed_6_0():
    g = gram_matrix(6, "0").permuted(PRINTED_ORDER_6_0)
    assert [_arcs(h) for h in g.basis] == PRINTED_ARCS_6_0
    assert [list(r) for r in g.entries] == [[x ** e for e in row] for row in EXPONENTS_6_0]


@pytest.mark.parametrize("n,m,sign", [(n, m, s) for n, m, s, _ in DETERMINANT_TABLE])
def test_gram_matrices_symmetric(n, m, sign):
    assert gram_matrix(n, (m, sign)).is_symmetric()


def test_determinant_table():
    rows = determinant_table()
    assert len(rows) == 12
    assert all(r.match for r in rows), [(r.n, r.m, r.sign) for r in rows if not r.match]


def test_determinants_against_sympy():
    sympy = pytest.importorskip("sympy")
    xs = sympy.Symbol("x")
    for n, m, sign in [(3, 1, ""), (4, 2, "+"), (4, 2, "-"), (5, 3, "-"), (6, 4, "+")]:
        g = gram_matrix(n, (m, sign))
        mat = sympy.Matrix([[sympy.sympify(str(e).replace("^", "**")) for e in row] for row in g.entries])
        assert sympy.expand(mat.det() - sympy.sympify(str(gram_det(g)).replace("^", "**"))) == 0


def test_bareiss_small():
    assert bareiss_det([]) == o
    assert bareiss_det([[z, o], [o, z]]) == -o
    assert bareiss_det([[x, o], [o, x]]) == x * x - 1


@pytest.mark.parametrize("n", range(4, 9))
@pytest.mark.parametrize("sign", ["+", "-"])
def test_chebyshev_three_way(n, sign):
    direct = gram_det(gram_matrix(n, (n - 2, sign)))
    assert direct == det_recurrence(n, sign) == det_closed_form(n, sign)


def test_recurrence_errors():
    with pytest.raises(DomainError):
        det_recurrence(2, "+")
    with pytest.raises(DomainError):
        det_recurrence(5, None)


def test_chebyshev_low_terms():
    assert chebyshev_d(0) == o and chebyshev_d(1) == x and chebyshev_d(2) == x * x - 1


def test_ranks():
    assert rank_at(gram_matrix(5, "1"), 1) == 1
    assert rank_at(gram_matrix(3, "1"), 1) == 1
    assert rank_at(gram_matrix(3, "1"), -2) == 2
    assert rank_at(gram_matrix(3, "1"), Fraction(7, 3)) == 3


def test_spin_examples():
    u = spin_rep_U(1, 2)
    q = LaurentQ.q
    assert u[1, 1] == q(1) and u[2, 2] == q(-1) and u[1, 2] == q(0) and not u[0, 0]
    u23 = spin_rep_U(2, 3)
    assert u23[0b001, 0b001] == q(1) and u23[0b010, 0b001] == q(0)


def test_spin_errors():
    with pytest.raises(DomainError):
        spin_rep_U(3, 3)
    with pytest.raises(ResourceLimitError):
        spin_rep_U(1, 9)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_spin_relations(n):
    report = check_spin_relations(n)
    assert report.passed, str(report)


def test_hamiltonian_symmetric_under_site_reversal_with_q_inversion():
    for n in (2, 3, 4):
        h = spin_hamiltonian(n)
        flipped = h.conjugate_by_permutation(site_reversal(n)).transform(LaurentQ.invert_q)
        assert flipped == h


def test_hamiltonian_trace():
    # each U_i contributes q + q^-1 once per state of the other n - 2 sites
    loop = LaurentQ.q(1) + LaurentQ.q(-1)
    for n in (2, 3, 4):
        expected = LaurentQ.q(1) - LaurentQ.q(1)
        for _ in range((n - 1) * 2 ** (n - 2)):
            expected = expected + loop
        assert spin_hamiltonian(n).trace() == expected


def test_lmatrix_identity():
    one = LMatrix.identity(4)
    u = spin_rep_U(1, 2)
    assert one @ u == u and u @ one == u
