"""
Acceptance criteria, one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -s`` (or ``python tests/test_acceptance.py``)
to see the lines; every criterion also asserts, so a plain ``pytest`` run fails
if any of them does.
"""
from __future__ import annotations

import itertools
import random
import sys
import time
import timeit
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import random_diagram  # noqa: E402

from shortbrauer.blob import BlobSum, enumerate_blob  # noqa: E402
from shortbrauer.brauer import compose  # noqa: E402
from shortbrauer.cellrep import (check_spin_relations, det_closed_form, det_recurrence, determinant_table,  # noqa: E402
                                 gram_det, gram_matrix, rank_at)
from shortbrauer.chains import (enumerate_li_chain, is_li_chain, iter_li_chain_decompositions,  # noqa: E402
                                verify_chain_basis_theorem, verify_module_closure)
from shortbrauer.iso import verify_phi_functor, verify_psi_bijection, verify_theta  # noqa: E402
from shortbrauer.pairpart import cap, cup, enumerate_J, identity, parse_diagram, tensor  # noqa: E402
from shortbrauer.scalars import Poly  # noqa: E402

x = Poly.x()
RESULTS: list[str] = []


def _emit(number: int, title: str, ok: bool, elapsed: float, limit: float, note: str = "") -> None:
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"[{status}] criterion {number:2d}: {title} ({elapsed:.6f}s, limit {limit:g}s){' ' + note if note else ''}"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert within, line


def _timed(fn):
    start = time.perf_counter()
    ok, note = fn()
    return ok, note, time.perf_counter() - start


# 1 -----------------------------------------------------------------------------------

def test_criterion_01_composition_oracle():
    p1 = parse_diagram("J(3,5): (1,3')(2,4')(3,5')(1',2')")
    p2 = parse_diagram("J(5,1): (1,2)(4,5)(3,1')")
    expected = (parse_diagram("J(3,1): (3,2)(1,1')"), 1)
    ok = compose(p1, p2) == expected
    per_call = min(timeit.repeat(lambda: compose(p1, p2), number=200, repeat=5)) / 200
    _emit(1, "worked composition gives {3,2}{1,1'} with one loop", ok, per_call, 1e-3)


# 2 -----------------------------------------------------------------------------------

PRINTED_ORDER_6_0 = [0, 1, 3, 4, 10, 6, 7, 8, 5, 2, 9]
EXPONENTS_6_0 = [
    [3, 2, 2, 1, 2, 2, 1, 2, 1, 2, 1], [2, 3, 1, 2, 1, 1, 2, 1, 1, 2, 1],
    [2, 1, 3, 2, 1, 2, 1, 1, 2, 1, 1], [1, 2, 2, 3, 2, 1, 2, 1, 2, 1, 1],
    [2, 1, 1, 2, 3, 1, 1, 2, 1, 1, 2], [2, 1, 2, 1, 1, 3, 2, 1, 1, 1, 2],
    [1, 2, 1, 2, 1, 2, 3, 2, 1, 1, 2], [2, 1, 1, 1, 2, 1, 2, 3, 2, 1, 1],
    [1, 1, 2, 2, 1, 1, 1, 2, 3, 2, 2], [2, 2, 1, 1, 1, 1, 1, 1, 2, 3, 2],
    [1, 1, 1, 1, 2, 2, 2, 1, 2, 2, 3],
]


def _printed_matrices():
    d, o, z = x, Poly.const(1), Poly()
    rows = lambda g: [list(r) for r in g.entries]  # noqa: E731
    checks = {
        "3,1": rows(gram_matrix(3, "1")) == [[d, o, o], [o, d, o], [o, o, d]],
        "4,2+": rows(gram_matrix(4, "2+")) == [[d, o, o, z], [o, d, o, o], [o, o, d, o], [z, o, o, d]],
        "4,2-": rows(gram_matrix(4, "2-")) == [[d, o, o, z], [o, d, o, -o], [o, o, d, o], [z, -o, o, d]],
        "6,4+": rows(gram_matrix(6, "4+")) == [[d, o, o, z, z, z], [o, d, o, o, z, z], [o, o, d, o, z, z],
                                               [z, o, o, d, o, z], [z, z, z, o, d, o], [z, z, z, z, o, d]],
        "6,0": rows(gram_matrix(6, "0").permuted(PRINTED_ORDER_6_0))
        == [[x ** e for e in r] for r in EXPONENTS_6_0],
    }
    bad = [k for k, v in checks.items() if not v]
    return not bad, f"{len(checks) - len(bad)}/{len(checks)} matrices" + (f", mismatched: {bad}" if bad else "")


def test_criterion_02_printed_gram_matrices():
    ok, note, t = _timed(_printed_matrices)
    _emit(2, "printed Gram matrices reproduced entry for entry", ok, t, 10, note)


# 3 -----------------------------------------------------------------------------------

def _det_table():
    rows = determinant_table()
    bad = [(r.n, r.m, r.sign) for r in rows if not r.match]
    # the source lists twelve identities, D^3_1 through D^{6-}_4
    return len(rows) == 12 and not bad, f"{len(rows) - len(bad)}/{len(rows)} listed identities exact"


def test_criterion_03_determinant_table():
    ok, note, t = _timed(_det_table)
    _emit(3, "determinant table identities", ok, t, 60, note)


# 4 -----------------------------------------------------------------------------------

def _chebyshev():
    bad = []
    for n in range(4, 11):
        for sign in "+-":
            direct = gram_det(gram_matrix(n, (n - 2, sign)))
            if not direct == det_recurrence(n, sign) == det_closed_form(n, sign):
                bad.append((n, sign))
    return not bad, "n = 4..10, both signs" + (f", mismatched: {bad}" if bad else "")


def test_criterion_04_chebyshev_consistency():
    ok, note, t = _timed(_chebyshev)
    _emit(4, "direct = recurrence = closed form", ok, t, 120, note)


# 5 -----------------------------------------------------------------------------------

def _bijection():
    counts = all(len(enumerate_blob(n, n)) == comb(2 * n, n) for n in range(1, 6))
    reports = [verify_psi_bijection(n, n) for n in range(1, 5)]
    return counts and all(r.passed for r in reports), "counts n <= 5, round trips n <= 4"


def test_criterion_05_bijection_and_dimension():
    ok, note, t = _timed(_bijection)
    _emit(5, "|bB(n,n)| = C(2n,n) and psi is a bijection", ok, t, 60, note)


# 6 -----------------------------------------------------------------------------------

def _functor():
    theta = [verify_theta(n) for n in range(2, 5)]
    triples = [(m, n, q) for m, n, q in itertools.product(range(4), repeat=3) if (m + n) % 2 == 0 == (n + q) % 2]
    phis = [verify_phi_functor(*t) for t in triples]
    bad = [r.name for r in theta + phis if not r.passed]
    return not bad, f"theta n = 2..4, phi on {len(triples)} triples" + (f", failed: {bad}" if bad else "")


def test_criterion_06_theta_and_phi_functor():
    ok, note, t = _timed(_functor)
    _emit(6, "theta relations/closure and phi homomorphism", ok, t, 300, note)


# 7 -----------------------------------------------------------------------------------

def _chain_basis():
    reports = [verify_chain_basis_theorem(1, m) for m in range(1, 6)]
    reports += [verify_chain_basis_theorem(2, m) for m in range(2, 5)]
    bad = [r.name for r in reports if not r.passed]
    return not bad, "L1 for m <= 5, L2 for m <= 4" + (f", failed: {bad}" if bad else "")


def test_criterion_07_chain_basis_theorem():
    ok, note, t = _timed(_chain_basis)
    _emit(7, "monoid closure equals the chain set", ok, t, 300, note)


# 8 -----------------------------------------------------------------------------------

def _ranks():
    got = (rank_at(gram_matrix(5, "1"), 1), rank_at(gram_matrix(3, "1"), 1), rank_at(gram_matrix(3, "1"), -2))
    return got == (1, 1, 2), f"ranks {got}"


def test_criterion_08_rank_specialisations():
    ok, note, t = _timed(_ranks)
    _emit(8, "ranks at x = 1 and x = -2", ok, t, 1, note)


# 9 -----------------------------------------------------------------------------------

def _spin():
    reports = [check_spin_relations(n) for n in range(2, 6)]
    return all(r.passed for r in reports), f"{sum(r.checked for r in reports)} relations, n = 2..5"


def test_criterion_09_spin_relations():
    ok, note, t = _timed(_spin)
    _emit(9, "spin matrices satisfy the generator relations in q", ok, t, 60, note)


# 10 ----------------------------------------------------------------------------------

def _associativity(rng):
    for _ in range(500):
        a, b, c, d = (rng.randint(0, 5) for _ in range(4))
        b += (a + b) % 2
        c += (b + c) % 2
        d += (c + d) % 2
        p, q, r = random_diagram(rng, a, b), random_diagram(rng, b, c), random_diagram(rng, c, d)
        pq, l1 = compose(p, q)
        qr, l3 = compose(q, r)
        left, l2 = compose(pq, r)
        right, l4 = compose(p, qr)
        if left != right or l1 + l2 != l3 + l4:
            return False
    pool = enumerate_blob(2, 2)
    return all((BlobSum.of(u) * BlobSum.of(v)) * BlobSum.of(w) == BlobSum.of(u) * (BlobSum.of(v) * BlobSum.of(w))
               for u, v, w in itertools.product(pool, repeat=3))


def _tensor_compat(rng):
    small = enumerate_J(1, 1) + enumerate_J(0, 2) + enumerate_J(2, 0)
    for _ in range(300):
        p, q = random_diagram(rng, 3, 3), random_diagram(rng, 3, 3)
        p0 = rng.choice(small)
        q0 = rng.choice([d for d in small if d.n_top == p0.n_bottom])
        a, la = compose(p, q)
        b, lb = compose(p0, q0)
        if compose(tensor(p, p0), tensor(q, q0)) != (tensor(a, b), la + lb):
            return False
    return True


def _chain_tensor_lemma():
    return all(is_li_chain(tensor(p, w), i) == is_li_chain(p, i)
               for i, m, n in [(1, 2, 2), (1, 3, 3), (2, 3, 3), (2, 4, 2)]
               for p in enumerate_J(m, n) for w in (cup(), cap(), identity(1)))


def _category_closure():
    for i in (1, 2):
        sets = {(a, b): enumerate_li_chain(a, b, i) for a in range(i, 5) for b in range(i, 5) if (a + b) % 2 == 0}
        for (a, b), ps in sets.items():
            for (b2, c), qs in sets.items():
                if b2 == b and not all(is_li_chain(compose(p, q)[0], i) for p in ps for q in qs):
                    return False
    return all(verify_module_closure(i, m, n).passed for i, m, n in [(1, 3, 3), (1, 4, 2), (2, 4, 4)])


def _uniqueness():
    return all(len(list(iter_li_chain_decompositions(p, i))) <= 1
               for m in range(1, 6) for n in range(1, 6) if (m + n) % 2 == 0
               for p in enumerate_J(m, n) for i in range(1, min(m, n) + 1))


def _properties():
    rng = random.Random(20240611)
    suites = {
        "associativity": _associativity(rng),
        "tensor compatibility": _tensor_compat(rng),
        "psi(X) = Y (x) u property": all(verify_psi_bijection(m, n).passed for m, n in [(2, 2), (3, 3), (2, 4)]),
        "chain membership under (x) u, u*, 1": _chain_tensor_lemma(),
        "chain sets closed under composition": _category_closure(),
        "chain decomposition unique": _uniqueness(),
    }
    bad = [k for k, v in suites.items() if not v]
    return not bad, f"{len(suites) - len(bad)}/{len(suites)} suites" + (f", failed: {bad}" if bad else "")


def test_criterion_10_property_suites():
    ok, note, t = _timed(_properties)
    _emit(10, "property suites", ok, t, 300, note)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
