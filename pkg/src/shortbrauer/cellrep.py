"""
Standard modules of the height-0 algebras generated by ``sigma_1`` and the
``U_i``: half-diagram bases, Gram matrices and their determinants, and the
Temperley-Lieb spin-chain representation.

A *half-diagram* lives in ``J(n, m)`` with every bottom vertex on a
propagating line. Propagating lines are reattached to bottom ``1..m`` in the
order of their top endpoints; this is the canonical representative modulo the
swap of bottom 1 and bottom 2.

>>> g = gram_matrix(3, (1, None))
>>> [[str(e) for e in row] for row in g.entries]
[['x', '1', '1'], ['1', 'x', '1'], ['1', '1', 'x']]
>>> str(gram_det(g))
'x^3 - 3*x + 2'
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .brauer import GeneratorSet, U, compose, monoid_closure, sigma
from .errors import DomainError, InternalConsistencyError, ResourceLimitError
from .pairpart import B, PairPartition, T, flip, format_diagram, max_points
from .scalars import LaurentQ, Poly, chebyshev_d


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"
    NONE = ""

    @classmethod
    def parse(cls, value) -> Sign:
        if isinstance(value, Sign):
            return value
        if value is None:
            return cls.NONE
        table = {"+": cls.PLUS, "plus": cls.PLUS, "-": cls.MINUS, "minus": cls.MINUS, "": cls.NONE, "none": cls.NONE}
        key = str(value).strip().lower()
        if key not in table:
            raise DomainError(f"unknown sign label {value!r}")
        return table[key]


def parse_lambda(text: str) -> tuple[int, Sign]:
    """
    ``"4+"`` -> ``(4, PLUS)``; ``"1"`` -> ``(1, NONE)``.

    >>> parse_lambda("2-")
    (2, <Sign.MINUS: '-'>)
    """
    text = text.strip()
    sign = Sign.NONE
    if text and text[-1] in "+-":
        sign = Sign.parse(text[-1])
        text = text[:-1]
    if not text.isdigit():
        raise DomainError(f"bad module label {text!r}")
    return int(text), sign


# -- half-diagrams --------------------------------------------------------------

@dataclass(frozen=True)
class HalfDiagram:
    n: int
    m: int
    diagram: PairPartition

    def __post_init__(self):
        d = self.diagram
        if d.context != (self.n, self.m):
            raise DomainError(f"{format_diagram(d)} is not in J({self.n},{self.m})")
        if any(y >= d.n_top for y in d.mate[d.n_top:]):
            raise DomainError("half-diagrams have no bottom-bottom pairs")

    def arcs(self) -> list[tuple[int, int]]:
        """Top-top arcs as index pairs."""
        d = self.diagram
        return [(x + 1, y + 1) for x, y in enumerate(d.mate[:d.n_top]) if x < y < d.n_top]

    def defects(self) -> list[int]:
        d = self.diagram
        return [x + 1 for x, y in enumerate(d.mate[:d.n_top]) if y >= d.n_top]

    def __str__(self):
        return format_diagram(self.diagram)


def _propagating_permutation(d: PairPartition) -> list[int] | None:
    """Bottom slot (0-based) of the k-th propagating line by top order, or ``None`` if a bottom arc exists."""
    n = d.n_top
    if any(y >= n for y in d.mate[n:]):
        return None
    return [y - n for y in d.mate[:n] if y >= n]


def normalize_half(d: PairPartition) -> HalfDiagram:
    """Reattach propagating lines to bottom ``1..m`` in top order."""
    n, m = d.context
    perm = _propagating_permutation(d)
    if perm is None or len(perm) != m:
        raise DomainError(f"{format_diagram(d)} is not a half-diagram")
    mate = list(d.mate[:n]) + [0] * m
    k = 0
    for x in range(n):
        if mate[x] >= n:
            mate[x] = n + k
            mate[n + k] = x
            k += 1
    return HalfDiagram(n, m, PairPartition.from_mate(n, m, mate))


def _check_perm(perm: Sequence[int], context: str):
    ident = list(range(len(perm)))
    swap = ident[:]
    if len(swap) >= 2:
        swap[0], swap[1] = 1, 0
    if list(perm) not in (ident, swap):
        raise InternalConsistencyError(f"propagating permutation {list(perm)} outside {{id, (12)}} in {context}")
    return list(perm) != ident


def strip(d: PairPartition, m: int) -> HalfDiagram | None:
    """Top half of ``d`` if it has exactly ``m`` propagating lines."""
    n = d.n_top
    prop = [(x, y - n) for x, y in enumerate(d.mate[:n]) if y >= n]
    if len(prop) != m:
        return None
    # bottom order of the propagating ends must be id or the first-two swap
    order = sorted(range(m), key=lambda k: prop[k][1])
    _check_perm([order.index(k) for k in range(m)], format_diagram(d))
    mate = list(d.mate[:n]) + [0] * m
    for k, (x, _) in enumerate(prop):
        mate[x] = n + k
        mate[n + k] = x
    return HalfDiagram(n, m, PairPartition.from_mate(n, m, mate))


def _seed(n: int, m: int) -> HalfDiagram:
    mate = [0] * (n + m)
    for k in range(m):
        mate[k], mate[n + k] = n + k, k
    for a in range(m, n, 2):
        mate[a], mate[a + 1] = a + 1, a
    return HalfDiagram(n, m, PairPartition.from_mate(n, m, mate))


def _check_half_args(n: int, m: int):
    if not 0 <= m <= n or (n - m) % 2:
        raise DomainError(f"need 0 <= m <= n with n - m even (got n={n}, m={m})")
    if 2 * n > max_points() + 8:
        raise ResourceLimitError(f"n={n} is above the half-diagram cap")


@lru_cache(maxsize=None)
def _orbit(n: int, m: int) -> tuple[HalfDiagram, ...]:
    gens = GeneratorSet.coxeter(2, 1, n).diagrams()
    seen = {_seed(n, m)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                d = compose(g, h.diagram)[0]
                perm = _propagating_permutation(d)
                if perm is None:
                    continue
                _check_perm(perm, format_diagram(d))
                h2 = normalize_half(d)
                if h2 not in seen:
                    seen.add(h2)
                    nxt.append(h2)
        frontier = nxt
    return tuple(sorted(seen, key=lambda h: h.diagram.sort_key()))


def half_diagram_basis(n: int, m: int, method: str = "orbit") -> list[HalfDiagram]:
    """
    Half-diagram basis of the standard module with ``m`` propagating lines.

    ``"orbit"`` grows the orbit of one half-diagram under the generators;
    ``"closure"`` strips every diagram of the monoid closure and is used as a
    cross-check at small ``n``.

    >>> [len(half_diagram_basis(n, m)) for n, m in [(3, 1), (4, 2), (5, 1), (6, 0), (6, 4)]]
    [3, 4, 11, 11, 6]
    """
    _check_half_args(n, m)
    if method == "orbit":
        return list(_orbit(n, m))
    if method == "closure":
        closure = monoid_closure(GeneratorSet.coxeter(2, 1, n).diagrams(), n)
        found = {h for h in (strip(d, m) for d in closure) if h is not None}
        return sorted(found, key=lambda h: h.diagram.sort_key())
    raise DomainError(f"unknown basis method {method!r}")


# -- Gram matrices ----------------------------------------------------------------

def gram_entry(h1: HalfDiagram, h2: HalfDiagram, sign=None) -> Poly:
    """
    Pairing of two half-diagrams: ``x^loops`` if the lines go straight through
    (up to the first-two swap, which costs a sign in the ``-`` module), else 0.
    """
    if (h1.n, h1.m) != (h2.n, h2.m):
        raise DomainError("half-diagrams from different modules")
    sign = Sign.parse(sign)
    d, loops = compose(flip(h1.diagram), h2.diagram)
    m = h1.m
    perm = [y - m for y in d.mate[:m]]
    if any(y < 0 for y in perm):
        return Poly()
    swapped = _check_perm(perm, f"<{h1}, {h2}>")
    coeff = -1 if (swapped and sign is Sign.MINUS) else 1
    return Poly.monomial(loops, 0, coeff)


@dataclass(frozen=True)
class GramMatrix:
    n: int
    m: int
    sign: Sign
    basis: tuple[HalfDiagram, ...]
    entries: tuple[tuple[Poly, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i] for i in range(self.dim) for j in range(i))

    def evaluate(self, x0) -> list[list[Fraction]]:
        return [[Fraction(e.evaluate(Fraction(x0))) for e in row] for row in self.entries]

    def permuted(self, order: Sequence[int]) -> GramMatrix:
        """Same module with basis reordered by ``order`` (a list of old indices)."""
        return GramMatrix(self.n, self.m, self.sign, tuple(self.basis[i] for i in order),
                          tuple(tuple(self.entries[i][j] for j in order) for i in order))

    def label(self) -> str:
        return f"{self.m}{self.sign.value}"


def gram_matrix(n: int, lam, basis: Sequence[HalfDiagram] | None = None) -> GramMatrix:
    """Gram matrix for ``lam = (m, sign)`` or a label such as ``"4+"``."""
    m, sign = parse_lambda(lam) if isinstance(lam, str) else (lam[0], Sign.parse(lam[1]))
    if m <= 1 and sign is not Sign.NONE:
        raise DomainError("the +/- label only applies for m >= 2")
    if m >= 2 and sign is Sign.NONE:
        raise DomainError("modules with m >= 2 need a + or - label")
    basis = tuple(basis if basis is not None else half_diagram_basis(n, m))
    rows = tuple(tuple(gram_entry(a, b, sign) for b in basis) for a in basis)
    return GramMatrix(n, m, sign, basis, rows)


def bareiss_det(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free elimination; every division is exact."""
    a = [list(r) for r in rows]
    size = len(a)
    if size == 0:
        return Poly.const(1)
    sign = 1
    prev = Poly.const(1)
    for k in range(size - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, size) if a[i][k]), None)
            if swap is None:
                return Poly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[-1][-1] * sign


def gram_det(g: GramMatrix) -> Poly:
    return bareiss_det(g.entries)


def rank_of(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    a = [list(map(Fraction, r)) for r in rows]
    rank, cols = 0, len(a[0]) if a else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for i in range(rank + 1, len(a)):
            if a[i][c]:
                f = a[i][c] / a[rank][c]
                a[i] = [u - f * v for u, v in zip(a[i], a[rank])]
        rank += 1
    return rank


def rank_at(g: GramMatrix, x0) -> int:
    """
    Rank of the Gram matrix at ``x = x0``.

    >>> g = gram_matrix(3, (1, None))
    >>> rank_at(g, 1), rank_at(g, -2), rank_at(g, 5)
    (1, 2, 3)
    """
    return rank_of(g.evaluate(x0))


# -- determinants of the (n, n-2) family ------------------------------------------

_D3 = Poly.parse("(x-1)^2*(x+2)")
_D4 = {Sign.PLUS: Poly.parse("(x-1)*x*(x^2+x-4)"), Sign.MINUS: Poly.parse("(x-1)*(x+1)*(x-2)*(x+2)")}


def det_recurrence(n: int, sign) -> Poly:
    """
    ``D_n = x D_{n-1} - D_{n-2}`` from ``D_3`` and ``D_4^{+/-}``.

    >>> str(det_recurrence(5, "-")) == str(Poly.parse("(x-1)*(x+2)*(x^3-x^2-3*x+1)"))
    True
    """
    sign = Sign.parse(sign)
    if n < 3:
        raise DomainError("the recurrence starts at n = 3")
    if n == 3:
        return _D3
    if sign is Sign.NONE:
        raise DomainError("n >= 4 needs a + or - label")
    a, b = _D3, _D4[sign]
    for _ in range(n - 4):
        a, b = b, Poly.x() * b - a
    return b


def _d(k: int) -> Poly:
    return Poly() if k == -1 else chebyshev_d(k)


def det_closed_form(n: int, sign) -> Poly:
    """Chebyshev closed forms for the determinants of the ``(n, n-2)`` modules."""
    sign = Sign.parse(sign)
    if n < 3 or sign is Sign.NONE:
        raise DomainError("closed form needs n >= 3 and a + or - label")
    x = Poly.x()
    if sign is Sign.PLUS:
        return (x - 1) * ((x + 2) * (x - 1) * _d(n - 3) - 2 * x * _d(n - 4))
    return (x - 1) * (x + 2) * ((x - 1) * _d(n - 3) - 2 * _d(n - 4))


# (n, m, sign, factorised determinant) for the tabulated modules
DETERMINANT_TABLE: tuple[tuple[int, int, str, str], ...] = (
    (3, 1, "", "(x-1)^2*(x+2)"),
    (4, 0, "", "(x-1)^2*x^3*(x+2)"),
    (4, 2, "+", "(x-1)*x*(x^2+x-4)"),
    (4, 2, "-", "(x-1)*(x+1)*(x-2)*(x+2)"),
    (5, 1, "", "(x-1)^12*(x+1)*(x-2)*(x+2)^6*(x^2+x-4)"),
    (5, 3, "+", "(x-1)*(x^4+x^3-5*x^2-x+2)"),
    (5, 3, "-", "(x-1)*(x+2)*(x^3-x^2-3*x+1)"),
    (6, 0, "", "(x-1)^12*x^11*(x+1)*(x-2)*(x+2)^6*(x^2+x-4)"),
    (6, 2, "+", "(x-1)^8*x^5*(x+1)*(x-2)*(x+2)*(x^2+x-4)^6*(x^4+x^3-5*x^2-x+2)"),
    (6, 2, "-", "(x-1)^8*(x+1)^6*(x-2)^6*(x+2)^7*(x^2+x-4)*(x^3-x^2-3*x+1)"),
    (6, 4, "+", "(x-1)^2*x*(x^3+2*x^2-4*x-6)"),
    (6, 4, "-", "(x-1)^2*(x+2)*(x^3-4*x-2)"),
)


@dataclass(frozen=True)
class DetRow:
    n: int
    m: int
    sign: str
    dim: int
    det: Poly
    expected: Poly

    @property
    def match(self) -> bool:
        return self.det == self.expected


def determinant_table(max_n: int = 6) -> list[DetRow]:
    out = []
    for n, m, sign, factored in DETERMINANT_TABLE:
        if n > max_n:
            continue
        g = gram_matrix(n, (m, sign))
        out.append(DetRow(n, m, sign, g.dim, gram_det(g), Poly.parse(factored)))
    return out


# -- spin chain -------------------------------------------------------------------

class LMatrix:
    """Sparse square matrix over :class:`LaurentQ`."""

    __slots__ = ("size", "rows")

    def __init__(self, size: int, rows: dict[int, dict[int, LaurentQ]] | None = None):
        self.size = size
        self.rows = {r: {c: v for c, v in row.items() if v} for r, row in (rows or {}).items()}
        self.rows = {r: row for r, row in self.rows.items() if row}

    @classmethod
    def identity(cls, size: int) -> LMatrix:
        return cls(size, {i: {i: LaurentQ.const(1)} for i in range(size)})

    def __getitem__(self, rc) -> LaurentQ:
        r, c = rc
        return self.rows.get(r, {}).get(c, LaurentQ())

    def __add__(self, other: LMatrix) -> LMatrix:
        out = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            tgt = out.setdefault(r, {})
            for c, v in row.items():
                tgt[c] = tgt.get(c, LaurentQ()) + v
        return LMatrix(self.size, out)

    def scale(self, s) -> LMatrix:
        return LMatrix(self.size, {r: {c: v * s for c, v in row.items()} for r, row in self.rows.items()})

    def __matmul__(self, other: LMatrix) -> LMatrix:
        out: dict[int, dict[int, LaurentQ]] = {}
        for r, row in self.rows.items():
            acc: dict[int, LaurentQ] = {}
            for k, v in row.items():
                for c, w in other.rows.get(k, {}).items():
                    acc[c] = acc.get(c, LaurentQ()) + v * w
            out[r] = acc
        return LMatrix(self.size, out)

    def __eq__(self, other):
        return isinstance(other, LMatrix) and self.size == other.size and self.rows == other.rows

    def trace(self) -> LaurentQ:
        return sum((self[i, i] for i in range(self.size)), LaurentQ())

    def transform(self, fn) -> LMatrix:
        return LMatrix(self.size, {r: {c: fn(v) for c, v in row.items()} for r, row in self.rows.items()})

    def conjugate_by_permutation(self, perm: Sequence[int]) -> LMatrix:
        """``P M P^-1`` for the basis permutation ``i -> perm[i]``."""
        return LMatrix(self.size, {perm[r]: {perm[c]: v for c, v in row.items()} for r, row in self.rows.items()})

    def dense(self) -> list[list[LaurentQ]]:
        return [[self[r, c] for c in range(self.size)] for r in range(self.size)]


SPIN_MAX_SITES = 8


def _spin_block() -> dict[tuple[int, int], LaurentQ]:
    q = LaurentQ.q
    return {(1, 1): q(1), (1, 2): q(0), (2, 1): q(0), (2, 2): q(-1)}


def spin_rep_U(i: int, n: int) -> LMatrix:
    """
    ``U_i`` on ``(C^2)^n``: the 4x4 block on sites ``i, i+1`` (basis 00, 01, 10, 11), identity elsewhere.

    >>> u = spin_rep_U(1, 2)
    >>> [[str(e) for e in row] for row in u.dense()]
    [['0', '0', '0', '0'], ['0', 'q', '1', '0'], ['0', '1', 'q^-1', '0'], ['0', '0', '0', '0']]
    """
    if not 1 <= i <= n - 1:
        raise DomainError(f"U_{i} is undefined on {n} sites")
    if n > SPIN_MAX_SITES:
        raise ResourceLimitError(f"{n} sites exceeds the cap of {SPIN_MAX_SITES}")
    block = _spin_block()
    shift = n - i - 1  # bit offset of site i+1; site 1 is the most significant bit
    rows: dict[int, dict[int, LaurentQ]] = {}
    for state in range(2 ** n):
        local = (state >> shift) & 3
        for (r, c), v in block.items():
            if c == local:
                tgt = (state & ~(3 << shift)) | (r << shift)
                rows.setdefault(tgt, {})[state] = v
    return LMatrix(2 ** n, rows)


def spin_hamiltonian(n: int) -> LMatrix:
    """``H = U_1 + ... + U_{n-1}``."""
    if n < 2:
        raise DomainError("the Hamiltonian needs at least two sites")
    h = LMatrix(2 ** n)
    for i in range(1, n):
        h = h + spin_rep_U(i, n)
    return h


def site_reversal(n: int) -> list[int]:
    return [int(format(s, f"0{n}b")[::-1], 2) for s in range(2 ** n)]


def check_spin_relations(n: int):
    """Temperley-Lieb relations for the spin matrices, identically in ``q``."""
    from .report import Report

    report = Report(f"spin-relations[n={n}]")
    us = {i: spin_rep_U(i, n) for i in range(1, n)}
    loop = LaurentQ.q(1) + LaurentQ.q(-1)
    for i, u in us.items():
        report.record(f"U{i}^2 = [2] U{i}", u @ u == u.scale(loop))
        if i + 1 in us:
            v = us[i + 1]
            report.record(f"U{i} U{i + 1} U{i} = U{i}", u @ v @ u == u)
            report.record(f"U{i + 1} U{i} U{i + 1} = U{i + 1}", v @ u @ v == v)
        for j in range(i + 2, n):
            report.record(f"U{i} U{j} = U{j} U{i}", u @ us[j] == us[j] @ u)
    return report
