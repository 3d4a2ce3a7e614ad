"""
The Brauer category: composition with loop counting, formal linear
combinations of diagrams, named generators, relation checks and the
diagram-monoid closure of a generator set.

Composition stacks the first diagram on top of the second. Closed loops are
returned as an exponent of ``x`` (delta); delta is never specialised here.

>>> from shortbrauer.pairpart import parse_diagram
>>> p1 = parse_diagram("J(3,5): (1,3')(2,4')(3,5')(1',2')")
>>> p2 = parse_diagram("J(5,1): (1,2)(4,5)(3,1')")
>>> r, loops = compose(p1, p2)
>>> str(r), loops
("J(3,1): (1,1')(2,3)", 1)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import CompositionError, DomainError, ResourceLimitError
from .pairpart import PairPartition, format_diagram, identity, parse_diagram, tensor
from .report import Report
from .scalars import Poly

DEFAULT_CLOSURE_CAP = 200_000


def trace_composite(p1: PairPartition, p2: PairPartition,
                    marked1: Iterable[int] = (), marked2: Iterable[int] = ()):
    """
    Chain-follow through the shared middle row.

    ``marked1``/``marked2`` are labels of marked (blobbed) pairs; a result pair or
    closed loop is marked when its chain passes through a marked pair.
    Returns ``(mate, plain_loops, marked_loops, marked_result_labels)``.
    """
    m, n = p1.context
    n2, q = p2.context
    if n != n2:
        raise CompositionError(f"cannot compose J({m},{n}) with J({n2},{q})")
    mate1, mate2 = p1.mate, p2.mate
    flag1 = [False] * len(mate1)
    flag2 = [False] * len(mate2)
    for x in marked1:
        flag1[x] = True
    for x in marked2:
        flag2[x] = True
    seen_mid = [False] * n
    res = [-1] * (m + q)
    marked_res = set()

    def walk(side, cur):
        flagged = False
        while True:
            if side == 1:
                y = mate1[cur]
                flagged |= flag1[cur]
                if y < m:
                    return y, flagged
                j = y - m
                seen_mid[j] = True
                side, cur = 2, j
            else:
                y = mate2[cur]
                flagged |= flag2[cur]
                if y >= n:
                    return m + y - n, flagged
                seen_mid[y] = True
                side, cur = 1, m + y

    for t in range(m):
        if res[t] < 0:
            end, flagged = walk(1, t)
            res[t], res[end] = end, t
            if flagged:
                marked_res.update((t, end))
    for b in range(q):
        lab = m + b
        if res[lab] < 0:
            end, flagged = walk(2, n + b)
            res[lab], res[end] = end, lab
            if flagged:
                marked_res.update((lab, end))

    plain = marked = 0
    for j in range(n):
        if seen_mid[j]:
            continue
        flagged = False
        cur = j
        while True:
            seen_mid[cur] = True
            flagged |= flag2[cur]
            k = mate2[cur]
            seen_mid[k] = True
            flagged |= flag1[m + k]
            cur = mate1[m + k] - m
            if cur == j:
                break
        if flagged:
            marked += 1
        else:
            plain += 1
    return res, plain, marked, marked_res


def compose(p1: PairPartition, p2: PairPartition) -> tuple[PairPartition, int]:
    """``p1`` over ``p2``; returns the diagram and the number of closed loops."""
    res, loops, _, _ = trace_composite(p1, p2)
    return PairPartition.from_mate(p1.n_top, p2.n_bottom, res), loops


def product(p1: PairPartition, p2: PairPartition) -> PairPartition:
    return compose(p1, p2)[0]


class DiagramSum:
    """
    A finite linear combination of diagrams of one context with :class:`Poly` coefficients.

    ``a * b`` composes (``a`` on top), ``a @ b`` is the tensor product and
    multiplying by an ``int``/``Fraction``/``Poly`` scales.
    """

    __slots__ = ("context", "terms")

    def __init__(self, context: tuple[int, int], terms: Mapping[PairPartition, object] | None = None):
        self.context = tuple(context)
        self.terms: dict[PairPartition, Poly] = {}
        for d, c in (terms or {}).items():
            if d.context != self.context:
                raise CompositionError(f"{d} does not live in J{self.context}")
            c = c if isinstance(c, Poly) else Poly.const(c)
            if c:
                self.terms[d] = self.terms.get(d, Poly()) + c
        self.terms = {d: c for d, c in self.terms.items() if c}

    @classmethod
    def of(cls, d: PairPartition, coeff=1) -> DiagramSum:
        return cls(d.context, {d: coeff})

    @classmethod
    def zero(cls, context) -> DiagramSum:
        return cls(context)

    def _check(self, other: DiagramSum):
        if self.context != other.context:
            raise CompositionError(f"contexts differ: {self.context} vs {other.context}")

    def __add__(self, other):
        if not isinstance(other, DiagramSum):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, Poly()) + c
        return DiagramSum(self.context, out)

    def __neg__(self):
        return DiagramSum(self.context, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> DiagramSum:
        return DiagramSum(self.context, {d: v * c for d, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DiagramSum):
            return compose_sum(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other):
        if isinstance(other, PairPartition):
            other = DiagramSum.of(other)
        out: dict[PairPartition, Poly] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d = tensor(d1, d2)
                out[d] = out.get(d, Poly()) + c1 * c2
        ctx = (self.context[0] + other.context[0], self.context[1] + other.context[1])
        return DiagramSum(ctx, out)

    def map_coefficients(self, fn) -> DiagramSum:
        return DiagramSum(self.context, {d: fn(c) for d, c in self.terms.items()})

    def coefficient(self, d: PairPartition) -> Poly:
        return self.terms.get(d, Poly())

    def __eq__(self, other):
        if not isinstance(other, DiagramSum):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        return hash((self.context, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0].sort_key()))

    def __repr__(self):
        if not self.terms:
            return f"DiagramSum(J{self.context}, 0)"
        body = " + ".join(f"({c})*[{format_diagram(d)}]" for d, c in self)
        return f"DiagramSum({body})"

    def to_json(self) -> dict:
        return {"context": list(self.context),
                "terms": [{"diagram": format_diagram(d), "coeff": c.to_json()} for d, c in self]}

    @classmethod
    def from_json(cls, data) -> DiagramSum:
        return cls(tuple(data["context"]),
                   {parse_diagram(t["diagram"]): Poly.from_json(t["coeff"]) for t in data["terms"]})


def compose_sum(a: DiagramSum, b: DiagramSum) -> DiagramSum:
    if a.context[1] != b.context[0]:
        raise CompositionError(f"cannot compose J{a.context} with J{b.context}")
    out: dict[PairPartition, Poly] = {}
    x = Poly.x()
    for d1, c1 in a.terms.items():
        for d2, c2 in b.terms.items():
            d, loops = compose(d1, d2)
            c = c1 * c2
            if loops:
                c = c * x ** loops
            out[d] = out.get(d, Poly()) + c
    return DiagramSum((a.context[0], b.context[1]), out)


# -- generators ---------------------------------------------------------------

def sigma(i: int, n: int) -> PairPartition:
    """Transposition diagram exchanging strands ``i`` and ``i+1``."""
    if not 1 <= i <= n - 1:
        raise DomainError(f"sigma_{i} is undefined for n={n}")
    mate = [*range(n, 2 * n), *range(n)]
    a, b = i - 1, i
    mate[a], mate[b] = n + b, n + a
    mate[n + a], mate[n + b] = b, a
    return PairPartition.from_mate(n, n, mate)


def U(i: int, n: int) -> PairPartition:
    """Temperley-Lieb generator: arcs ``{i, i+1}`` on top and bottom."""
    if not 1 <= i <= n - 1:
        raise DomainError(f"U_{i} is undefined for n={n}")
    mate = [*range(n, 2 * n), *range(n)]
    a, b = i - 1, i
    mate[a], mate[b] = b, a
    mate[n + a], mate[n + b] = n + b, n + a
    return PairPartition.from_mate(n, n, mate)


def generator(name: str, n: int) -> PairPartition:
    """Parse ``"sigma(i)"``/``"s1"``/``"U(i)"``/``"U2"`` style names."""
    key = name.replace(" ", "").replace("_", "")
    for prefix, fn in (("sigma", sigma), ("s", sigma), ("U", U), ("u", U)):
        if key.startswith(prefix):
            idx = key[len(prefix):].strip("()")
            if idx.isdigit():
                return fn(int(idx), n)
    raise DomainError(f"unknown generator {name!r}")


@dataclass(frozen=True)
class GeneratorSet:
    """
    Named generators of a diagram algebra of rank ``n``.

    ``kind`` is ``"brauer"`` (all sigma_i and U_i), ``"tl"`` (U_i only) or
    ``"coxeter"`` for ``B_{l,m,n}``: sigma_1..sigma_{l-1} and U_m..U_{n-1}.
    """

    kind: str
    n: int
    l: int = 0
    m: int = 0

    @classmethod
    def coxeter(cls, l: int, m: int, n: int) -> GeneratorSet:
        return cls("coxeter", n, l, m)

    def sigma_indices(self) -> list[int]:
        if self.kind == "brauer":
            return list(range(1, self.n))
        if self.kind == "coxeter":
            return list(range(1, min(self.l, self.n)))
        return []

    def u_indices(self) -> list[int]:
        if self.kind in ("brauer", "tl"):
            return list(range(1, self.n))
        if self.kind == "coxeter":
            return list(range(max(self.m, 1), self.n))
        raise DomainError(f"unknown generator kind {self.kind!r}")

    def named(self) -> dict[str, PairPartition]:
        out = {f"s{i}": sigma(i, self.n) for i in self.sigma_indices()}
        out.update({f"U{i}": U(i, self.n) for i in self.u_indices()})
        return out

    def diagrams(self) -> list[PairPartition]:
        return list(self.named().values())


def _word(names: str, gens: Mapping[str, PairPartition], n: int) -> DiagramSum:
    out = DiagramSum.of(identity(n))
    for name in names.split():
        out = out * DiagramSum.of(gens[name])
    return out


def relation_list(gens: GeneratorSet) -> list[tuple[str, str, str, object]]:
    """
    The defining relations among the generators present, as
    ``(label, lhs_word, rhs_word, rhs_scalar)``.
    """
    g = gens.named()
    S = gens.sigma_indices()
    Ui = gens.u_indices()
    has = g.__contains__
    x = Poly.x()
    rels = []
    for i in Ui:
        rels.append((f"U{i}^2 = x U{i}", f"U{i} U{i}", f"U{i}", x))
        for j in (i - 1, i + 1):
            if has(f"U{j}"):
                rels.append((f"U{i} U{j} U{i} = U{i}", f"U{i} U{j} U{i}", f"U{i}", 1))
        for j in Ui:
            if j > i + 1:
                rels.append((f"U{i} U{j} = U{j} U{i}", f"U{i} U{j}", f"U{j} U{i}", 1))
    for i in S:
        rels.append((f"s{i}^2 = 1", f"s{i} s{i}", "", 1))
        if has(f"s{i + 1}"):
            rels.append((f"s{i} s{i + 1} s{i} = s{i + 1} s{i} s{i + 1}",
                         f"s{i} s{i + 1} s{i}", f"s{i + 1} s{i} s{i + 1}", 1))
        for j in S:
            if j > i + 1:
                rels.append((f"s{i} s{j} = s{j} s{i}", f"s{i} s{j}", f"s{j} s{i}", 1))
    for i in S:
        for j in Ui:
            if j == i:
                rels.append((f"s{i} U{i} = U{i}", f"s{i} U{i}", f"U{i}", 1))
                rels.append((f"U{i} s{i} = U{i}", f"U{i} s{i}", f"U{i}", 1))
            elif abs(i - j) > 1:
                rels.append((f"s{i} U{j} = U{j} s{i}", f"s{i} U{j}", f"U{j} s{i}", 1))
            else:
                rels.append((f"U{j} s{i} U{j} = U{j}", f"U{j} s{i} U{j}", f"U{j}", 1))
    for i in Ui:
        if has(f"U{i + 1}") and has(f"s{i}") and has(f"s{i + 1}"):
            rels.append((f"s{i} U{i + 1} U{i} = s{i + 1} U{i}", f"s{i} U{i + 1} U{i}", f"s{i + 1} U{i}", 1))
            rels.append((f"U{i} U{i + 1} s{i} = U{i} s{i + 1}", f"U{i} U{i + 1} s{i}", f"U{i} s{i + 1}", 1))
    return rels


def check_relations(gens: GeneratorSet) -> Report:
    """Verify each presentation relation as an identity of diagram sums."""
    if gens.n < 2:
        raise DomainError("relations need rank >= 2")
    named = gens.named()
    report = Report(f"relations[{gens.kind} n={gens.n}]")
    for label, lhs, rhs, scalar in relation_list(gens):
        left = _word(lhs, named, gens.n)
        right = _word(rhs, named, gens.n) * scalar
        report.record(label, left == right)
    return report


# -- monoid closure -----------------------------------------------------------

def monoid_closure(gens: Iterable[PairPartition], n: int, cap: int = DEFAULT_CLOSURE_CAP) -> frozenset[PairPartition]:
    """
    Smallest set of diagrams containing ``1_n`` and ``gens`` closed under left
    and right multiplication by the generators (loops discarded).
    """
    gens = list(gens)
    for g in gens:
        if g.context != (n, n):
            raise DomainError(f"generator {g} is not in J({n},{n})")
    seen = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for d in frontier:
            for g in gens:
                for e in (product(d, g), product(g, d)):
                    if e not in seen:
                        seen.add(e)
                        nxt.append(e)
                        if len(seen) > cap:
                            raise ResourceLimitError(f"closure exceeds cap of {cap} diagrams")
        frontier = nxt
    return frozenset(seen)


def sorted_diagrams(ds: Iterable[PairPartition]) -> list[PairPartition]:
    return sorted(ds, key=lambda d: d.sort_key())


def coxeter_closure(l: int, m: int, n: int, cap: int = DEFAULT_CLOSURE_CAP) -> frozenset[PairPartition]:
    """Diagram basis of ``B_{l,m,n}`` at generic delta."""
    return monoid_closure(GeneratorSet.coxeter(l, m, n).diagrams(), n, cap)
