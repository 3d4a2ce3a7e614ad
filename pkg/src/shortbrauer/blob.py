"""
The blob category: non-crossing diagrams with some left-exposed pairs marked.

Composition marks a result pair when its chain through the middle row meets a
marked pair. Closed loops split into plain ones (factor ``x``, delta) and
marked ones (factor ``xp``, delta').

>>> e = blob_generators(1)["e"]
>>> compose_blob(e, e) == (e, 0, 0)
True
>>> u = parse_blob("bB(0,2): (1',2')*")
>>> r, plain, blobbed = compose_blob(u, parse_blob("bB(2,0): (1,2)*"))
>>> str(r), plain, blobbed
('bB(0,0): ', 0, 1)
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .brauer import U as tl_U
from .brauer import trace_composite
from .errors import CompositionError, DiagramError, DomainError, InternalConsistencyError
from .pairpart import (PairPartition, VertexPair, _check_enum, _label, _parse_pairlist, disk_position, format_pair,
                       identity, is_noncrossing, iter_J, vertex_at)
from .report import Report
from .scalars import Poly


def _lab(p: PairPartition, v) -> int:
    return _label(v, p.n_top, p.n_bottom)


def _canon(p: PairPartition, pair) -> VertexPair:
    """Order a pair by disk position."""
    pa, pb = sorted(p.position(_lab(p, v)) for v in pair)
    return (vertex_at(pa, *p.context), vertex_at(pb, *p.context))


def left_exposed_pairs(p: PairPartition) -> frozenset[VertexPair]:
    """
    Pairs of ``p`` not nested under any other pair in disk order.

    >>> from shortbrauer.pairpart import parse_diagram
    >>> sorted(map(format_pair, left_exposed_pairs(parse_diagram("J(4,0): (1,4)(2,3)"))))
    ['(1,4)']
    >>> len(left_exposed_pairs(parse_diagram("J(4,0): (1,2)(3,4)")))
    2
    """
    if not is_noncrossing(p):
        raise DomainError("left exposure is only defined for non-crossing partitions")
    out, outer_end = [], 0
    for a, b in p.position_pairs():
        if a > outer_end:
            out.append((a, b))
            outer_end = b
    ctx = p.context
    return frozenset((vertex_at(a, *ctx), vertex_at(b, *ctx)) for a, b in out)


@dataclass(frozen=True)
class BlobDiagram:
    p: PairPartition
    s: frozenset

    def __post_init__(self):
        s = frozenset(_canon(self.p, pair) for pair in self.s)
        object.__setattr__(self, "s", s)
        exposed = left_exposed_pairs(self.p)
        if not s <= exposed:
            bad = ", ".join(sorted(format_pair(pr) for pr in s - exposed))
            raise DiagramError(f"blobbed pairs must be left-exposed pairs of p: {bad}")

    @property
    def context(self) -> tuple[int, int]:
        return self.p.context

    def blob_labels(self) -> list[int]:
        return [_lab(self.p, v) for pair in self.s for v in pair]

    def sorted_s(self) -> list[VertexPair]:
        """Blobbed pairs in disk order of their smaller endpoint."""
        return sorted(self.s, key=lambda pr: self.p.position(_lab(self.p, pr[0])))

    def sort_key(self):
        marks = sorted(disk_position(pr[0], *self.context) for pr in self.s)
        return (self.p.sort_key(), len(marks), marks)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return format_blob(self)


def format_blob(b: BlobDiagram) -> str:
    body = "".join(format_pair(pr) + ("*" if pr in b.s else "") for pr in b.p.pairs)
    return f"bB({b.p.n_top},{b.p.n_bottom}): {body}"


_BLOB_HEADER = re.compile(r"^\s*bB\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*:(.*)$", re.S)


def parse_blob(text: str) -> BlobDiagram:
    """Parse ``bB(m,n): (a,b)*(c,d')...``; ``*`` marks a blobbed pair."""
    match = _BLOB_HEADER.match(text)
    if not match:
        raise DiagramError(f"not a blob literal: {text!r}")
    pairs, marked = _parse_pairlist(match.group(3), allow_marks=True)
    p = PairPartition(int(match.group(1)), int(match.group(2)), pairs)
    return BlobDiagram(p, frozenset(marked))


def compose_blob(a: BlobDiagram, b: BlobDiagram) -> tuple[BlobDiagram, int, int]:
    """``a`` over ``b``: ``(result, plain_loops, blob_loops)``."""
    if a.context[1] != b.context[0]:
        raise CompositionError(f"cannot compose bB{a.context} with bB{b.context}")
    mate, plain, blobbed, marked = trace_composite(a.p, b.p, a.blob_labels(), b.blob_labels())
    p = PairPartition.from_mate(a.p.n_top, b.p.n_bottom, mate)
    s = frozenset(_canon(p, (p.vertex(x), p.vertex(mate[x]))) for x in marked if x < mate[x])
    if not s <= left_exposed_pairs(p):
        raise InternalConsistencyError(f"composite blob marks not left-exposed: {a} * {b}")
    return BlobDiagram(p, s), plain, blobbed


class BlobSum:
    """Linear combination of blob diagrams over ``Poly`` in ``x`` (delta) and ``xp`` (delta')."""

    __slots__ = ("context", "terms")

    def __init__(self, context, terms: Mapping[BlobDiagram, object] | None = None):
        self.context = tuple(context)
        acc: dict[BlobDiagram, Poly] = {}
        for d, c in (terms or {}).items():
            if d.context != self.context:
                raise CompositionError(f"{d} does not live in bB{self.context}")
            acc[d] = acc.get(d, Poly()) + (c if isinstance(c, Poly) else Poly.const(c))
        self.terms = {d: c for d, c in acc.items() if c}

    @classmethod
    def of(cls, d: BlobDiagram, coeff=1) -> BlobSum:
        return cls(d.context, {d: coeff})

    def __add__(self, other):
        if self.context != other.context:
            raise CompositionError(f"contexts differ: {self.context} vs {other.context}")
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, Poly()) + c
        return BlobSum(self.context, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> BlobSum:
        return BlobSum(self.context, {d: v * c for d, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, BlobSum):
            return self.scale(other)
        if self.context[1] != other.context[0]:
            raise CompositionError(f"cannot compose bB{self.context} with bB{other.context}")
        out: dict[BlobDiagram, Poly] = {}
        x, xp = Poly.x(), Poly.xp()
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d, plain, blobbed = compose_blob(d1, d2)
                out[d] = out.get(d, Poly()) + c1 * c2 * x ** plain * xp ** blobbed
        return BlobSum((self.context[0], other.context[1]), out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, BlobSum):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        return hash((self.context, frozenset(self.terms.items())))

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0].sort_key()))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return f"BlobSum(bB{self.context}, 0)"
        return "BlobSum(" + " + ".join(f"({c})*[{d}]" for d, c in self) + ")"


def blob_generators(n: int) -> dict[str, BlobDiagram]:
    """
    ``e`` (identity with a blob on strand 1) and the unblobbed ``U1..U{n-1}``.

    >>> sorted(blob_generators(3))
    ['U1', 'U2', 'e']
    >>> str(blob_generators(2)["e"])
    "bB(2,2): (1,1')*(2,2')"
    """
    if n < 1:
        raise DomainError("blob generators need n >= 1")
    one = identity(n)
    gens = {"e": BlobDiagram(one, frozenset({(one.vertex(0), one.vertex(n))}))}
    for i in range(1, n):
        gens[f"U{i}"] = BlobDiagram(tl_U(i, n), frozenset())
    return gens


def blob_identity(n: int) -> BlobDiagram:
    return BlobDiagram(identity(n), frozenset())


def blob_word(names: Iterable[str], n: int) -> BlobSum:
    gens = blob_generators(n)
    out = BlobSum.of(blob_identity(n))
    for name in names:
        out = out * BlobSum.of(gens[name])
    return out


def blob_relation_list(n: int) -> list[tuple[str, list[str], list[str], Poly]]:
    """``(label, lhs word, rhs word, scalar)`` meaning ``lhs = scalar * rhs``."""
    x, xp, one = Poly.x(), Poly.xp(), Poly.const(1)
    rels = [("ee = e", ["e", "e"], ["e"], one)]
    for i in range(1, n):
        u = f"U{i}"
        rels.append((f"{u}^2 = x {u}", [u, u], [u], x))
        if i > 1:
            rels.append((f"{u} e = e {u}", [u, "e"], ["e", u], one))
        if i + 1 < n:
            v = f"U{i + 1}"
            rels.append((f"{u} {v} {u} = {u}", [u, v, u], [u], one))
            rels.append((f"{v} {u} {v} = {v}", [v, u, v], [v], one))
        for j in range(i + 2, n):
            v = f"U{j}"
            rels.append((f"{u} {v} = {v} {u}", [u, v], [v, u], one))
    if n >= 2:
        rels.append(("U1 e U1 = xp U1", ["U1", "e", "U1"], ["U1"], xp))
    return rels


def check_blob_relations(n: int) -> Report:
    """Check the blob presentation on the diagram generators at rank ``n``."""
    if n < 2:
        raise DomainError("blob relations need n >= 2")
    report = Report(f"blob-relations[n={n}]")
    for label, lhs, rhs, c in blob_relation_list(n):
        report.record(label, blob_word(lhs, n) == blob_word(rhs, n).scale(c))
    return report


def iter_blob(m: int, n: int) -> Iterator[BlobDiagram]:
    for p in iter_J(m, n, noncrossing=True):
        exposed = sorted(left_exposed_pairs(p), key=lambda pr: p.position(_lab(p, pr[0])))
        for k in range(len(exposed) + 1):
            for s in combinations(exposed, k):
                yield BlobDiagram(p, frozenset(s))


def enumerate_blob(m: int, n: int, cap: int | None = None) -> list[BlobDiagram]:
    """
    The basis ``bB(m, n)``: each non-crossing diagram followed by its blob markings.

    >>> [len(enumerate_blob(k, k)) for k in (1, 2, 3)]
    [2, 6, 20]
    """
    _check_enum(m, n, cap)
    return list(iter_blob(m, n))
