"""
Pair partitions on a two-row vertex set.

A pair partition in ``J(n, m)`` is a perfect matching of ``n`` top vertices and
``m`` bottom vertices. Vertices carry an explicit row tag; the cyclic *disk
order* (top row left to right, then bottom row right to left) is computed on
demand and used for every crossing/nesting question.

>>> s1 = parse_diagram("J(2,2): (1,2')(2,1')")
>>> chi(s1)
1
>>> format_diagram(tensor(s1, identity(1)))
"J(3,3): (1,2')(2,1')(3,3')"
"""
from __future__ import annotations

import enum
import itertools
import os
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DiagramError, DomainError, InvalidShiftError, InvalidVertexError, ResourceLimitError

DEFAULT_MAX_POINTS = 16


class Row(enum.Enum):
    TOP = 0
    BOTTOM = 1


@dataclass(frozen=True)
class Vertex:
    row: Row
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise InvalidVertexError(f"vertex index must be >= 1, got {self.index}")

    def __repr__(self):
        return f"{'T' if self.row is Row.TOP else 'B'}{self.index}"

    def __lt__(self, other):
        return (self.row.value, self.index) < (other.row.value, other.index)


def T(i: int) -> Vertex:
    return Vertex(Row.TOP, i)


def B(i: int) -> Vertex:
    return Vertex(Row.BOTTOM, i)


VertexPair = tuple[Vertex, Vertex]


def max_points() -> int:
    """Enumeration cap on ``n_top + n_bottom``; ``SBL_MAX_POINTS`` overrides the default."""
    return int(os.environ.get("SBL_MAX_POINTS", DEFAULT_MAX_POINTS))


def disk_position(v: Vertex, n_top: int, n_bottom: int) -> int:
    """
    Position of ``v`` in the disk order of ``J(n_top, n_bottom)``, 1-based.

    >>> disk_position(B(1), 5, 3), disk_position(B(3), 5, 3), disk_position(T(3), 5, 3)
    (8, 6, 3)
    """
    limit = n_top if v.row is Row.TOP else n_bottom
    if not 1 <= v.index <= limit:
        raise InvalidVertexError(f"{v!r} out of range for J({n_top},{n_bottom})")
    if v.row is Row.TOP:
        return v.index
    return n_top + n_bottom + 1 - v.index


def vertex_at(pos: int, n_top: int, n_bottom: int) -> Vertex:
    """Inverse of :func:`disk_position`."""
    if not 1 <= pos <= n_top + n_bottom:
        raise InvalidVertexError(f"disk position {pos} out of range")
    if pos <= n_top:
        return T(pos)
    return B(n_top + n_bottom + 1 - pos)


def _interleaved(a: tuple[int, int], b: tuple[int, int]) -> bool:
    a0, a1 = sorted(a)
    return (a0 < b[0] < a1) != (a0 < b[1] < a1)


def pairs_cross(a: VertexPair, b: VertexPair, ctx: tuple[int, int]) -> bool:
    """
    True iff the two pairs interleave in the disk order.

    >>> pairs_cross((T(2), T(7)), (T(3), B(3)), (7, 3))
    True
    >>> pairs_cross((T(1), T(2)), (T(3), T(4)), (4, 0))
    False
    """
    if set(a) & set(b) or a[0] == a[1] or b[0] == b[1]:
        raise DiagramError(f"pairs {a} and {b} overlap")
    pa = tuple(disk_position(v, *ctx) for v in a)
    pb = tuple(disk_position(v, *ctx) for v in b)
    return _interleaved(pa, pb)


class PairPartition:
    """
    An immutable pair partition in ``J(n_top, n_bottom)``.

    Internally each vertex gets a *label*: ``i - 1`` for top ``i`` and
    ``n_top + i - 1`` for bottom ``i``; ``mate[label]`` is the label of its partner.
    Free (unmatched) vertices only occur in the intermediate results of
    :func:`shift` and are marked by ``-1``.
    """

    __slots__ = ("n_top", "n_bottom", "mate", "_hash")

    def __init__(self, n_top: int, n_bottom: int, pairs: Iterable[Sequence[Vertex]] = (),
                 allow_free: bool = False):
        if n_top < 0 or n_bottom < 0:
            raise DiagramError("row sizes must be non-negative")
        mate = [-1] * (n_top + n_bottom)
        for pair in pairs:
            if len(pair) != 2:
                raise DiagramError(f"{pair} is not a pair")
            a, b = (_label(v, n_top, n_bottom) for v in pair)
            if a == b:
                raise DiagramError(f"pair {pair} repeats a vertex")
            if mate[a] != -1 or mate[b] != -1:
                raise DiagramError(f"vertex used twice in {pair}")
            mate[a], mate[b] = b, a
        if not allow_free and -1 in mate:
            raise DiagramError("not a perfect matching: some vertex is unmatched")
        self._init(n_top, n_bottom, tuple(mate))

    def _init(self, n_top, n_bottom, mate):
        self.n_top = n_top
        self.n_bottom = n_bottom
        self.mate = mate
        self._hash = hash((n_top, n_bottom, mate))

    @classmethod
    def from_mate(cls, n_top: int, n_bottom: int, mate: Sequence[int]) -> PairPartition:
        """Trusted constructor from a label-mate array (no validation)."""
        obj = cls.__new__(cls)
        obj._init(n_top, n_bottom, tuple(mate))
        return obj

    @property
    def context(self) -> tuple[int, int]:
        return (self.n_top, self.n_bottom)

    @property
    def size(self) -> int:
        return self.n_top + self.n_bottom

    @property
    def is_perfect(self) -> bool:
        return -1 not in self.mate

    def vertex(self, label: int) -> Vertex:
        return T(label + 1) if label < self.n_top else B(label - self.n_top + 1)

    def position(self, label: int) -> int:
        """Disk position of a label."""
        if label < self.n_top:
            return label + 1
        return self.n_top + self.n_bottom - (label - self.n_top)

    def label_at(self, pos: int) -> int:
        return pos - 1 if pos <= self.n_top else self.n_top + self.n_top + self.n_bottom - pos

    def position_pairs(self) -> list[tuple[int, int]]:
        """Pairs as ``(a, b)`` disk positions with ``a < b``, sorted."""
        out = []
        for x, y in enumerate(self.mate):
            if y > x:
                a, b = self.position(x), self.position(y)
                out.append((a, b) if a < b else (b, a))
        out.sort()
        return out

    @property
    def pairs(self) -> tuple[VertexPair, ...]:
        """Canonical pair list: each pair smaller-disk-position first, sorted by disk position."""
        ctx = self.context
        return tuple((vertex_at(a, *ctx), vertex_at(b, *ctx)) for a, b in self.position_pairs())

    def partner(self, v: Vertex) -> Vertex:
        y = self.mate[_label(v, self.n_top, self.n_bottom)]
        if y < 0:
            raise DiagramError(f"{v!r} is unmatched")
        return self.vertex(y)

    def propagating(self) -> list[VertexPair]:
        """Top-bottom pairs, ordered by top index."""
        return [(self.vertex(x), self.vertex(y)) for x, y in enumerate(self.mate[:self.n_top]) if y >= self.n_top]

    def __eq__(self, other):
        if not isinstance(other, PairPartition):
            return NotImplemented
        return self.n_top == other.n_top and self.n_bottom == other.n_bottom and self.mate == other.mate

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (self.n_top, self.n_bottom, self.position_pairs())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"PairPartition({format_diagram(self)!r})"

    def __str__(self):
        return format_diagram(self)


def _label(v: Vertex, n_top: int, n_bottom: int) -> int:
    disk_position(v, n_top, n_bottom)
    return v.index - 1 if v.row is Row.TOP else n_top + v.index - 1


def identity(n: int) -> PairPartition:
    return PairPartition.from_mate(n, n, [*range(n, 2 * n), *range(n)])


def cup() -> PairPartition:
    """``u``: the single bottom arc in ``J(0, 2)``."""
    return PairPartition(0, 2, [(B(1), B(2))])


def cap() -> PairPartition:
    """``u*``: the single top arc in ``J(2, 0)``."""
    return PairPartition(2, 0, [(T(1), T(2))])


def empty() -> PairPartition:
    return PairPartition.from_mate(0, 0, ())


def chi(p: PairPartition) -> int:
    """Number of crossing pairs-of-pairs of ``p``."""
    pp = p.position_pairs()
    return sum(_interleaved(a, b) for a, b in itertools.combinations(pp, 2))


def is_noncrossing(p: PairPartition) -> bool:
    # One pass with a stack: a matching is non-crossing iff it is well-parenthesised.
    stack = []
    for pos in range(1, p.size + 1):
        other = p.position(p.mate[p.label_at(pos)])
        if other > pos:
            stack.append(pos)
        elif not stack or stack.pop() != other:
            return False
    return True


def tensor(p: PairPartition, q: PairPartition) -> PairPartition:
    """Side-by-side concatenation, ``p`` on the left."""
    n, m = p.context
    n2, m2 = q.context
    N = n + n2

    def relabel_p(x):
        return x if x < 0 or x < n else x + n2

    def relabel_q(x):
        if x < 0:
            return x
        return x + n if x < n2 else x - n2 + N + m

    mate = [0] * (N + m + m2)
    for x, y in enumerate(p.mate):
        mate[relabel_p(x)] = relabel_p(y)
    for x, y in enumerate(q.mate):
        mate[relabel_q(x)] = relabel_q(y)
    return PairPartition.from_mate(N, m + m2, mate)


def tensor_all(parts: Iterable[PairPartition]) -> PairPartition:
    out = empty()
    for part in parts:
        out = tensor(out, part)
    return out


def flip(p: PairPartition) -> PairPartition:
    """Upside-down diagram: ``J(n, m) -> J(m, n)``."""
    n, m = p.context

    def swap(x):
        if x < 0:
            return x
        return x + m if x < n else x - n

    mate = [0] * (n + m)
    for x, y in enumerate(p.mate):
        mate[swap(x)] = swap(y)
    return PairPartition.from_mate(m, n, mate)


def shift(p: PairPartition, delta: int) -> PairPartition:
    """
    Relabel every index by ``delta`` (``+1`` or ``-1``) in both rows.

    ``shift(p, +1)`` leaves top 1 and bottom 1 unmatched, so its result is a
    partial matching (``is_perfect`` is False) until those are filled.

    >>> str(shift(identity(1), +1))
    "J(2,2): (2,2')"
    """
    if delta not in (1, -1):
        raise InvalidShiftError("delta must be +1 or -1")
    n, m = p.context
    if delta == -1:
        if n == 0 or m == 0 or p.mate[0] != -1 or p.mate[n] != -1:
            raise InvalidShiftError("cannot shift down: top 1 or bottom 1 is in use")
    pairs = [tuple(Vertex(v.row, v.index + delta) for v in pair) for pair in _raw_pairs(p)]
    return PairPartition(n + delta, m + delta, pairs, allow_free=True)


def _raw_pairs(p: PairPartition) -> list[VertexPair]:
    return [(p.vertex(x), p.vertex(y)) for x, y in enumerate(p.mate) if y > x]


def from_pairs(n_top: int, n_bottom: int, pairs: Iterable[Sequence[Vertex]]) -> PairPartition:
    return PairPartition(n_top, n_bottom, pairs)


def _check_enum(n: int, m: int, cap: int | None):
    if n < 0 or m < 0:
        raise DomainError("row sizes must be non-negative")
    if (n + m) % 2:
        raise DomainError(f"J({n},{m}) is empty: n+m is odd")
    limit = max_points() if cap is None else cap
    if n + m > limit:
        raise ResourceLimitError(f"J({n},{m}) has {n + m} points, above the cap of {limit}")


def _matchings(positions: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not positions:
        yield []
        return
    first, rest = positions[0], positions[1:]
    for k, other in enumerate(rest):
        for tail in _matchings(rest[:k] + rest[k + 1:]):
            yield [(first, other), *tail]


def _nc_matchings(positions: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not positions:
        yield []
        return
    for k in range(1, len(positions), 2):
        for inner in _nc_matchings(positions[1:k]):
            for outer in _nc_matchings(positions[k + 1:]):
                yield [(positions[0], positions[k]), *inner, *outer]


def _from_positions(n: int, m: int, pos_pairs) -> PairPartition:
    mate = [0] * (n + m)
    total = n + m

    def lab(pos):
        return pos - 1 if pos <= n else n + total - pos

    for a, b in pos_pairs:
        mate[lab(a)], mate[lab(b)] = lab(b), lab(a)
    return PairPartition.from_mate(n, m, mate)


def iter_J(n: int, m: int, noncrossing: bool = False, cap: int | None = None) -> Iterator[PairPartition]:
    _check_enum(n, m, cap)
    gen = _nc_matchings if noncrossing else _matchings
    for pos_pairs in gen(list(range(1, n + m + 1))):
        yield _from_positions(n, m, pos_pairs)


def enumerate_J(n: int, m: int, filter: str = "all", cap: int | None = None) -> list[PairPartition]:
    """
    All pair partitions of ``J(n, m)`` (``filter="all"``) or the non-crossing
    ones (``filter="noncrossing"``), lexicographic in disk order.

    >>> len(enumerate_J(3, 3)), len(enumerate_J(4, 4, "noncrossing"))
    (15, 14)
    """
    key = filter.lower().replace("-", "").replace("_", "")
    if key not in ("all", "noncrossing"):
        raise ValueError(f"unknown filter {filter!r}")
    return list(iter_J(n, m, noncrossing=key == "noncrossing", cap=cap))


# -- textual literals ---------------------------------------------------------

_HEADER = re.compile(r"^\s*J\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*:(.*)$", re.S)
_PAIR = re.compile(r"\(\s*(\d+)\s*('?)\s*,\s*(\d+)\s*('?)\s*\)(\*?)")


def _parse_pairlist(body: str, allow_marks: bool):
    pairs, marked = [], []
    pos = 0
    body = body.strip()
    compact = re.sub(r"\s+", "", body)
    for match in _PAIR.finditer(compact):
        if match.start() != pos:
            raise DiagramError(f"cannot parse pair list near {compact[pos:]!r}")
        pos = match.end()
        a = Vertex(Row.BOTTOM if match.group(2) else Row.TOP, int(match.group(1)))
        b = Vertex(Row.BOTTOM if match.group(4) else Row.TOP, int(match.group(3)))
        pairs.append((a, b))
        if match.group(5):
            if not allow_marks:
                raise DiagramError("blob marks are not allowed in a plain diagram literal")
            marked.append((a, b))
    if pos != len(compact):
        raise DiagramError(f"cannot parse pair list near {compact[pos:]!r}")
    return pairs, marked


def parse_diagram(text: str) -> PairPartition:
    """Parse ``J(n,m): (a,b)(c,d')...``; primed indices are bottom vertices."""
    match = _HEADER.match(text)
    if not match:
        raise DiagramError(f"not a diagram literal: {text!r}")
    n, m = int(match.group(1)), int(match.group(2))
    pairs, _ = _parse_pairlist(match.group(3), allow_marks=False)
    return PairPartition(n, m, pairs)


def format_vertex(v: Vertex) -> str:
    return f"{v.index}'" if v.row is Row.BOTTOM else str(v.index)


def format_pair(pair: VertexPair) -> str:
    return f"({format_vertex(pair[0])},{format_vertex(pair[1])})"


def format_diagram(p: PairPartition) -> str:
    body = "".join(format_pair(pair) for pair in p.pairs)
    return f"J({p.n_top},{p.n_bottom}): {body}"
