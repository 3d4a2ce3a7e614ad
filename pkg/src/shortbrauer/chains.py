"""
Chains and the Li-chain characterisation.

A *chain* is an ordered list of pairs ``{l_k, r_k}`` (``l_k < r_k`` in disk
order) with ``l_{k-1} < l_k < r_{k-1} < r_k``. A partition is *Li-chain* when
it splits into ``i`` chains rooted at top vertices ``1..i`` and ending at
bottom vertices ``1'..i'``, plus a remainder of pairs that cross nothing.

Membership is decided by the combinatorial test below:

* every chain link region, the open disk interval ``(l_{k+1}, r_k)``, is
  disjoint from every other link region (same chain or not);
* remainder pairs cross neither each other nor any chain link.

The first condition, restricted to a single chain, is what forces the
boundary height sequence ``0 1 (2 1)^(j-1) 0``.

>>> from shortbrauer.pairpart import parse_diagram
>>> p = parse_diagram("J(7,3): (1,2')(2,7)(3,3')(4,1')(5,6)")
>>> d = li_chain_decompose(p, 3)
>>> [[format_pair(l) for l in c.links] for c in d.chains]
[["(1,2')"], ['(2,7)', "(4,1')"], ["(3,3')"]]
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .brauer import GeneratorSet, monoid_closure, product, sorted_diagrams
from .errors import DomainError, InternalConsistencyError
from .pairpart import (PairPartition, VertexPair, _interleaved, disk_position, enumerate_J, format_diagram,
                       format_pair, vertex_at)
from .report import Report


def _oriented(pair: VertexPair, ctx) -> tuple[int, int]:
    a, b = (disk_position(v, *ctx) for v in pair)
    return (a, b) if a < b else (b, a)


def is_chain(links: Sequence[VertexPair], ctx: tuple[int, int]) -> bool:
    """
    Consecutive links interleave as ``l_{k-1} < l_k < r_{k-1} < r_k``.

    >>> from shortbrauer.pairpart import T, B
    >>> is_chain([(T(2), T(7)), (T(3), B(3))], (7, 3)), is_chain([(T(1), T(2)), (T(3), T(4))], (4, 0))
    (True, False)
    """
    if not links:
        return False
    pos = [_oriented(pair, ctx) for pair in links]
    return all(l0 < l1 < r0 < r1 for (l0, r0), (l1, r1) in zip(pos, pos[1:]))


@dataclass(frozen=True)
class Chain:
    """Links as disk-position pairs ``(l, r)`` in the context ``ctx``."""

    ctx: tuple[int, int]
    positions: tuple[tuple[int, int], ...]

    @classmethod
    def from_links(cls, links: Sequence[VertexPair], ctx) -> Chain:
        return cls(tuple(ctx), tuple(_oriented(pair, ctx) for pair in links))

    @property
    def links(self) -> tuple[VertexPair, ...]:
        return tuple((vertex_at(a, *self.ctx), vertex_at(b, *self.ctx)) for a, b in self.positions)

    def __len__(self):
        return len(self.positions)

    @property
    def start(self) -> int:
        return self.positions[0][0]

    @property
    def end(self) -> int:
        return self.positions[-1][1]

    def link_regions(self) -> list[tuple[int, int]]:
        """Open intervals ``(l_{k+1}, r_k)`` between consecutive links."""
        return [(nxt[0], cur[1]) for cur, nxt in zip(self.positions, self.positions[1:])]


def boundary_height_seq(c: Chain) -> list[int]:
    """
    Heights of the boundary intervals cut by the chain endpoints, from the
    left edge: how many links enclose each interval.

    >>> from shortbrauer.pairpart import T, B
    >>> boundary_height_seq(Chain.from_links([(T(2), T(7)), (T(3), B(3))], (7, 3)))
    [0, 1, 2, 1, 0]
    """
    if not is_chain(c.links, c.ctx):
        raise DomainError("not a chain")
    ends = sorted(x for pair in c.positions for x in pair)
    probes = [ends[0] - 0.5] + [e + 0.5 for e in ends]
    return [sum(l < t < r for l, r in c.positions) for t in probes]


@dataclass(frozen=True)
class ChainDecomposition:
    i: int
    chains: tuple[Chain, ...]
    remainder: tuple[tuple[int, int], ...]
    ctx: tuple[int, int]

    @property
    def remainder_pairs(self) -> tuple[VertexPair, ...]:
        return tuple((vertex_at(a, *self.ctx), vertex_at(b, *self.ctx)) for a, b in self.remainder)

    def describe(self) -> dict:
        return {"i": self.i,
                "chains": [[format_pair(l) for l in c.links] for c in self.chains],
                "remainder": [format_pair(pr) for pr in self.remainder_pairs]}


def _disjoint(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[1] <= b[0] or b[1] <= a[0]


def iter_li_chain_decompositions(p: PairPartition, i: int) -> Iterator[ChainDecomposition]:
    """Every decomposition of ``p`` into ``i`` exclusive chains plus a non-crossing remainder."""
    n_top, n_bottom = p.context
    if i < 1 or n_top < i or n_bottom < i:
        raise DomainError(f"need 1 <= i <= min(n_top, n_bottom); got i={i} for J({n_top},{n_bottom})")
    pairs = p.position_pairs()
    left_of = {a: (a, b) for a, b in pairs}
    N = p.size
    end_zone = N - i + 1
    used: set[tuple[int, int]] = set()
    regions: list[tuple[int, int]] = []
    chains: list[list[tuple[int, int]]] = []

    def extend(links: list[tuple[int, int]]):
        l0, r0 = links[-1]
        if r0 >= end_zone:
            yield links
        for l1 in range(l0 + 1, r0):
            nxt = left_of.get(l1)
            if nxt is None or nxt in used or nxt[1] <= r0:
                continue
            region = (l1, r0)
            if not all(_disjoint(region, other) for other in regions):
                continue
            used.add(nxt)
            regions.append(region)
            yield from extend(links + [nxt])
            regions.pop()
            used.discard(nxt)

    def build(k: int):
        if k > i:
            rest = [pr for pr in pairs if pr not in used]
            links = [pr for c in chains for pr in c]
            ok = all(not _interleaved(a, b) for a, b in itertools.combinations(rest, 2)) and \
                all(not _interleaved(a, b) for a in rest for b in links)
            if ok:
                yield ChainDecomposition(i, tuple(Chain(p.context, tuple(c)) for c in chains),
                                         tuple(rest), p.context)
            return
        first = left_of.get(k)
        if first is None or first in used:
            return
        used.add(first)
        # extend() keeps its links in used/regions while suspended at a yield
        for links in extend([first]):
            chains.append(links)
            yield from build(k + 1)
            chains.pop()
        used.discard(first)

    yield from build(1)


def li_chain_decompose(p: PairPartition, i: int) -> ChainDecomposition | None:
    """The unique Li-chain decomposition of ``p``, or ``None``."""
    found = list(itertools.islice(iter_li_chain_decompositions(p, i), 2))
    if len(found) > 1:
        raise InternalConsistencyError(f"{format_diagram(p)} has two L{i}-chain decompositions")
    return found[0] if found else None


def is_li_chain(p: PairPartition, i: int) -> bool:
    return li_chain_decompose(p, i) is not None


def enumerate_li_chain(m: int, n: int, i: int, cap: int | None = None) -> list[PairPartition]:
    """``J^i_{<=i-1}(m, n)`` in disk-lexicographic order."""
    if m < i or n < i:
        raise DomainError(f"need m, n >= i (got m={m}, n={n}, i={i})")
    return [p for p in enumerate_J(m, n, cap=cap) if is_li_chain(p, i)]


def module_generators(i: int, m: int) -> dict[str, PairPartition]:
    """Generators of ``B_{i+1,i+1,m}``: sigma_1..sigma_i and U_j for j > i."""
    return GeneratorSet.coxeter(i + 1, i + 1, m).named()


def verify_module_closure(i: int, m: int, n: int) -> Report:
    """Left action of ``B_{i+1,i+1,m}`` generators preserves ``J^i_{<=i-1}(m, n)``."""
    report = Report(f"module-closure[i={i} m={m} n={n}]")
    basis = enumerate_li_chain(m, n, i)
    gens = module_generators(i, m)
    for p in basis:
        for name, g in gens.items():
            q = product(g, p)
            if not is_li_chain(q, i):
                report.fail(f"{name} * [{format_diagram(p)}] = [{format_diagram(q)}]")
            else:
                report.tick()
    report.sizes.update(diagrams=len(basis), generators=len(gens))
    return report


def verify_chain_basis_theorem(i: int, m: int) -> Report:
    """Diagram closure of ``B_{i+1,i+1,m}`` equals the set of Li-chain diagrams."""
    report = Report(f"chain-basis[i={i} m={m}]")
    closure = monoid_closure(module_generators(i, m).values(), m)
    chain_set = set(enumerate_li_chain(m, m, i))
    report.sizes.update(closure=len(closure), li_chain=len(chain_set))
    for d in sorted_diagrams(closure - chain_set):
        report.fail(f"in closure only: {format_diagram(d)}")
    for d in sorted_diagrams(chain_set - closure):
        report.fail(f"L{i}-chain only: {format_diagram(d)}")
    report.record("closure == L%d-chain set" % i, closure == chain_set)
    return report
