"""
From blob diagrams to L1-chain diagrams.

``psi`` threads the blobbed pairs of ``(p, s)`` into one chain from top 1 to
bottom 1 and shifts the rest of ``p`` one place right. It is a bijection
``bB(m, n) -> J^1(m+1, n+1)``; ``phi`` averages it over blob subsets and
becomes a homomorphism once ``delta' = (delta + 1) / 2``.

>>> from shortbrauer.blob import blob_generators
>>> e = blob_generators(1)["e"]
>>> str(psi(e))
"J(2,2): (1,2')(2,1')"
>>> phi(e)
DiagramSum((1/2)*[J(2,2): (1,2')(2,1')] + (1/2)*[J(2,2): (1,1')(2,2')])
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .blob import BlobDiagram, BlobSum, blob_relation_list, enumerate_blob
from .brauer import DiagramSum, GeneratorSet, U, compose, identity, monoid_closure, sigma
from .chains import Chain, enumerate_li_chain, li_chain_decompose
from .errors import DomainError
from .pairpart import (PairPartition, VertexPair, B, T, cap, cup, disk_position, enumerate_J, format_diagram,
                       format_pair, tensor, tensor_all, vertex_at)
from .report import Report
from .scalars import Poly

# delta' as seen from the Brauer side
DELTAP_IMAGE = (Poly.x() + 1) / 2


def _positions(s: Sequence[VertexPair], ctx) -> list[tuple[int, int]]:
    out = []
    for pair in s:
        a, b = sorted(disk_position(v, *ctx) for v in pair)
        out.append((a, b))
    return sorted(out)


def chain_x(s: Sequence[VertexPair], ctx: tuple[int, int]) -> Chain:
    """
    The chain ``{1, r1+1}, {l1+1, r2+1}, ..., {lk+1, 1'}`` in ``ctx + (1, 1)``.

    >>> [format_pair(l) for l in chain_x([(T(1), B(1))], (1, 1)).links]
    ["(1,2')", "(2,1')"]
    >>> [format_pair(l) for l in chain_x([], (2, 0)).links]
    ["(1,1')"]
    """
    m, n = ctx
    pos = _positions(s, ctx)
    flat = [x for pr in pos for x in pr]
    if flat != sorted(set(flat)):
        raise DomainError("blob pairs must be nested-free and ordered l1 < r1 < l2 < r2 < ...")
    new_ctx = (m + 1, n + 1)
    last = m + n + 2
    lefts = [1] + [l + 1 for l, _ in pos]
    rights = [r + 1 for _, r in pos] + [last]
    return Chain(new_ctx, tuple(zip(lefts, rights)))


def chain_xbar(x: Chain) -> list[VertexPair]:
    """
    Inverse of :func:`chain_x`: the pairs ``{l_t, r_t}`` in the smaller context.

    >>> from shortbrauer.pairpart import format_pair
    >>> [format_pair(p) for p in chain_xbar(chain_x([(T(1), B(1))], (1, 1)))]
    ["(1,1')"]
    """
    m, n = x.ctx[0] - 1, x.ctx[1] - 1
    if m < 0 or n < 0 or x.start != 1 or x.end != m + n + 2:
        raise DomainError("chain must run from top 1 to bottom 1")
    links = x.positions
    return [(vertex_at(links[t][0] - 1, m, n), vertex_at(links[t - 1][1] - 1, m, n))
            for t in range(1, len(links))]


def psi(b: BlobDiagram) -> PairPartition:
    """``x(s)`` together with the unblobbed pairs shifted right by one."""
    m, n = b.context
    ctx = (m + 1, n + 1)
    chain = chain_x(b.sorted_s(), b.context)
    rest = [pr for pr in b.p.position_pairs()
            if (vertex_at(pr[0], m, n), vertex_at(pr[1], m, n)) not in b.s]
    pos_pairs = list(chain.positions) + [(a + 1, c + 1) for a, c in rest]
    return PairPartition(*ctx, [(vertex_at(a, *ctx), vertex_at(c, *ctx)) for a, c in pos_pairs])


def psi_inv(p: PairPartition) -> BlobDiagram:
    """Undo :func:`psi` on an L1-chain diagram."""
    if p.n_top < 1 or p.n_bottom < 1:
        raise DomainError("psi_inv needs at least one vertex on each row")
    dec = li_chain_decompose(p, 1)
    if dec is None:
        raise DomainError(f"{format_diagram(p)} is not an L1-chain diagram")
    m, n = p.n_top - 1, p.n_bottom - 1
    s = chain_xbar(dec.chains[0])
    rest = [(vertex_at(a - 1, m, n), vertex_at(c - 1, m, n)) for a, c in dec.remainder]
    return BlobDiagram(PairPartition(m, n, s + rest), frozenset(s))


def phi(b: BlobDiagram) -> DiagramSum:
    """``2^-|s|`` times the sum of ``psi(p, z)`` over subsets ``z`` of ``s``."""
    s = list(b.s)
    ctx = (b.context[0] + 1, b.context[1] + 1)
    weight = Fraction(1, 2 ** len(s))
    out = DiagramSum(ctx)
    for k in range(len(s) + 1):
        for z in itertools.combinations(s, k):
            out = out + DiagramSum.of(psi(BlobDiagram(b.p, frozenset(z))), weight)
    return out


def phi_sum(x: BlobSum) -> DiagramSum:
    """Linear extension of :func:`phi`; ``xp`` is replaced by ``(x + 1) / 2``."""
    out = DiagramSum((x.context[0] + 1, x.context[1] + 1))
    for d, c in x.terms.items():
        out = out + phi(d).scale(c.substitute_deltap(DELTAP_IMAGE))
    return out


def theta_image(name: str, n: int) -> DiagramSum:
    """
    Image of a blob generator at rank ``n`` inside ``kJ(n+1, n+1)``.

    >>> theta_image("U1", 2) == DiagramSum.of(U(2, 3))
    True
    """
    if name == "e":
        return (DiagramSum.of(identity(n + 1)) + DiagramSum.of(sigma(1, n + 1))).scale(Fraction(1, 2))
    if name.startswith("U") and name[1:].isdigit():
        i = int(name[1:])
        if not 1 <= i < n:
            raise DomainError(f"U{i} is not a generator at rank {n}")
        return DiagramSum.of(U(i + 1, n + 1))
    raise DomainError(f"unknown blob generator {name!r}")


def theta_word(names: Sequence[str], n: int) -> DiagramSum:
    out = DiagramSum.of(identity(n + 1))
    for name in names:
        out = out * theta_image(name, n)
    return out


def _theta(v) -> int:
    return max(v // 2, 0)


def overline_embed(p: PairPartition, r: int) -> PairPartition:
    """
    Pad ``p`` in ``J(s, t)`` to ``J(r, r)`` with top arcs and bottom arcs on the right.

    >>> str(overline_embed(tensor(identity(1), cup()), 3))
    "J(3,3): (1,1')(2,3)(3',2')"
    >>> overline_embed(identity(2), 3)
    Traceback (most recent call last):
    ...
    shortbrauer.errors.DomainError: cannot embed J(2,2) into J(3,3)
    """
    s, t = p.context
    if r < max(s, t) or (r - s) % 2 or (r - t) % 2:
        raise DomainError(f"cannot embed J({s},{t}) into J({r},{r})")
    return tensor_all([p] + [cap()] * _theta(r - s) + [cup()] * _theta(r - t))


# -- verification -------------------------------------------------------------

def verify_theta(n: int) -> Report:
    """Relations on the generator images, surjectivity and the dimension count."""
    if n < 2:
        raise DomainError("verify_theta needs n >= 2")
    report = Report(f"theta[n={n}]")
    for label, lhs, rhs, c in blob_relation_list(n):
        left = theta_word(lhs, n)
        right = theta_word(rhs, n).scale(c.substitute_deltap(DELTAP_IMAGE))
        report.record(label, left == right)
    target = set(enumerate_li_chain(n + 1, n + 1, 1))
    closure = monoid_closure(GeneratorSet.coxeter(2, 2, n + 1).diagrams(), n + 1)
    report.record("closure of {s1, U2..Un} = L1-chain set", closure == target)
    blobs = enumerate_blob(n, n)
    report.record("images of psi are distinct L1-chain diagrams",
                  {psi(b) for b in blobs} == target and len(blobs) == len(target))
    report.sizes.update(blob_basis=len(blobs), l1_chain=len(target), closure=len(closure))
    return report


def verify_phi_functor(m: int, n: int, q: int) -> Report:
    """``phi(a) * phi(b) == phi(a o b)`` on all basis pairs, and compatibility with tensoring."""
    report = Report(f"phi-functor[m={m} n={n} q={q}]")
    left, right = enumerate_blob(m, n), enumerate_blob(n, q)
    images = {b: phi(b) for b in left + right}
    bad = 0
    for a in left:
        for b in right:
            lhs = images[a] * images[b]
            rhs = phi_sum(BlobSum.of(a) * BlobSum.of(b))
            if lhs != rhs:
                bad += 1
                report.fail(f"phi({a}) * phi({b}) != phi of the product")
            else:
                report.tick()
    report.sizes.update(products=len(left) * len(right))
    report.record(f"homomorphism on {len(left) * len(right)} products", bad == 0)
    bad = 0
    for a in left:
        for p0 in (identity(1), cup(), cap()):
            if phi(BlobDiagram(tensor(a.p, p0), a.s)) != images[a] @ p0:
                bad += 1
                report.fail(f"tensor compatibility fails for {a} and {format_diagram(p0)}")
    report.record("phi(p (x) p0, s) = phi(p, s) (x) p0", bad == 0)
    return report


def verify_psi_bijection(m: int, n: int) -> Report:
    """Round trips of ``psi``/``psi_inv`` and the tensor-with-``u`` property."""
    report = Report(f"psi-bijection[m={m} n={n}]")
    blobs = enumerate_blob(m, n)
    images = [psi(b) for b in blobs]
    report.record("psi_inv o psi = id", all(psi_inv(y) == b for b, y in zip(blobs, images)))
    target = enumerate_li_chain(m + 1, n + 1, 1)
    report.record("psi o psi_inv = id", all(psi(psi_inv(y)) == y for y in target))
    report.record("psi is onto the L1-chain set", set(images) == set(target) and len(images) == len(target))
    report.sizes.update(blob_basis=len(blobs), l1_chain=len(target))
    if n >= 1:
        ok = True
        for b, y in zip(blobs, images):
            if y.partner(B(n + 1)) == B(n):
                tail = (B(n - 1), B(n)) if n >= 2 else None
                ok &= tail is not None and b.p.partner(B(n)) == B(n - 1) and \
                    (B(n - 1), B(n)) not in b.s and (B(n), B(n - 1)) not in b.s
        report.record("psi(X) = Y (x) u forces X = X' (x) u", ok)
    return report


def verify_overline(r: int, sizes: Sequence[tuple[int, int]] | None = None) -> Report:
    """Embedding preserves L1-chain membership and commutes with composition up to loops."""
    report = Report(f"overline[r={r}]")
    sizes = sizes or [(s, t) for s in range(r % 2, r + 1, 2) for t in range(r % 2, r + 1, 2)]
    diagrams = {st: enumerate_J(*st) for st in sizes}
    ok = True
    for st, ds in diagrams.items():
        if min(st) < 1:
            continue
        for p in ds:
            ok &= (li_chain_decompose(p, 1) is not None) == (li_chain_decompose(overline_embed(p, r), 1) is not None)
    report.record("L1-chain iff embedding is", ok)
    ok = True
    for (s, t), ps in diagrams.items():
        for (t2, v), qs in diagrams.items():
            if t2 != t:
                continue
            for p in ps:
                for q in qs:
                    comp = compose(p, q)[0]
                    ok &= compose(overline_embed(p, r), overline_embed(q, r))[0] == overline_embed(comp, r)
    report.record("embedding of a composite is the composite of embeddings", ok)
    return report
