"""Constructions of face lattices: spheres, cycles, duals, products.

The empty sphere (dimension -1) is stored with a single dummy vertex so that
its top face has a nonempty shadow; ``tensor`` treats that dummy as a real
vertex (which is exactly what makes ``tensor(S^b, S^-1) = S^(b+1)`` work),
while ``join`` strips it (joining with the empty sphere is the identity).
"""

from __future__ import annotations

import itertools

from .lattice import (
    FaceLattice,
    InfeasibleSize,
    InvalidParameter,
    PreconditionFailed,
    _bits,
    _popcount,
    relabel,
)

__all__ = [
    "standard_sphere",
    "cycle",
    "dual",
    "tensor",
    "join",
    "cartesian",
    "barycentric",
]

_MAX_FACES = 2_000_000


def standard_sphere(b: int, labels=None) -> FaceLattice:
    """Boundary sphere of the (b+1)-simplex: the Boolean lattice on b+2
    vertices with rank = shadow size.  ``b >= -1``."""
    if b < -1:
        raise InvalidParameter("sphere dimension must be >= -1")
    n = b + 2
    if labels is None:
        labels = tuple(f"v{i}" for i in range(n))
    else:
        labels = tuple(labels)
        if len(labels) != n:
            raise InvalidParameter(f"need exactly {n} labels for a {b}-sphere")
    masks = list(range(1 << n))
    ranks = [_popcount(m) for m in masks]
    return FaceLattice(labels, masks, ranks)


def cycle(n: int, labels=None) -> FaceLattice:
    """The n-gon as a 1-dimensional lattice; ``n >= 3``."""
    if n < 3:
        raise InvalidParameter("a cycle needs at least 3 vertices")
    if labels is None:
        labels = tuple(f"c{i}" for i in range(n))
    else:
        labels = tuple(labels)
        if len(labels) != n:
            raise InvalidParameter(f"need exactly {n} labels")
    masks = [0]
    ranks = [0]
    for i in range(n):
        masks.append(1 << i)
        ranks.append(1)
    for i in range(n):
        masks.append((1 << i) | (1 << ((i + 1) % n)))
        ranks.append(2)
    masks.append((1 << n) - 1)
    ranks.append(3)
    return FaceLattice(labels, masks, ranks)


def dual(L: FaceLattice) -> FaceLattice:
    """Rank-reversed lattice: vertices are the facets of ``L``.

    Each face maps to the set of facets above it.  The dimension is
    preserved.  Lattices with at most two faces (the empty sphere and the
    one-element lattice) are self-dual and returned unchanged.
    """
    if L.top_rank <= 1:
        return FaceLattice(L.labels, L.masks, L.ranks)
    facets = L.facet_masks
    labels = ["+".join(sorted(L.labels_of(fm))) for fm in facets]
    R = L.top_rank
    masks = []
    ranks = []
    for m in L.masks:
        mm = 0
        for i, fm in enumerate(facets):
            if m & ~fm == 0:
                mm |= 1 << i
        masks.append(mm)
        ranks.append(R - L.rank_of(m))
    return FaceLattice(labels, masks, ranks)


def _product_labels(L1: FaceLattice, L2: FaceLattice) -> tuple[str, ...]:
    return tuple(
        [f"L:{x}" for x in L1.labels] + [f"R:{y}" for y in L2.labels]
    )


def tensor(L1: FaceLattice, L2: FaceLattice) -> FaceLattice:
    """All pairs of faces; rank adds.  dim = d1 + d2 + 2, excess adds."""
    n = L1.n + L2.n
    if n > 64:
        raise InfeasibleSize("tensor product exceeds the 64-vertex capacity")
    if len(L1.masks) * len(L2.masks) > _MAX_FACES:
        raise InfeasibleSize("tensor product has too many faces")
    labels = _product_labels(L1, L2)
    shift = L1.n
    masks = []
    ranks = []
    for m1, r1 in zip(L1.masks, L1.ranks):
        for m2, r2 in zip(L2.masks, L2.ranks):
            masks.append(m1 | (m2 << shift))
            ranks.append(r1 + r2)
    return FaceLattice(labels, masks, ranks)


def join(L1: FaceLattice, L2: FaceLattice) -> FaceLattice:
    """Pairs of non-top faces plus a common top; dim = d1 + d2 + 1.

    Joining with the empty sphere is the identity (its stored dummy vertex
    does not survive into the result).
    """
    if L1.top_rank < 1 or L2.top_rank < 1:
        raise InvalidParameter("join factors must have bottom != top")
    if L1.dim == -1 and L2.dim == -1:
        return standard_sphere(-1)
    if L1.dim == -1:
        return relabel(L2, [f"R:{y}" for y in L2.labels])
    if L2.dim == -1:
        return relabel(L1, [f"L:{x}" for x in L1.labels])
    n = L1.n + L2.n
    if n > 64:
        raise InfeasibleSize("join exceeds the 64-vertex capacity")
    if len(L1.masks) * len(L2.masks) > _MAX_FACES:
        raise InfeasibleSize("join has too many faces")
    labels = _product_labels(L1, L2)
    shift = L1.n
    top1, top2 = L1.top_mask, L2.top_mask
    masks = []
    ranks = []
    for m1, r1 in zip(L1.masks, L1.ranks):
        if m1 == top1:
            continue
        for m2, r2 in zip(L2.masks, L2.ranks):
            if m2 == top2:
                continue
            masks.append(m1 | (m2 << shift))
            ranks.append(r1 + r2)
    masks.append(top1 | (top2 << shift))
    ranks.append(L1.top_rank + L2.top_rank - 1)
    return FaceLattice(labels, masks, ranks)


def cartesian(L1: FaceLattice, L2: FaceLattice) -> FaceLattice:
    """Pairs of proper faces plus bottom and top; vertices are vertex pairs.

    Requires both factors to have dimension >= 1 (otherwise the result
    violates the diamond property at the bottom).
    """
    if L1.dim < 1 or L2.dim < 1:
        raise PreconditionFailed("cartesian factors must have dimension >= 1")
    n = L1.n * L2.n
    if n > 64:
        raise InfeasibleSize("cartesian product exceeds the 64-vertex capacity")
    if len(L1.masks) * len(L2.masks) > _MAX_FACES:
        raise InfeasibleSize("cartesian product has too many faces")
    n2 = L2.n
    labels = tuple(
        f"{x}×{y}" for x in L1.labels for y in L2.labels
    )
    top1, top2 = L1.top_mask, L2.top_mask
    masks = [0]
    ranks = [0]
    for m1, r1 in zip(L1.masks, L1.ranks):
        if m1 == 0 or m1 == top1:
            continue
        bits1 = list(_bits(m1))
        for m2, r2 in zip(L2.masks, L2.ranks):
            if m2 == 0 or m2 == top2:
                continue
            mm = 0
            for i1 in bits1:
                for i2 in _bits(m2):
                    mm |= 1 << (i1 * n2 + i2)
            masks.append(mm)
            ranks.append(r1 + r2 - 1)
    masks.append((1 << n) - 1)
    ranks.append(L1.dim + L2.dim + 2)
    return FaceLattice(labels, masks, ranks)


def barycentric(L: FaceLattice) -> FaceLattice:
    """Chains of proper faces as a simplicial lattice.

    The proper faces of ``L`` become the vertices (labelled by their vertex
    sets joined with ``+``); the faces are the chains, plus a common top.
    Requires at most 64 proper faces so the result fits the shadow
    representation.
    """
    top = L.top_mask
    proper = [m for m in L.masks if m != 0 and m != top]
    k = len(proper)
    if k > 64:
        raise InfeasibleSize("barycentric subdivision needs <= 64 proper faces")
    if k == 0:
        return standard_sphere(-1)
    proper.sort(key=lambda m: (L.rank_of(m), _popcount(m), m))
    labels = tuple("+".join(sorted(L.labels_of(m))) for m in proper)
    above: list[list[int]] = []
    for i, m in enumerate(proper):
        above.append(
            [
                j
                for j in range(i + 1, k)
                if L.rank_of(proper[j]) > L.rank_of(m) and m & ~proper[j] == 0
            ]
        )
    chains: list[tuple[int, int]] = [(0, 0)]  # (vertex mask, length)

    def grow(mask: int, last: int, length: int) -> None:
        for j in above[last]:
            chains.append((mask | (1 << j), length + 1))
            grow(mask | (1 << j), j, length + 1)

    for i in range(k):
        chains.append((1 << i, 1))
        grow(1 << i, i, 1)
    masks = [c[0] for c in chains]
    ranks = [c[1] for c in chains]
    masks.append((1 << k) - 1)
    ranks.append(L.dim + 2)
    return FaceLattice(labels, masks, ranks)
