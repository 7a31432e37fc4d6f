"""Vertex-transposition symmetry: classes, reductions, quotients, inflations.

Two vertices are equivalent when swapping them (and fixing everything else)
maps faces to faces.  The resulting partition controls reducibility: a class
contained in no facet shadow splits off as a join factor which is a standard
sphere.  A lattice all of whose classes are faces ("proper") collapses to its
quotient by the partition and is recovered by inflating the quotient with the
class sizes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .lattice import (
    FaceLattice,
    InfeasibleSize,
    InvalidParameter,
    NotProper,
    _bits,
    _popcount,
    build_from_faces,
)
from .constructions import standard_sphere

__all__ = [
    "is_automorphism",
    "transposition_classes",
    "is_primitive",
    "is_proper",
    "is_reducible",
    "Decomposition",
    "decompose",
    "quotient",
    "inflate",
]


def is_automorphism(L: FaceLattice, perm: dict) -> bool:
    """Does the vertex permutation (a label->label dict) preserve the faces?

    Labels absent from the dict are fixed.  Non-bijective or out-of-range
    maps are simply not automorphisms.
    """
    table = list(range(L.n))
    for a, b in perm.items():
        if a not in L._index or b not in L._index:
            return False
        table[L._index[a]] = L._index[b]
    if sorted(table) != list(range(L.n)):
        return False
    for m, r in zip(L.masks, L.ranks):
        mm = 0
        for v in _bits(m):
            mm |= 1 << table[v]
        if L._rank_of.get(mm) != r:
            return False
    return True


def _swap_is_automorphism(L: FaceLattice, u: int, v: int) -> bool:
    bu, bv = 1 << u, 1 << v
    rank_of = L._rank_of
    for m, r in zip(L.masks, L.ranks):
        has_u, has_v = m & bu, m & bv
        if bool(has_u) == bool(has_v):
            continue
        mm = (m & ~(bu | bv)) | (bv if has_u else bu)
        if rank_of.get(mm) != r:
            return False
    return True


def transposition_classes(L: FaceLattice) -> tuple[tuple[str, ...], ...]:
    """Partition of the vertex set by the swap relation.

    Classes are computed honestly from pairwise swaps plus union-find (the
    relation is transitive for valid lattices, but the code does not assume
    it).  Members are sorted by label, classes by their first member.
    """
    n = L.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(n):
        for v in range(u + 1, n):
            if find(u) != find(v) and _swap_is_automorphism(L, u, v):
                parent[find(u)] = find(v)
    groups: dict[int, list[str]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(L.labels[v])
    classes = [tuple(sorted(g)) for g in groups.values()]
    classes.sort()
    return tuple(classes)


def is_primitive(L: FaceLattice) -> bool:
    """True iff every transposition class is a single vertex."""
    return all(len(c) == 1 for c in transposition_classes(L))


def is_proper(L: FaceLattice) -> bool:
    """True iff every transposition class spans a face."""
    return all(
        L.has_mask(L.mask_from_labels(c)) for c in transposition_classes(L)
    )


def _loose_classes(L: FaceLattice) -> list[tuple[str, ...]]:
    """Classes of size >= 2 contained in no facet shadow."""
    facets = L.facet_masks
    out = []
    for c in transposition_classes(L):
        if len(c) < 2:
            continue
        cm = L.mask_from_labels(c)
        if not any(cm & ~fm == 0 for fm in facets):
            out.append(c)
    return out


def is_reducible(L: FaceLattice) -> bool:
    """True iff some transposition class lies in no facet shadow.

    Such a class splits off as a standard-sphere join factor.
    """
    if L.dim <= -1:
        return False
    return bool(_loose_classes(L))


@dataclass(frozen=True)
class Decomposition:
    """Join factorisation: ``lattice ≅ irreducible * S(c1) * S(c2) * ...``

    ``spheres`` lists the vertex sets of the split-off standard spheres; a
    class of size k contributes a (k-2)-sphere.
    """

    irreducible: FaceLattice
    spheres: tuple[tuple[str, ...], ...]


def decompose(L: FaceLattice) -> Decomposition:
    """Split every loose class off as a standard-sphere join factor.

    The remaining faces (those avoiding the loose classes) form the
    irreducible part, with a fresh top adjoined.  Decomposing an
    irreducible lattice returns it unchanged with no spheres.
    """
    if L.dim <= -1:
        return Decomposition(irreducible=L, spheres=())
    loose = _loose_classes(L)
    if not loose:
        return Decomposition(irreducible=L, spheres=())
    U = 0
    for c in loose:
        U |= L.mask_from_labels(c)
    if U == L.top_mask:
        return Decomposition(
            irreducible=standard_sphere(-1), spheres=tuple(loose)
        )
    keep_vertices = [v for v in range(L.n) if not (U >> v) & 1]
    newbit = {v: i for i, v in enumerate(keep_vertices)}
    labels = [L.labels[v] for v in keep_vertices]
    masks = []
    ranks = []
    max_rank = 0
    for m, r in zip(L.masks, L.ranks):
        if m & U or m == L.top_mask:
            continue
        mm = 0
        for v in _bits(m):
            mm |= 1 << newbit[v]
        masks.append(mm)
        ranks.append(r)
        max_rank = max(max_rank, r)
    masks.append((1 << len(labels)) - 1)
    ranks.append(max_rank + 1)
    return Decomposition(
        irreducible=FaceLattice(labels, masks, ranks), spheres=tuple(loose)
    )


def quotient(L: FaceLattice) -> FaceLattice:
    """Collapse every transposition class to a single vertex.

    Requires every class to span a face (:func:`is_proper`); the quotient
    faces are the faces that are unions of classes, relabelled by joining
    class members with ``+``.  Dimension and excess are preserved for valid
    inputs.
    """
    classes = transposition_classes(L)
    class_masks = [L.mask_from_labels(c) for c in classes]
    for c, cm in zip(classes, class_masks):
        if not L.has_mask(cm):
            raise NotProper(f"class {'+'.join(c)} does not span a face")
    labels = ["+".join(c) for c in classes]
    shadows = []
    for m in L.masks:
        parts = []
        ok = True
        rest = m
        for i, cm in enumerate(class_masks):
            if m & cm == cm:
                parts.append(i)
                rest &= ~cm
            elif m & cm:
                ok = False
                break
        if ok and rest == 0:
            shadows.append(parts)
    return build_from_faces(labels, shadows)


def inflate(L: FaceLattice, multiplicity: dict) -> FaceLattice:
    """Replace each vertex by the given number of copies.

    Requires :func:`is_proper`.  A face of the result is determined by a
    face α of ``L`` — contributing all copies of every vertex of α — plus an
    arbitrary proper subset of the copies of each vertex outside α.  Its
    rank is ``#A - #α + rank(α)``.  Copies of a multiplied vertex ``x`` are
    labelled ``x.1``, ``x.2``, ...; vertices of multiplicity 1 keep their
    label.  Inflating with all multiplicities 1 is the identity up to these
    labels.
    """
    if not is_proper(L):
        raise NotProper("inflation requires every transposition class to span a face")
    mult = []
    for lab in L.labels:
        k = multiplicity.get(lab, 1)
        if not isinstance(k, int) or k < 1:
            raise InvalidParameter(f"multiplicity of {lab!r} must be a positive integer")
        mult.append(k)
    for lab in multiplicity:
        if lab not in L._index:
            raise InvalidParameter(f"unknown vertex label {lab!r}")
    total = sum(mult)
    if total > 64:
        raise InfeasibleSize("inflation exceeds the 64-vertex capacity")
    labels = []
    copy_bits: list[list[int]] = []
    bit = 0
    for lab, k in zip(L.labels, mult):
        bits = []
        for i in range(k):
            labels.append(lab if k == 1 else f"{lab}.{i + 1}")
            bits.append(bit)
            bit += 1
        copy_bits.append(bits)

    full_of = [sum(1 << b for b in bits) for bits in copy_bits]
    proper_subsets: list[list[int]] = []
    for bits in copy_bits:
        subs = []
        for r in range(len(bits)):
            for comb in itertools.combinations(bits, r):
                subs.append(sum(1 << b for b in comb))
        proper_subsets.append(subs)

    count = 0
    for m in L.masks:
        c = 1
        for v in range(L.n):
            if not (m >> v) & 1:
                c *= len(proper_subsets[v])
        count += c
    if count > 2_000_000:
        raise InfeasibleSize("inflation has too many faces")

    masks = []
    ranks = []
    for m, r in zip(L.masks, L.ranks):
        base = 0
        out_vertices = []
        for v in range(L.n):
            if (m >> v) & 1:
                base |= full_of[v]
            else:
                out_vertices.append(v)
        base_pc = _popcount(base)
        alpha = _popcount(m)
        for extra in itertools.product(*(proper_subsets[v] for v in out_vertices)):
            mm = base
            add = 0
            for e in extra:
                mm |= e
                add += _popcount(e)
            masks.append(mm)
            ranks.append(base_pc + add - alpha + r)
    return FaceLattice(labels, masks, ranks)
