"""Exact circular vertex diagrams for excess-2 lattices.

A diagram places each vertex of a lattice either at the centre of a circle
or on one of ``order`` equally spaced rays (``order`` is even and ray
``i + order/2`` is opposite ray ``i``).  Which vertex sets are co-facets —
complements of facets — depends only on the cyclic order of the occupied
rays and on which rays are opposite, so the whole theory is integer
combinatorics; no coordinates appear anywhere.

Co-facets are the vertex sets whose points are pairwise distinct and
surround the centre:

* a single vertex at the centre;
* two vertices on opposite rays;
* three vertices on pairwise distinct, pairwise non-opposite rays whose
  three cyclic gaps are each less than half a turn.

A triple that contains an opposite pair is *not* a co-facet (the centre
then lies on the triangle's boundary, not strictly inside), and a set that
hits one ray twice is never a co-facet.

:func:`sphere_from_diagram` rebuilds the face lattice generated by those
facets, :func:`shift_point` is the arc move that preserves the generated
sphere, and :func:`gale_search` decides whether a given excess-2 lattice is
generated by some diagram — an exact, exhaustive polytopality certificate
at small vertex counts.  :func:`find_join_faces` / :func:`reduce_join_face`
implement the facet surgery that trades a join-shaped face for simplicial
facets without changing whether such a certificate exists.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .lattice import (
    Face,
    FaceLattice,
    InfeasibleSize,
    InvalidParameter,
    LatticeError,
    PreconditionFailed,
    ValidationReport,
    _as_mask,
    _bits,
    _popcount,
    build_from_faces,
    validate,
)
from .symmetry import _swap_is_automorphism

__all__ = [
    "BlockedShift",
    "DegenerateDiagram",
    "GaleDiagram",
    "SearchOptions",
    "MAX_SEARCH_VERTICES",
    "cofacets",
    "find_join_faces",
    "gale_search",
    "gale_validate",
    "is_join_reduction_normal_form",
    "reduce_join_face",
    "shift_point",
    "sphere_from_diagram",
]


class DegenerateDiagram(LatticeError):
    """The facet family read off a diagram does not form a valid lattice."""


class BlockedShift(LatticeError):
    """The arc that must be empty for a point shift contains a point."""


MAX_SEARCH_VERTICES = 7


@dataclass(frozen=True)
class GaleDiagram:
    """An exact circular diagram: vertex labels on rays, or at the centre.

    ``order`` is the (even) number of rays; ray ``i + order/2`` is opposite
    ray ``i``.  ``points`` maps each vertex label to a ray index, or to
    ``None`` for the centre.  Points are stored sorted by label, so two
    diagrams with the same assignment compare equal.
    """

    order: int
    points: tuple[tuple[str, int | None], ...]

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 2 or self.order % 2:
            raise InvalidParameter(f"diagram order must be a positive even integer, got {self.order!r}")
        pts = []
        seen = set()
        for lab, ray in self.points:
            if not isinstance(lab, str) or not lab:
                raise InvalidParameter(f"vertex label must be a non-empty string, got {lab!r}")
            if lab in seen:
                raise InvalidParameter(f"duplicate vertex label {lab!r}")
            seen.add(lab)
            if ray is not None:
                ray = int(ray)
                if not (0 <= ray < self.order):
                    raise InvalidParameter(f"ray {ray} out of range for order {self.order}")
            pts.append((lab, ray))
        pts.sort()
        object.__setattr__(self, "points", tuple(pts))

    @classmethod
    def from_assignment(cls, order: int, assignment: dict) -> "GaleDiagram":
        return cls(order, tuple(assignment.items()))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.points)

    @property
    def assignment(self) -> dict:
        return dict(self.points)

    def antipode(self, ray: int) -> int:
        return (ray + self.order // 2) % self.order

    def ray_of(self, label: str) -> int | None:
        for lab, ray in self.points:
            if lab == label:
                return ray
        raise InvalidParameter(f"unknown vertex label {label!r}")


def _occupancy(G: GaleDiagram) -> dict[int, list[str]]:
    occ: dict[int, list[str]] = {}
    for lab, ray in G.points:
        if ray is not None:
            occ.setdefault(ray, []).append(lab)
    return occ


def gale_validate(G: GaleDiagram) -> ValidationReport:
    """Check the hemisphere condition on every occupied line.

    For each ray carrying a point, the line through that ray and its
    opposite splits the remaining rays into two open sides; each side must
    hold at least two points (centre points lie on every line and count for
    neither side).  Violations are tagged ``"hemisphere"`` and witnessed by
    the labels sitting on the offending line.
    """
    half = G.order // 2
    occ = _occupancy(G)
    viols = []
    for line in sorted({r % half for r in occ}):
        lo, hi = line, line + half
        side1 = sum(len(occ.get(r, ())) for r in range(lo + 1, hi))
        side2 = sum(len(occ.get(r % G.order, ())) for r in range(hi + 1, lo + G.order))
        if side1 < 2 or side2 < 2:
            on_line = sorted(occ.get(lo, []) + occ.get(hi, []))
            viols.append(("hemisphere", (tuple(on_line),)))
    return ValidationReport(not viols, tuple(viols))


def _spans(r1: int, r2: int, r3: int, order: int) -> bool:
    """True when three rays surround the centre strictly.

    Requires pairwise distinct rays whose three cyclic gaps are each less
    than half a turn; a gap of exactly half (an opposite pair) fails.
    """
    a, b, c = sorted((r1, r2, r3))
    if a == b or b == c:
        return False
    half = order // 2
    return (b - a) < half and (c - b) < half and (order - c + a) < half


def _cofacet_masks(G: GaleDiagram) -> list[int]:
    half = G.order // 2
    on_ray = []
    out = []
    for i, (_, ray) in enumerate(G.points):
        if ray is None:
            out.append(1 << i)
        else:
            on_ray.append((i, ray))
    for (i, ri), (j, rj) in combinations(on_ray, 2):
        if (ri - rj) % G.order == half:
            out.append((1 << i) | (1 << j))
    for (i, ri), (j, rj), (k, rk) in combinations(on_ray, 3):
        if _spans(ri, rj, rk, G.order):
            out.append((1 << i) | (1 << j) | (1 << k))
    return sorted(out, key=lambda m: (_popcount(m), m))


def cofacets(G: GaleDiagram) -> list[tuple[str, ...]]:
    """All co-facets of the diagram, as sorted tuples of vertex labels."""
    labs = G.labels
    return [tuple(labs[v] for v in _bits(m)) for m in _cofacet_masks(G)]


def _intersection_closure(facet_masks, full: int) -> set[int]:
    """All intersections of subfamilies of ``facet_masks``, plus 0 and full."""
    facets = list(dict.fromkeys(facet_masks))
    seen = set(facets)
    work = list(facets)
    while work:
        x = work.pop()
        for f in facets:
            y = x & f
            if y not in seen:
                seen.add(y)
                work.append(y)
    seen.add(0)
    seen.add(full)
    return seen


def sphere_from_diagram(G: GaleDiagram) -> FaceLattice:
    """The face lattice generated by a valid diagram.

    Facets are the complements of the co-facets; faces are all
    intersections of facets (plus the empty face and the full vertex set).
    Raises :class:`DegenerateDiagram` when that family fails to validate.
    """
    if not gale_validate(G):
        raise PreconditionFailed("diagram fails the hemisphere condition")
    labels = G.labels
    n = len(labels)
    full = (1 << n) - 1
    cof = _cofacet_masks(G)
    if not cof:
        raise DegenerateDiagram("diagram has no co-facets")
    facets = sorted({full ^ c for c in cof})
    faces = _intersection_closure(facets, full)
    try:
        L = build_from_faces(labels, [tuple(_bits(m)) for m in faces])
    except LatticeError as exc:
        raise DegenerateDiagram(str(exc)) from exc
    report = validate(L)
    if not report:
        raise DegenerateDiagram(f"facet family fails validation: {report.violations[:2]}")
    if L.excess != 2:
        raise DegenerateDiagram(f"diagram generated a lattice of excess {L.excess}, not 2")
    return L


def shift_point(G: GaleDiagram, v: str, target_ray: int) -> GaleDiagram:
    """Move vertex ``v`` to ``target_ray`` when the blocking arc is empty.

    The move is legal when the shorter *closed* arc between the opposite of
    ``v``'s current ray and the opposite of ``target_ray`` carries no
    point; it then preserves the isomorphism type of the generated sphere.
    Raises :class:`BlockedShift` otherwise.  Centre points cannot be
    shifted (the move is a rotation of a circle point).
    """
    cur = G.ray_of(v)
    if cur is None:
        raise InvalidParameter("centre points cannot be shifted")
    target_ray = int(target_ray)
    if not (0 <= target_ray < G.order):
        raise InvalidParameter(f"ray {target_ray} out of range for order {G.order}")
    if target_ray == cur:
        return G
    half = G.order // 2
    d = (target_ray - cur) % G.order
    if d <= half:
        arc = [(cur + half + t) % G.order for t in range(d + 1)]
    else:
        arc = [(target_ray + half + t) % G.order for t in range(G.order - d + 1)]
    occ = _occupancy(G)
    blockers = sorted(lab for r in arc for lab in occ.get(r, ()))
    if blockers:
        raise BlockedShift(
            f"arc between the opposites of rays {cur} and {target_ray} contains {blockers}"
        )
    moved = {lab: (target_ray if lab == v else ray) for lab, ray in G.points}
    return GaleDiagram.from_assignment(G.order, moved)


# ---------------------------------------------------------------------------
# join-shaped faces and their reduction


def _strict_submasks(m: int):
    """All submasks of ``m`` except ``m`` itself (the empty mask included)."""
    s = (m - 1) & m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


def _require_excess2_no_big_facet(L: FaceLattice) -> None:
    if L.excess != 2:
        raise PreconditionFailed(f"operation applies to excess-2 lattices only (excess {L.excess})")
    big = L.dim + 3
    for f in L.facet_masks:
        if _popcount(f) >= big:
            raise PreconditionFailed(
                f"facet {sorted(L.labels_of(f))} has {_popcount(f)} >= dim+3 vertices"
            )


def _boundary_bipartition(L: FaceLattice, tmask: int):
    """A vertex split (A, B) with the faces below ``tmask`` equal to
    ``{X ∪ Y : X ⊊ A, Y ⊊ B}`` and both sides of size >= 2, or None."""
    below = frozenset(m for m in L.masks if m & ~tmask == 0 and m != tmask)
    lowest = tmask & -tmask
    rest = tmask ^ lowest
    sub = rest
    while True:
        A = lowest | sub
        B = tmask ^ A
        if _popcount(A) >= 2 and _popcount(B) >= 2:
            expected = {x | y for x in _strict_submasks(A) for y in _strict_submasks(B)}
            if expected == below:
                return A, B
        if sub == 0:
            return None
        sub = (sub - 1) & rest


def _link_bipartition(outside: int, link_faces: frozenset[int]):
    """A split (R, S) of ``outside`` with the proper link faces equal to
    ``{X ∪ Y : X ⊊ R, Y ⊊ S}`` (both sides non-empty), or None.

    A side of size 1 encodes a point-sphere factor: its single vertex lies
    in no proper link face, only in the link's top.
    """
    lowest = outside & -outside
    rest = outside ^ lowest
    sub = rest
    while True:
        R = lowest | sub
        S = outside ^ R
        if S:
            expected = {x | y for x in _strict_submasks(R) for y in _strict_submasks(S)}
            if expected == link_faces:
                if _popcount(R) >= _popcount(S):
                    return R, S
                return S, R
        if sub == 0:
            return None
        sub = (sub - 1) & rest


def find_join_faces(L: FaceLattice) -> list[Face]:
    """All proper faces whose boundary is a join of two point-or-bigger
    standard spheres.

    Such a face has one more vertex than its rank, and its strictly smaller
    faces are exactly ``{X ∪ Y : X ⊊ A, Y ⊊ B}`` for a split of its vertex
    set with both sides of size >= 2.  Requires an excess-2 lattice with no
    facet on dim+3 vertices.
    """
    _require_excess2_no_big_facet(L)
    out = []
    top = L.top_mask
    for mask, rank in zip(L.masks, L.ranks):
        if mask == 0 or mask == top:
            continue
        if _popcount(mask) != rank + 1 or _popcount(mask) < 4:
            continue
        if _boundary_bipartition(L, mask) is not None:
            out.append(L.face_of(mask))
    return out


def reduce_join_face(L: FaceLattice, tau) -> FaceLattice:
    """Replace the facets above a join-shaped face by simplicial ones.

    With the face's vertex split (A, B) and its link split (R, S) — the
    link must itself be a join of two standard spheres — the facets above
    the face are replaced by ``A ∪ (B∖{y}) ∪ (R∖{z}) ∪ (S∖{w})`` over all
    ``y ∈ B``, ``z ∈ R``, ``w ∈ S``.  The result is a valid lattice on the
    same vertices that is strictly closer to simplicial, and it admits a
    diagram certificate exactly when the input does.
    """
    _require_excess2_no_big_facet(L)
    tmask = _as_mask(L, tau)
    if not L.has_mask(tmask) or tmask == 0 or tmask == L.top_mask:
        raise PreconditionFailed("tau is not a proper face of the lattice")
    if _popcount(tmask) != L.rank_of(tmask) + 1:
        raise PreconditionFailed("tau does not have one more vertex than its rank")
    bip = _boundary_bipartition(L, tmask)
    if bip is None:
        raise PreconditionFailed("the boundary of tau is not a join of two standard spheres")
    A, B = bip
    outside = L.top_mask ^ tmask
    link_faces = frozenset(
        m & ~tmask for m in L.masks if m & tmask == tmask and m != L.top_mask
    )
    lb = _link_bipartition(outside, link_faces)
    if lb is None:
        raise PreconditionFailed("the link of tau is not a join of two standard spheres")
    R, S = lb
    keep = [f for f in L.facet_masks if f & tmask != tmask]
    new = set()
    for y in _bits(B):
        base = A | (B ^ (1 << y))
        for z in _bits(R):
            part_r = R ^ (1 << z)
            for w in _bits(S):
                new.add(base | part_r | (S ^ (1 << w)))
    facets = sorted(set(keep) | new)
    faces = _intersection_closure(facets, L.top_mask)
    M1 = build_from_faces(L.labels, [tuple(_bits(m)) for m in faces])
    report = validate(M1)
    if not report:
        raise LatticeError(
            f"join-face reduction produced an invalid lattice: {report.violations[:2]}"
        )
    return M1


def is_join_reduction_normal_form(G: GaleDiagram, A, B, R, S) -> bool:
    """Whether a diagram displays a reduction instance in normal form.

    Normal form: all of ``R`` on one ray rho, all of ``S`` on one ray sigma
    (distinct and non-opposite), all of ``A`` strictly inside the shorter
    arc from rho to sigma, and all of ``B`` strictly inside the shorter arc
    between their opposite rays.
    """
    asg = G.assignment
    half = G.order // 2

    def rays(group):
        out = set()
        for lab in group:
            r = asg.get(lab)
            if r is None:
                return None
            out.add(r)
        return out

    ray_sets = [rays(g) for g in (R, S, A, B)]
    if any(rs is None for rs in ray_sets):
        return False
    rR, rS, rA, rB = ray_sets
    if len(rR) != 1 or len(rS) != 1:
        return False
    rho = next(iter(rR))
    sigma = next(iter(rS))
    d = (sigma - rho) % G.order
    if d == 0 or d == half:
        return False

    def open_arc(a, b):
        dd = (b - a) % G.order
        if dd < half:
            return {(a + t) % G.order for t in range(1, dd)}
        return {(b + t) % G.order for t in range(1, G.order - dd)}

    if not rA <= open_arc(rho, sigma):
        return False
    return rB <= open_arc((rho + half) % G.order, (sigma + half) % G.order)


# ---------------------------------------------------------------------------
# exhaustive diagram search


@dataclass(frozen=True)
class SearchOptions:
    """Tuning knobs for :func:`gale_search`.

    ``threads``: worker-process cap; ``None`` reads ``CELLMAN_THREADS`` and
    falls back to the hardware count.  The answer never depends on it.
    """

    threads: int | None = None

    def resolve_threads(self) -> int:
        t = self.threads
        if t is None:
            env = os.environ.get("CELLMAN_THREADS", "").strip()
            if env:
                try:
                    t = int(env)
                except ValueError:
                    raise InvalidParameter(f"CELLMAN_THREADS must be an integer, got {env!r}") from None
            else:
                t = os.cpu_count() or 1
        return max(1, int(t))


def _rays_hemisphere_ok(rays, order: int) -> bool:
    half = order // 2
    counts = [0] * order
    total = 0
    for r in rays:
        counts[r] += 1
        total += 1
    for line in {r % half for r in range(order) if counts[r]}:
        side1 = sum(counts[(line + t) % order] for t in range(1, half))
        side2 = total - side1 - counts[line] - counts[line + half]
        if side1 < 2 or side2 < 2:
            return False
    return True


def _branch_dfs(n, order, worder, share_ok, pairs, triples, first_ray, second_ray):
    """Depth-first assignment of ``worder`` to rays matching the targets.

    ``pairs`` / ``triples`` are the co-facet vertex masks the finished
    diagram must realize; every partial assignment is required to agree
    with them exactly on the vertices placed so far, which makes the
    pruning lossless.  Returns the first complete assignment (vertex ->
    ray) whose occupied rays also satisfy the hemisphere condition.
    """
    half = order // 2
    k = len(worder)
    ray_of: dict[int, int] = {}
    assigned: list[int] = []

    def compatible(v: int, r: int) -> bool:
        vb = 1 << v
        for u in assigned:
            ru = ray_of[u]
            pm = vb | (1 << u)
            if ru == r:
                if pm not in share_ok:
                    return False
                antip = False
            else:
                antip = (ru - r) % order == half
            if antip != (pm in pairs):
                return False
        for i, u in enumerate(assigned):
            ru = ray_of[u]
            ub = 1 << u
            for w in assigned[i + 1:]:
                t = vb | ub | (1 << w)
                if _spans(ru, ray_of[w], r, order) != (t in triples):
                    return False
        return True

    def extend(p: int):
        if p == k:
            if _rays_hemisphere_ok(ray_of.values(), order):
                return dict(ray_of)
            return None
        v = worder[p]
        if p == 0:
            cand = (first_ray,)
        elif p == 1 and second_ray is not None:
            cand = (second_ray,)
        else:
            cand = range(order)
        for r in cand:
            if compatible(v, r):
                ray_of[v] = r
                assigned.append(v)
                hit = extend(p + 1)
                if hit is not None:
                    return hit
                assigned.pop()
                del ray_of[v]
        return None

    return extend(0)


def _search_branch(args):
    return _branch_dfs(*args)


def gale_search(L: FaceLattice, options: SearchOptions | None = None) -> GaleDiagram | None:
    """Find a diagram generating ``L`` exactly, or report that none exists.

    The search assigns the vertices of ``L`` to the rays of a ``2n``-ray
    circle (enough rays to realize every cyclic order of at most ``n``
    lines).  Vertices whose complement is a facet are forced to the centre;
    the first placed vertex is pinned to ray 0 and the second is confined
    to half the circle, which quotients away rotations and reflections.
    Two vertices may share a ray only when swapping them is an automorphism
    of ``L``, an opposite pair of vertices must be exactly a pair co-facet,
    and an assigned triple must surround the centre exactly when it is a
    co-facet — each rule is a consequence of exact facet matching, so no
    solution is ever pruned.  Branches split on the second vertex's ray and
    run in parallel when more than one worker is allowed; the first hit in
    branch order is returned, so the result is deterministic.
    """
    opts = options if options is not None else SearchOptions()
    if L.excess != 2:
        raise PreconditionFailed(f"diagram search applies to excess-2 lattices only (excess {L.excess})")
    n = L.n
    if n > MAX_SEARCH_VERTICES:
        raise InfeasibleSize(f"diagram search is limited to {MAX_SEARCH_VERTICES} vertices, got {n}")
    full = L.top_mask
    facets = list(L.facet_masks)
    # Any generated lattice's faces are exactly the intersections of its
    # facets, so a lattice with extra faces has no diagram at all.
    if _intersection_closure(facets, full) != set(L.masks):
        return None
    cof = [full ^ f for f in facets]
    if any(_popcount(c) > 3 for c in cof):
        return None
    center_mask = 0
    pairs: set[int] = set()
    triples: set[int] = set()
    for c in cof:
        pc = _popcount(c)
        if pc == 1:
            center_mask |= c
        elif pc == 2:
            pairs.add(c)
        else:
            triples.add(c)
    # A centre vertex lies in every facet but one, so it can appear in no
    # other co-facet; two facets of the same rank cannot nest, so this
    # never triggers on a valid lattice.
    if any(c & center_mask for c in pairs) or any(c & center_mask for c in triples):
        return None
    W = [v for v in range(n) if not (center_mask >> v) & 1]
    involvement = {
        v: sum(1 for c in pairs if (c >> v) & 1) + sum(1 for c in triples if (c >> v) & 1)
        for v in W
    }
    worder = tuple(sorted(W, key=lambda v: (-involvement[v], v)))
    share_ok = frozenset(
        (1 << u) | (1 << v)
        for u, v in combinations(W, 2)
        if _swap_is_automorphism(L, u, v)
    )
    order = 2 * n
    branches = list(range(order // 2 + 1)) if len(worder) >= 2 else [None]
    arg_list = [
        (n, order, worder, share_ok, frozenset(pairs), frozenset(triples), 0, b)
        for b in branches
    ]
    threads = opts.resolve_threads()
    hits = None
    if threads > 1 and len(arg_list) > 1:
        try:
            with ProcessPoolExecutor(max_workers=min(threads, len(arg_list))) as ex:
                hits = list(ex.map(_search_branch, arg_list))
        except OSError:
            hits = None
    if hits is None:
        hits = []
        for args in arg_list:
            hit = _search_branch(args)
            hits.append(hit)
            if hit is not None:
                break
    for hit in hits:
        if hit is None:
            continue
        assignment: dict[str, int | None] = {L.labels[v]: r for v, r in hit.items()}
        for v in _bits(center_mask):
            assignment[L.labels[v]] = None
        G = GaleDiagram.from_assignment(order, assignment)
        generated = sphere_from_diagram(G)
        by_labels = {frozenset(generated.labels_of(m)) for m in generated.masks}
        wanted = {frozenset(L.labels_of(m)) for m in L.masks}
        if by_labels != wanted:
            raise LatticeError("internal error: matched diagram does not regenerate its lattice")
        return G
    return None
