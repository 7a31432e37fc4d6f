"""Ranked face lattices over small labelled vertex sets.

A cellular pseudomanifold is modelled as a finite lattice of faces in which
every face is identified with its *shadow*: the set of vertices lying below
it.  Shadows are stored as integer bitmasks over at most 64 vertices (the
practical range is much smaller).  The empty face is the bottom element and
the full vertex set the top.  ``rank(f)`` is the length of a longest chain
from the bottom to ``f``; ``dim(f) = rank(f) - 1``; the dimension of the
whole lattice is ``rank(top) - 2`` and its excess is ``n - dim - 2``.

Validity means: the lattice is ranked, every rank-gap-2 interval contains
exactly two intermediate faces (the diamond property), and the facet graph
of every interval of rank gap >= 3 is connected.  :func:`validate` checks
all of this and reports violations with witnesses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "LatticeError",
    "NotALattice",
    "NotRanked",
    "NotProper",
    "NotComparable",
    "InvalidParameter",
    "InfeasibleSize",
    "PreconditionFailed",
    "Face",
    "Graph",
    "ValidationReport",
    "FaceLattice",
    "build_from_faces",
    "from_facets",
    "validate",
    "meet",
    "join_faces",
    "interval",
    "boundary",
    "link",
    "facet_graph",
    "vertex_graph",
    "is_simplicial",
    "is_neighbourly",
    "euler_char_of_bsd",
    "relabel",
    "is_isomorphic",
    "iter_isomorphisms",
]

MAX_VERTICES = 64


class LatticeError(Exception):
    """Base class for structural errors raised by this package."""


class NotALattice(LatticeError):
    """The face family has no well-defined meets/joins or misses atoms."""


class NotRanked(LatticeError):
    """The face family is a lattice but cannot be graded consistently."""


class NotProper(LatticeError):
    """An operation required a proper lattice (one with no split-off sphere
    factor) and the argument is not one."""


class NotComparable(LatticeError):
    """An interval was requested between two faces with a <= b failing."""


class InvalidParameter(ValueError):
    """A caller-supplied argument is outside the documented domain."""


class InfeasibleSize(InvalidParameter):
    """The request is well-formed but too large for the supported range."""


class PreconditionFailed(LatticeError):
    """A documented precondition of the operation does not hold."""


@dataclass(frozen=True)
class Face:
    """A face given by its vertex shadow (vertex ids) and its rank."""

    shadow: frozenset[int]
    rank: int

    @property
    def dim(self) -> int:
        return self.rank - 1


@dataclass(frozen=True)
class Graph:
    """Tiny immutable undirected graph (nodes are arbitrary hashables)."""

    nodes: tuple
    edges: frozenset[frozenset]

    def neighbors(self, x) -> set:
        return {next(iter(e - {x})) for e in self.edges if x in e and len(e) == 2}

    def degree(self, x) -> int:
        return sum(1 for e in self.edges if x in e and len(e) == 2)

    def is_connected(self) -> bool:
        if len(self.nodes) <= 1:
            return True
        seen = {self.nodes[0]}
        frontier = [self.nodes[0]]
        while frontier:
            x = frontier.pop()
            for y in self.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return len(seen) == len(self.nodes)

    def is_complete(self) -> bool:
        k = len(self.nodes)
        return len(self.edges) == k * (k - 1) // 2


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate`.

    ``violations`` is a tuple of ``(tag, witnesses)`` pairs where ``tag`` is
    one of ``"atoms"``, ``"rank"``, ``"diamond"``, ``"connectivity"`` and
    ``witnesses`` is a tuple of faces, each given as a tuple of vertex
    labels.  Violations are listed in lexicographic shadow order.
    """

    verdict: bool
    violations: tuple = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.verdict


class FaceLattice:
    """Immutable ranked face lattice.

    The constructor trusts its arguments (it only performs cheap structural
    checks); use :func:`build_from_faces` / :func:`from_facets` to build from
    untrusted input and :func:`validate` to check the pseudomanifold axioms.
    """

    __slots__ = ("labels", "masks", "ranks", "_rank_of", "_index", "_levels", "_vprofiles")

    def __init__(self, labels, masks, ranks):
        labels = tuple(labels)
        n = len(labels)
        if n > MAX_VERTICES:
            raise InfeasibleSize(f"{n} vertices exceed the {MAX_VERTICES}-bit shadow capacity")
        if len(set(labels)) != n:
            raise InvalidParameter("vertex labels must be distinct")
        if len(masks) != len(ranks):
            raise InvalidParameter("masks and ranks must have equal length")
        full = (1 << n) - 1
        order = sorted(range(len(masks)), key=lambda i: (_popcount(masks[i]), masks[i]))
        ms = tuple(int(masks[i]) for i in order)
        rs = tuple(int(ranks[i]) for i in order)
        if len(set(ms)) != len(ms):
            raise InvalidParameter("duplicate face shadows")
        if not ms or ms[0] != 0:
            raise InvalidParameter("the empty face (bottom) must be present")
        if ms[-1] != full:
            raise InvalidParameter("the full vertex set (top) must be present")
        if any(m & ~full for m in ms):
            raise InvalidParameter("face shadow names a vertex outside the label range")
        self.labels = labels
        self.masks = ms
        self.ranks = rs
        self._rank_of = dict(zip(ms, rs))
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._levels = None
        self._vprofiles = None

    # -- basic structure ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def top_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def top_rank(self) -> int:
        return self._rank_of[self.top_mask]

    @property
    def dim(self) -> int:
        return self.top_rank - 2

    @property
    def excess(self) -> int:
        return self.n - self.dim - 2

    @property
    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * max(0, self.top_rank - 1)
        for m, r in zip(self.masks, self.ranks):
            if 1 <= r <= self.top_rank - 1 and m != self.top_mask:
                counts[r - 1] += 1
        return tuple(counts)

    @property
    def levels(self) -> tuple[tuple[int, ...], ...]:
        """Face masks grouped by stored rank, bottom level first."""
        if self._levels is None:
            by_rank: dict[int, list[int]] = {}
            for m, r in zip(self.masks, self.ranks):
                by_rank.setdefault(r, []).append(m)
            self._levels = tuple(
                tuple(by_rank.get(r, ())) for r in range(0, max(by_rank) + 1)
            )
        return self._levels

    def rank_of(self, mask: int) -> int:
        return self._rank_of[mask]

    def has_mask(self, mask: int) -> bool:
        return mask in self._rank_of

    @property
    def facet_masks(self) -> tuple[int, ...]:
        r = self.top_rank - 1
        return tuple(m for m in self.masks if self._rank_of[m] == r and m != 0 and m != self.top_mask)

    def faces(self) -> list[Face]:
        return [Face(frozenset(_bits(m)), r) for m, r in zip(self.masks, self.ranks)]

    def face_of(self, mask: int) -> Face:
        try:
            return Face(frozenset(_bits(mask)), self._rank_of[mask])
        except KeyError:
            raise InvalidParameter(f"no face with shadow {tuple(_bits(mask))}") from None

    # -- label helpers -----------------------------------------------------

    def mask_from_labels(self, labels) -> int:
        m = 0
        for lab in labels:
            try:
                m |= 1 << self._index[lab]
            except KeyError:
                raise InvalidParameter(f"unknown vertex label {lab!r}") from None
        return m

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[v] for v in _bits(mask))

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, FaceLattice):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.masks == other.masks
            and self.ranks == other.ranks
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.masks, self.ranks))

    def __reduce__(self):
        return (FaceLattice, (self.labels, self.masks, self.ranks))

    def __repr__(self) -> str:
        return f"FaceLattice(n={self.n}, dim={self.dim}, faces={len(self.masks)})"


def _popcount(m: int) -> int:
    return m.bit_count()


def _bits(m: int):
    while m:
        lsb = m & -m
        yield lsb.bit_length() - 1
        m ^= lsb


# ---------------------------------------------------------------------------
# construction from untrusted face families


def build_from_faces(labels, shadows) -> FaceLattice:
    """Build a :class:`FaceLattice` from vertex labels and a face family.

    ``shadows`` is an iterable of vertex-id collections (each id indexes into
    ``labels``).  The empty face and the full vertex set are added if absent.
    Raises :class:`NotALattice` if some pair of faces has no unique greatest
    lower / least upper bound among the faces, or if a face's shadow names a
    vertex whose singleton is not itself a face; raises :class:`NotRanked` if
    the family cannot be graded by longest chains (some containment skips a
    level with no face in between).
    """
    labels = tuple(labels)
    n = len(labels)
    if n > MAX_VERTICES:
        raise InfeasibleSize(f"{n} vertices exceed the {MAX_VERTICES}-bit shadow capacity")
    full = (1 << n) - 1
    mask_set = set()
    for sh in shadows:
        m = 0
        for v in sh:
            v = int(v)
            if not (0 <= v < n):
                raise InvalidParameter(f"vertex id {v} out of range for {n} labels")
            m |= 1 << v
        if m in mask_set:
            raise InvalidParameter(f"duplicate face {sorted(_bits(m))}")
        mask_set.add(m)
    mask_set.add(0)
    mask_set.add(full)

    masks = sorted(mask_set, key=lambda m: (_popcount(m), m))

    # shadow/atom consistency: every vertex named in a shadow must itself be
    # a face, otherwise shadows do not coincide with atom sets.
    for m in masks:
        for v in _bits(m):
            if (1 << v) not in mask_set:
                raise NotALattice(
                    f"face {sorted(_bits(m))} names vertex {v} but {{{v}}} is not a face"
                )

    # unique meets and joins: the union of all faces below a & b must itself
    # be a face (the greatest lower bound), and dually the intersection of
    # all faces above a | b must be one.
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            inter = a & b
            if inter not in mask_set:
                glb = 0
                for c in masks:
                    if c & ~inter == 0:
                        glb |= c
                if glb not in mask_set:
                    raise NotALattice(
                        f"faces {sorted(_bits(a))} and {sorted(_bits(b))} have no meet"
                    )
            union = a | b
            if union not in mask_set:
                lub = full
                for c in masks:
                    if union & ~c == 0:
                        lub &= c
                if lub not in mask_set:
                    raise NotALattice(
                        f"faces {sorted(_bits(a))} and {sorted(_bits(b))} have no join"
                    )

    ranks = _longest_chain_ranks(masks)
    rank_of = dict(zip(masks, ranks))

    # gradedness: every containment with rank gap >= 2 must have a face
    # strictly in between (otherwise maximal chains have unequal lengths).
    for a in masks:
        ra = rank_of[a]
        for b in masks:
            if a != b and a & ~b == 0 and rank_of[b] - ra >= 2:
                if not any(
                    c != a and c != b and a & ~c == 0 and c & ~b == 0 for c in masks
                ):
                    raise NotRanked(
                        f"no face strictly between {sorted(_bits(a))} and {sorted(_bits(b))}"
                    )

    return FaceLattice(labels, masks, ranks)


def from_facets(labels, facets) -> FaceLattice:
    """Build a simplicial lattice as the subset closure of a facet family."""
    labels = tuple(labels)
    n = len(labels)
    facet_masks = []
    budget = 0
    for sh in facets:
        m = 0
        for v in sh:
            v = int(v)
            if not (0 <= v < n):
                raise InvalidParameter(f"vertex id {v} out of range for {n} labels")
            m |= 1 << v
        facet_masks.append(m)
        budget += 1 << _popcount(m)
    if budget > 1 << 22:
        raise InfeasibleSize("facet family too large to close under subsets")
    family: set[int] = set()
    for m in facet_masks:
        vs = list(_bits(m))
        for k in range(len(vs) + 1):
            for comb in itertools.combinations(vs, k):
                mm = 0
                for v in comb:
                    mm |= 1 << v
                family.add(mm)
    return build_from_faces(labels, [tuple(_bits(m)) for m in family])


def _longest_chain_ranks(masks) -> list[int]:
    """Rank of each face = length of a longest chain from the bottom.

    ``masks`` must be sorted by (popcount, value); returns ranks aligned
    with it.  Uses numpy level-blocks for large families.
    """
    m = len(masks)
    if m > 300:
        return _longest_chain_ranks_np(masks)
    ranks = [0] * m
    for i, f in enumerate(masks):
        best = 0
        for j in range(i):
            g = masks[j]
            if g & ~f == 0 and ranks[j] + 1 > best:
                best = ranks[j] + 1
        ranks[i] = best
    return ranks


def _longest_chain_ranks_np(masks) -> list[int]:
    arr = np.array(masks, dtype=np.int64)
    pcs = np.array([_popcount(v) for v in masks], dtype=np.int64)
    m = len(masks)
    ranks = np.zeros(m, dtype=np.int64)
    lo = 0
    while lo < m:
        hi = lo
        while hi < m and pcs[hi] == pcs[lo]:
            hi += 1
        if lo > 0:
            B = arr[:lo]
            rB = ranks[:lo] + 1
            chunk = max(1, 4_000_000 // max(1, lo))
            for c0 in range(lo, hi, chunk):
                c1 = min(hi, c0 + chunk)
                sub = (B[None, :] & ~arr[c0:c1, None]) == 0
                ranks[c0:c1] = np.where(sub, rB[None, :], 0).max(axis=1)
        lo = hi
    return [int(r) for r in ranks]


# ---------------------------------------------------------------------------
# validation

_NP_VALIDATE_THRESHOLD = 150


def validate(L: FaceLattice, *, engine: str | None = None) -> ValidationReport:
    """Check the pseudomanifold axioms and report violations with witnesses.

    Ranks are recomputed by longest chains; faces whose stored rank differs
    get a ``"rank"`` violation, and the recomputed ranks drive the remaining
    checks.  ``"diamond"`` witnesses are pairs (x, z) of faces at rank gap 2
    whose open interval does not contain exactly two faces.
    ``"connectivity"`` witnesses are pairs (x, z) at rank gap >= 3 whose
    interval facet graph is empty or disconnected.

    ``engine`` forces the scan implementation: ``"py"`` (bitmask loops,
    default for small lattices) or ``"np"`` (vectorised, default for large
    ones).  Both produce identical reports.
    """
    if engine not in (None, "py", "np"):
        raise InvalidParameter("engine must be None, 'py' or 'np'")
    masks = L.masks
    viols: list[tuple[str, tuple[int, ...]]] = []

    for v in range(L.n):
        if (1 << v) not in L._rank_of:
            viols.append(("atoms", (1 << v,)))

    ranks = _longest_chain_ranks(masks)
    for m, stored, computed in zip(masks, L.ranks, ranks):
        if stored != computed:
            viols.append(("rank", (m,)))

    by_rank: dict[int, list[int]] = {}
    for m, r in zip(masks, ranks):
        by_rank.setdefault(r, []).append(m)
    levels = [by_rank.get(r, []) for r in range(0, max(by_rank) + 1)]

    if engine is None:
        engine = "py" if len(masks) <= _NP_VALIDATE_THRESHOLD else "np"
    if engine == "py":
        _check_diamond_py(levels, viols)
        _check_connectivity_py(levels, viols)
    else:
        _check_diamond_np(levels, viols)
        _check_connectivity_np(levels, viols)

    witnesses = []
    for tag, ms in viols:
        witnesses.append((tuple(tuple(_bits(m)) for m in ms), tag))
    witnesses.sort()
    out = tuple(
        (tag, tuple(L.labels_of(_mask_from_bits(bits)) for bits in shadow_tuple))
        for shadow_tuple, tag in witnesses
    )
    return ValidationReport(verdict=not out, violations=out)


def _mask_from_bits(bits) -> int:
    m = 0
    for v in bits:
        m |= 1 << v
    return m


def _check_diamond_py(levels, viols) -> None:
    for r in range(2, len(levels)):
        A, B, C = levels[r - 2], levels[r - 1], levels[r]
        for z in C:
            ys = [y for y in B if y & ~z == 0]
            for x in A:
                if x & ~z == 0 and x != z:
                    middles = sum(1 for y in ys if x & ~y == 0)
                    if middles != 2:
                        viols.append(("diamond", (x, z)))


def _check_diamond_np(levels, viols) -> None:
    for r in range(2, len(levels)):
        A = np.array(levels[r - 2], dtype=np.int64)
        B = np.array(levels[r - 1], dtype=np.int64)
        C = np.array(levels[r], dtype=np.int64)
        IAB = (A[:, None] & ~B[None, :]) == 0
        IBC = (B[:, None] & ~C[None, :]) == 0
        IAC = (A[:, None] & ~C[None, :]) == 0
        paths = IAB.astype(np.float32) @ IBC.astype(np.float32)
        bad = IAC & (np.rint(paths).astype(np.int64) != 2)
        for i, j in np.argwhere(bad):
            viols.append(("diamond", (int(A[i]), int(C[j]))))


def _bfs_ok(S: int, adj: list[int]) -> bool:
    """Is the subgraph induced on bit-set ``S`` connected (S nonempty)?"""
    reach = S & -S
    while True:
        new = reach
        mm = reach
        while mm:
            lsb = mm & -mm
            new |= adj[lsb.bit_length() - 1]
            mm ^= lsb
        new &= S
        if new == reach:
            return reach == S
        reach = new


def _sibling_adjacency(A, B) -> list[int]:
    """Bitmask adjacency rows: B[i] ~ B[j] iff some face of A lies below both."""
    adj = [0] * len(B)
    for x in A:
        ids = [j for j, y in enumerate(B) if x & ~y == 0]
        m = 0
        for j in ids:
            m |= 1 << j
        for j in ids:
            adj[j] |= m
    return adj


def _check_connectivity_py(levels, viols) -> None:
    for r in range(3, len(levels)):
        B, C = levels[r - 1], levels[r]
        adj = _sibling_adjacency(levels[r - 2], B)
        for z in C:
            dz = 0
            for j, y in enumerate(B):
                if y & ~z == 0:
                    dz |= 1 << j
            for q in range(0, r - 2):
                for x in levels[q]:
                    if x & ~z:
                        continue
                    S = 0
                    mm = dz
                    while mm:
                        lsb = mm & -mm
                        j = lsb.bit_length() - 1
                        if x & ~B[j] == 0:
                            S |= lsb
                        mm ^= lsb
                    if S == 0 or not _bfs_ok(S, adj):
                        viols.append(("connectivity", (x, z)))


def _pack_rows(bool_rows) -> list[int]:
    packed = np.packbits(bool_rows, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _check_connectivity_np(levels, viols) -> None:
    # Same verdict as the bitmask scan, reorganised around each top face z.
    # An interval (x, z) is connected exactly when the coatoms of z above x
    # span a connected piece of the sibling graph, and the coatom set of any
    # single face is small.  When those coatoms are pairwise adjacent, every
    # nonempty selection is automatically connected, so only empty selections
    # need flagging -- and those fall out of one matrix product counting the
    # coatoms of z above each x.  Faces whose coatom graph is not complete get
    # an explicit search on that small local graph, so the two engines never
    # disagree.
    for r in range(3, len(levels)):
        B = np.array(levels[r - 1], dtype=np.int64)
        C = np.array(levels[r], dtype=np.int64)
        A = np.array(levels[r - 2], dtype=np.int64)
        IBC = (B[:, None] & ~C[None, :]) == 0
        IAB = (A[:, None] & ~B[None, :]) == 0
        counts = IAB.T.astype(np.float32) @ IAB.astype(np.float32)
        shared = counts > 0.5
        np.fill_diagonal(shared, True)
        coat_of = [np.flatnonzero(IBC[:, k]) for k in range(len(C))]
        complete = np.fromiter(
            (bool(shared[np.ix_(d, d)].all()) for d in coat_of),
            dtype=bool,
            count=len(C),
        )
        fIBC = IBC.astype(np.float32)
        local_adj: dict[int, list[int]] = {}
        for q in range(0, r - 2):
            Q = np.array(levels[q], dtype=np.int64)
            IQC = (Q[:, None] & ~C[None, :]) == 0
            IQB = (Q[:, None] & ~B[None, :]) == 0
            reach = IQB.astype(np.float32) @ fIBC
            for xi, k in np.argwhere(IQC & (reach < 0.5)):
                viols.append(("connectivity", (int(Q[xi]), int(C[k]))))
            pending = IQC & (reach > 1.5) & ~complete[None, :]
            for xi, k in np.argwhere(pending):
                d = coat_of[k]
                adj = local_adj.get(int(k))
                if adj is None:
                    adj = _pack_rows(shared[np.ix_(d, d)])
                    local_adj[int(k)] = adj
                sel = np.packbits(IQB[xi, d], bitorder="little")
                S = int.from_bytes(sel.tobytes(), "little")
                if not _bfs_ok(S, adj):
                    viols.append(("connectivity", (int(Q[xi]), int(C[k]))))


# ---------------------------------------------------------------------------
# order operations


def _as_mask(L: FaceLattice, f) -> int:
    if isinstance(f, Face):
        m = 0
        for v in f.shadow:
            m |= 1 << v
        return m
    if isinstance(f, int):
        return f
    return L.mask_from_labels(f)


def meet(L: FaceLattice, f, g) -> Face:
    """Greatest lower bound of two faces."""
    a, b = _as_mask(L, f), _as_mask(L, g)
    inter = a & b
    if L.has_mask(inter):
        return L.face_of(inter)
    below = [c for c in L.masks if c & ~inter == 0]
    best = max(below, key=_popcount)
    if any(c & ~best for c in below):
        raise NotALattice("no unique greatest lower bound")
    return L.face_of(best)


def join_faces(L: FaceLattice, f, g) -> Face:
    """Least upper bound of two faces."""
    a, b = _as_mask(L, f), _as_mask(L, g)
    union = a | b
    if L.has_mask(union):
        return L.face_of(union)
    above = [c for c in L.masks if union & ~c == 0]
    best = min(above, key=_popcount)
    if any(best & ~c for c in above):
        raise NotALattice("no unique least upper bound")
    return L.face_of(best)


def interval(L: FaceLattice, a, b) -> FaceLattice:
    """The interval [a, b] as a lattice in its own right.

    The atoms of the interval become the new vertices; each is labelled by
    joining the labels it adds over ``a`` with ``+``.  Ranks are shifted so
    the bottom ``a`` has rank 0.
    """
    am, bm = _as_mask(L, a), _as_mask(L, b)
    if not L.has_mask(am) or not L.has_mask(bm):
        raise InvalidParameter("interval endpoints must be faces")
    if am & ~bm:
        raise NotComparable("interval endpoints are not nested")
    ra = L.rank_of(am)
    members = [m for m in L.masks if am & ~m == 0 and m & ~bm == 0]
    atoms = [m for m in members if L.rank_of(m) == ra + 1]
    atoms.sort()
    labels = []
    for g in atoms:
        added = sorted(L.labels_of(g & ~am))
        labels.append("+".join(added) if added else L.labels_of(g)[0])
    # disambiguate equal labels deterministically
    dupes = {lab for lab in labels if labels.count(lab) > 1}
    seen: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in dupes:
            seen[lab] = seen.get(lab, 0) + 1
            labels[i] = f"{lab}#{seen[lab]}"
    new_masks = []
    new_ranks = []
    for m in members:
        mm = 0
        for i, g in enumerate(atoms):
            if g & ~m == 0:
                mm |= 1 << i
        new_masks.append(mm)
        new_ranks.append(L.rank_of(m) - ra)
    return FaceLattice(labels, new_masks, new_ranks)


def boundary(L: FaceLattice, f) -> FaceLattice:
    """The sublattice [bottom, f]; vertex labels are kept."""
    return interval(L, 0, _as_mask(L, f))


def link(L: FaceLattice, f) -> FaceLattice:
    """The interval [f, top]."""
    return interval(L, _as_mask(L, f), L.top_mask)


# ---------------------------------------------------------------------------
# derived structure


def facet_graph(L: FaceLattice) -> Graph:
    """Facets as nodes; adjacent iff their meet has rank ``top_rank - 2``.

    Nodes are tuples of vertex labels in label order.
    """
    facets = L.facet_masks
    r2 = L.top_rank - 2
    subs = [m for m in L.masks if L.rank_of(m) == r2]
    rows = []
    for fm in facets:
        s = 0
        for j, m in enumerate(subs):
            if m & ~fm == 0:
                s |= 1 << j
        rows.append(s)
    nodes = tuple(L.labels_of(fm) for fm in facets)
    edges = set()
    for i in range(len(facets)):
        for j in range(i + 1, len(facets)):
            if rows[i] & rows[j]:
                edges.add(frozenset({nodes[i], nodes[j]}))
    return Graph(nodes=nodes, edges=frozenset(edges))


def vertex_graph(L: FaceLattice) -> Graph:
    """Vertices as nodes; adjacent iff their join is a 1-dimensional face."""
    edges = set()
    for m, r in zip(L.masks, L.ranks):
        if r == 2:
            vs = L.labels_of(m)
            for a, b in itertools.combinations(vs, 2):
                edges.add(frozenset({a, b}))
    return Graph(nodes=tuple(L.labels), edges=frozenset(edges))


def is_simplicial(L: FaceLattice) -> bool:
    """True iff every proper face's shadow size equals its rank."""
    top = L.top_mask
    return all(
        _popcount(m) == r
        for m, r in zip(L.masks, L.ranks)
        if m != top
    )


def is_neighbourly(L: FaceLattice) -> bool:
    """True iff every pair of vertices spans a face."""
    return all(
        L.has_mask((1 << u) | (1 << v))
        for u, v in itertools.combinations(range(L.n), 2)
    )


def euler_char_of_bsd(L: FaceLattice) -> int:
    """Euler characteristic of the simplicial complex of proper-face chains.

    Computed by the alternating chain-count recursion
    ``t(f) = 1 - sum(t(g) for proper faces g < f)``; the total
    ``sum(t(f))`` equals V - E + F - ... of the chain complex.
    """
    top = L.top_mask
    proper = [(m, r) for m, r in zip(L.masks, L.ranks) if m != 0 and m != top]
    proper.sort(key=lambda p: (p[1], _popcount(p[0]), p[0]))
    t: dict[int, int] = {}
    for i, (m, _) in enumerate(proper):
        s = 1
        for g, _ in proper[:i]:
            if g != m and g & ~m == 0:
                s -= t[g]
        t[m] = s
    return sum(t.values())


def relabel(L: FaceLattice, mapping) -> FaceLattice:
    """Rename the vertices; ``mapping`` is a dict or a full label sequence."""
    if isinstance(mapping, dict):
        new = [mapping.get(lab, lab) for lab in L.labels]
    else:
        new = list(mapping)
        if len(new) != L.n:
            raise InvalidParameter("label sequence has wrong length")
    return FaceLattice(new, L.masks, L.ranks)


# ---------------------------------------------------------------------------
# isomorphism


def _vertex_profiles(L: FaceLattice) -> list[tuple]:
    if L._vprofiles is None:
        prof = [[] for _ in range(L.n)]
        for m, r in zip(L.masks, L.ranks):
            pc = _popcount(m)
            for v in _bits(m):
                prof[v].append((r, pc))
        L._vprofiles = [tuple(sorted(p)) for p in prof]
    return L._vprofiles


def iter_isomorphisms(L1: FaceLattice, L2: FaceLattice):
    """Yield every vertex bijection carrying faces to faces rank-for-rank."""
    if L1.n != L2.n or len(L1.masks) != len(L2.masks):
        return
    prof = sorted(zip(map(_popcount, L1.masks), L1.ranks))
    if prof != sorted(zip(map(_popcount, L2.masks), L2.ranks)):
        return
    n = L1.n
    sig1 = _vertex_profiles(L1)
    sig2 = _vertex_profiles(L2)
    by_sig2: dict[tuple, list[int]] = {}
    for w, s in enumerate(sig2):
        by_sig2.setdefault(s, []).append(w)
    if sorted(sig1) != sorted(sig2):
        return

    # assignment order: smallest candidate class first, then grow along
    # shared faces so image checks close early.
    face_membership = [0] * n
    for fi, m in enumerate(L1.masks):
        for v in _bits(m):
            face_membership[v] |= 1 << fi
    order: list[int] = []
    remaining = set(range(n))
    start = min(remaining, key=lambda v: (len(by_sig2.get(sig1[v], [])), v))
    order.append(start)
    remaining.remove(start)
    covered = face_membership[start]
    while remaining:
        nxt = max(
            remaining,
            key=lambda v: (_popcount(face_membership[v] & covered), -len(by_sig2.get(sig1[v], [])), -v),
        )
        order.append(nxt)
        remaining.remove(nxt)
        covered |= face_membership[nxt]

    pos_of = {v: k for k, v in enumerate(order)}
    buckets: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for m, r in zip(L1.masks, L1.ranks):
        if m == 0:
            continue
        last = max(pos_of[v] for v in _bits(m))
        buckets[last].append((m, r))

    mapping = [-1] * n
    used = [False] * n
    target_rank = L2._rank_of

    def image(m: int) -> int:
        out = 0
        for v in _bits(m):
            out |= 1 << mapping[v]
        return out

    def extend(k: int):
        if k == n:
            yield {L1.labels[v]: L2.labels[mapping[v]] for v in range(n)}
            return
        v = order[k]
        for w in by_sig2.get(sig1[v], ()):
            if used[w]:
                continue
            mapping[v] = w
            used[w] = True
            ok = True
            for m, r in buckets[k]:
                img = image(m)
                if target_rank.get(img) != r:
                    ok = False
                    break
            if ok:
                yield from extend(k + 1)
            used[w] = False
            mapping[v] = -1

    yield from extend(0)


def is_isomorphic(L1: FaceLattice, L2: FaceLattice):
    """A vertex bijection realizing an isomorphism, or None."""
    return next(iter_isomorphisms(L1, L2), None)
