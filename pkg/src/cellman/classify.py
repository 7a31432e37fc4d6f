"""Catalogs of low-excess lattices and the brute-force oracle.

Excess 1 in dimension d comes in two families:

* ``join2``: S^b1 * S^b2 with 0 <= b1 <= b2, b1 + b2 = d - 1;
* ``join_tensor``: (S^d1 * S^d2) ⊗ S^d3 with 0 <= d1 <= d2, d3 >= -1,
  d1 + d2 + d3 = d - 3.

Together they number ``(d+1)^2 // 4``.  The reducible excess-2 lattices in
dimension d are their joins with one more standard sphere:

* ``join3``: S^b1 * S^b2 * S^b3, 0 <= b1 <= b2 <= b3, sum = d - 2;
* ``join_tensor_join``: ((S^d1 * S^d2) ⊗ S^d3) * S^d4 with 0 <= d1 <= d2,
  d3 >= -1, d4 >= 0, sum = d - 4;

numbering ``((d^2+1)(2d-1)+9) // 24``.  The neighbourly ones are exactly
those with every join exponent >= 1 (the tensor exponent d3 is free: any
two vertices of a tensor factor span a face through the factor's top).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .lattice import (
    FaceLattice,
    InfeasibleSize,
    InvalidParameter,
    LatticeError,
    _bits,
    build_from_faces,
    is_isomorphic,
    validate,
)
from .constructions import join, standard_sphere, tensor

__all__ = [
    "CatalogItem",
    "enumerate_excess1",
    "enumerate_reducible_excess2",
    "count_excess1",
    "count_reducible_excess2",
    "count_neighbourly_reducible_excess2",
    "count_neighbourly_reducible_excess2_printed",
    "build_family",
    "brute_force_enumerate",
]


@dataclass(frozen=True)
class CatalogItem:
    """One classified lattice: family name, parameters, and the lattice."""

    family: str
    params: tuple[int, ...]
    lattice: FaceLattice

    def describe(self) -> str:
        return f"{self.family}{self.params}"


def build_family(family: str, params) -> FaceLattice:
    """Construct a catalog lattice from its family name and parameters."""
    p = tuple(int(x) for x in params)
    if family == "join2":
        b1, b2 = p
        return join(standard_sphere(b1), standard_sphere(b2))
    if family == "join_tensor":
        d1, d2, d3 = p
        return tensor(join(standard_sphere(d1), standard_sphere(d2)), standard_sphere(d3))
    if family == "join3":
        b1, b2, b3 = p
        return join(join(standard_sphere(b1), standard_sphere(b2)), standard_sphere(b3))
    if family == "join_tensor_join":
        d1, d2, d3, d4 = p
        core = tensor(join(standard_sphere(d1), standard_sphere(d2)), standard_sphere(d3))
        return join(core, standard_sphere(d4))
    raise InvalidParameter(f"unknown family {family!r}")


def enumerate_excess1(d: int) -> list[CatalogItem]:
    """All excess-1 lattices of dimension ``d``, one per isomorphism type."""
    if d < 0:
        raise InvalidParameter("dimension must be >= 0")
    items: list[CatalogItem] = []
    for b1 in range(0, (d - 1) // 2 + 1):
        b2 = d - 1 - b1
        if b2 >= b1:
            items.append(CatalogItem("join2", (b1, b2), build_family("join2", (b1, b2))))
    for d3 in range(-1, d - 2):
        rest = d - 3 - d3
        for d1 in range(0, rest // 2 + 1):
            d2 = rest - d1
            if d2 >= d1:
                items.append(
                    CatalogItem("join_tensor", (d1, d2, d3), build_family("join_tensor", (d1, d2, d3)))
                )
    items.sort(key=lambda it: (it.family, it.params))
    return items


def enumerate_reducible_excess2(d: int, neighbourly: bool = False) -> list[CatalogItem]:
    """All reducible excess-2 lattices of dimension ``d``.

    With ``neighbourly=True``, keep only those whose every vertex pair spans
    a face — by the parameter criterion, join exponents all >= 1.
    """
    if d < 0:
        raise InvalidParameter("dimension must be >= 0")
    lo = 1 if neighbourly else 0
    items: list[CatalogItem] = []
    for b1 in range(lo, d):
        for b2 in range(b1, d):
            b3 = d - 2 - b1 - b2
            if b3 >= b2:
                items.append(CatalogItem("join3", (b1, b2, b3), build_family("join3", (b1, b2, b3))))
    for d3 in range(-1, d - 2):
        for d4 in range(lo, d):
            rest = d - 4 - d3 - d4
            for d1 in range(lo, rest // 2 + 1):
                d2 = rest - d1
                if d2 >= d1:
                    params = (d1, d2, d3, d4)
                    items.append(
                        CatalogItem("join_tensor_join", params, build_family("join_tensor_join", params))
                    )
    items.sort(key=lambda it: (it.family, it.params))
    return items


def count_excess1(d: int) -> int:
    return (d + 1) ** 2 // 4


def count_reducible_excess2(d: int) -> int:
    return ((d * d + 1) * (2 * d - 1) + 9) // 24


def count_neighbourly_reducible_excess2(d: int) -> int:
    """Closed form matching the enumeration (substitute d-3 into the
    reducible count)."""
    return (((d - 3) ** 2 + 1) * (2 * d - 7) + 9) // 24


def count_neighbourly_reducible_excess2_printed(d: int) -> int:
    """A published variant of the closed form; disagrees with the
    enumeration from d = 10 on (kept for comparison)."""
    return ((d * d - 6 * d - 8) * (2 * d - 7) + 9) // 24


# ---------------------------------------------------------------------------
# brute-force oracle


def brute_force_enumerate(d: int, n: int) -> list[FaceLattice]:
    """Exhaustively enumerate the valid d-dimensional lattices on n vertices.

    Independent of the catalogs: candidates are generated from raw facet
    families, every survivor is checked by :func:`validate`, and the result
    is deduplicated by isomorphism (in generation order).

    Supported ranges: d = 1 with 3 <= n <= 10, d = 2 with 4 <= n <= 5;
    anything larger is refused.  For d = 1 the candidate space is pruned to
    connected 2-regular graphs; both restrictions are forced by the axioms
    (an interval from the bottom to a 1-face has exactly two vertices by the
    diamond property, likewise each vertex lies in exactly two edges via the
    interval to the top, and a disconnected union of cycles fails the
    connectivity axiom), so no valid lattice is missed.
    """
    if d == 1:
        if not (3 <= n <= 10):
            raise InfeasibleSize("d=1 supported for 3 <= n <= 10")
        return _brute_dim1(n)
    if d == 2:
        if not (4 <= n <= 5):
            raise InfeasibleSize("d=2 supported for 4 <= n <= 5")
        return _brute_dim2(n)
    raise InfeasibleSize(f"brute force not feasible for d={d}, n={n}")


def _brute_dim1(n: int) -> list[FaceLattice]:
    labels = [f"v{i}" for i in range(n)]
    found: list[FaceLattice] = []
    deg = [0] * n
    adj = [0] * n
    edges: list[tuple[int, int]] = []

    def component_of(a: int) -> int:
        seen = 1 << a
        frontier = [a]
        while frontier:
            x = frontier.pop()
            mm = adj[x] & ~seen
            seen |= adj[x]
            while mm:
                lsb = mm & -mm
                frontier.append(lsb.bit_length() - 1)
                mm ^= lsb
        return seen

    def emit() -> None:
        faces = [[i] for i in range(n)] + [[a, b] for a, b in edges]
        try:
            L = build_from_faces(labels, faces)
        except LatticeError:
            return
        if L.dim != 1 or not validate(L).verdict:
            return
        for prev in found:
            if is_isomorphic(prev, L) is not None:
                return
        found.append(L)

    def extend() -> None:
        u = -1
        for i in range(n):
            if deg[i] < 2:
                u = i
                break
        if u == -1:
            emit()
            return
        need = 2 - deg[u]
        cands = [
            v
            for v in range(u + 1, n)
            if deg[v] < 2 and not (adj[u] >> v) & 1
        ]
        for comb in itertools.combinations(cands, need):
            for v in comb:
                deg[u] += 1
                deg[v] += 1
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                edges.append((u, v))
            # a completed cycle component with unfinished vertices elsewhere
            # can only end up disconnected, which the axioms reject
            comp = component_of(u)
            comp_done = all(deg[i] == 2 for i in _bits(comp))
            anything_left = any(deg[i] < 2 for i in range(n))
            if not (comp_done and anything_left):
                extend()
            for v in comb:
                deg[u] -= 1
                deg[v] -= 1
                adj[u] &= ~(1 << v)
                adj[v] &= ~(1 << u)
                edges.pop()

    extend()
    return found


def _brute_dim2(n: int) -> list[FaceLattice]:
    labels = [f"v{i}" for i in range(n)]
    pool = [
        frozenset(c)
        for size in range(3, n)
        for c in itertools.combinations(range(n), size)
    ]
    full = frozenset(range(n))
    found: list[FaceLattice] = []
    for bits in range(1 << len(pool)):
        family = {pool[i] for i in range(len(pool)) if (bits >> i) & 1}
        closure = set(family)
        closure.add(frozenset())
        closure.add(full)
        for i in range(n):
            closure.add(frozenset({i}))
        grew = True
        while grew:
            grew = False
            for a, b in itertools.combinations(list(closure), 2):
                c = a & b
                if c not in closure:
                    closure.add(c)
                    grew = True
        try:
            L = build_from_faces(labels, [sorted(f) for f in closure])
        except LatticeError:
            continue
        if L.dim != 2 or not validate(L).verdict:
            continue
        if any(is_isomorphic(prev, L) is not None for prev in found):
            continue
        found.append(L)
    return found
