"""Reading and writing lattice files, diagram files, and catalogs.

A lattice file is a JSON object ``{"vertices": [...], "faces": [[...], ...]}``
listing the *proper* faces only, each as a strictly ascending array of vertex
indices; the empty face and the full vertex set are implicit.  Simplicial
lattices may instead be given by their maximal faces under the alternative
key ``"facets"`` (the face family is then the subset closure).  Vertex order
in the file is authoritative for what the indices mean.

A diagram file is ``{"order": 2m, "points": {"label": ray, ...}}`` with the
string ``"C"`` marking a centre point.

Saving is deterministic: equal lattices (same labels, same faces) produce
byte-identical files, so saved output is safe to use as golden data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .classify import CatalogItem
from .gale import GaleDiagram
from .lattice import (
    FaceLattice,
    InvalidParameter,
    LatticeError,
    _bits,
    build_from_faces,
    from_facets,
    is_neighbourly,
    is_simplicial,
    validate,
)
from .symmetry import is_primitive, is_proper, is_reducible

__all__ = [
    "ParseError",
    "ValidationError",
    "load_lattice",
    "loads_lattice",
    "save_lattice",
    "dumps_lattice",
    "load_diagram",
    "loads_diagram",
    "save_diagram",
    "dumps_diagram",
    "ManifestEntry",
    "Manifest",
    "write_catalog",
]


class ParseError(ValueError):
    """The file text does not conform to the expected format."""


class ValidationError(LatticeError):
    """The file parsed, but its face family is not a valid lattice."""


# ---------------------------------------------------------------------------
# lattice files


def _check_vertices(obj, source: str) -> tuple[str, ...]:
    verts = obj.get("vertices")
    if not isinstance(verts, list):
        raise ParseError(f"{source}: 'vertices' must be an array of strings")
    seen = set()
    for i, v in enumerate(verts):
        if not isinstance(v, str) or not v:
            raise ParseError(f"{source}: vertices[{i}]: labels must be non-empty strings, got {v!r}")
        if v in seen:
            raise ParseError(f"{source}: vertices[{i}]: duplicate label {v!r}")
        seen.add(v)
    return tuple(verts)


def _check_face_rows(rows, n: int, key: str, source: str) -> list[tuple[int, ...]]:
    if not isinstance(rows, list):
        raise ParseError(f"{source}: '{key}' must be an array of index arrays")
    out: list[tuple[int, ...]] = []
    first_at: dict[tuple[int, ...], int] = {}
    for i, row in enumerate(rows):
        where = f"{source}: {key}[{i}]"
        if not isinstance(row, list):
            raise ParseError(f"{where}: must be an array of vertex indices")
        ixs = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(f"{where}: indices must be integers, got {x!r}")
            if not (0 <= x < n):
                raise ParseError(f"{where}: index {x} out of range for {n} vertices")
            ixs.append(x)
        if any(b <= a for a, b in zip(ixs, ixs[1:])):
            raise ParseError(f"{where}: indices must be strictly ascending, got {ixs}")
        tup = tuple(ixs)
        if not tup:
            raise ParseError(f"{where}: empty array (the bottom face is implicit)")
        if len(tup) == n:
            raise ParseError(f"{where}: lists every vertex (the top face is implicit)")
        if tup in first_at:
            raise ParseError(f"{where}: duplicate of {key}[{first_at[tup]}]")
        first_at[tup] = i
        out.append(tup)
    return out


def loads_lattice(text: str, *, source: str = "<string>", raw: bool = False) -> FaceLattice:
    """Parse lattice-file text. See :func:`load_lattice`."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(obj, dict):
        raise ParseError(f"{source}: top level must be a JSON object")
    verts = _check_vertices(obj, source)
    has_faces = "faces" in obj
    has_facets = "facets" in obj
    if has_faces and has_facets:
        raise ParseError(f"{source}: 'faces' and 'facets' are mutually exclusive")
    if not has_faces and not has_facets:
        raise ParseError(f"{source}: one of 'faces' or 'facets' is required")
    key = "faces" if has_faces else "facets"
    rows = _check_face_rows(obj[key], len(verts), key, source)
    try:
        if has_faces:
            L = build_from_faces(verts, rows)
        else:
            L = from_facets(verts, rows)
    except InvalidParameter:
        raise
    except LatticeError as e:
        raise ValidationError(f"{source}: {e}") from e
    if not raw:
        report = validate(L)
        if not report:
            detail = "; ".join(f"{kind}: {data}" for kind, data in report.violations)
            raise ValidationError(f"{source}: invalid lattice: {detail}")
    return L


def load_lattice(path, *, raw: bool = False) -> FaceLattice:
    """Load a lattice file.

    Raises :class:`ParseError` for malformed files (with file and element
    context) and :class:`ValidationError` when the face family parses but is
    not a valid lattice.  ``raw=True`` skips the final validation pass, so
    structurally graded posets that fail the diamond or connectivity checks
    can still be loaded for inspection; families that do not even form a
    graded lattice cannot be represented and always raise.
    """
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{p}: {e.strerror or e}") from e
    return loads_lattice(text, source=str(p), raw=raw)


def dumps_lattice(L: FaceLattice) -> str:
    """Serialize a lattice deterministically (proper faces, size-then-lex order)."""
    rows = []
    for mask in L.masks:
        if mask == 0 or mask == L.top_mask:
            continue
        rows.append(tuple(_bits(mask)))
    rows.sort(key=lambda t: (len(t), t))
    verts = json.dumps(list(L.labels))
    if not rows:
        return '{\n  "vertices": %s,\n  "faces": []\n}\n' % verts
    body = ",\n    ".join(json.dumps(list(r)) for r in rows)
    return '{\n  "vertices": %s,\n  "faces": [\n    %s\n  ]\n}\n' % (verts, body)


def save_lattice(L: FaceLattice, path) -> None:
    Path(path).write_text(dumps_lattice(L), encoding="utf-8")


# ---------------------------------------------------------------------------
# diagram files


def loads_diagram(text: str, *, source: str = "<string>") -> GaleDiagram:
    """Parse diagram-file text. See :func:`load_diagram`."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(obj, dict):
        raise ParseError(f"{source}: top level must be a JSON object")
    order = obj.get("order")
    if isinstance(order, bool) or not isinstance(order, int):
        raise ParseError(f"{source}: 'order' must be an integer, got {order!r}")
    pts = obj.get("points")
    if not isinstance(pts, dict):
        raise ParseError(f"{source}: 'points' must be an object mapping labels to rays")
    assignment: dict[str, int | None] = {}
    for lab, val in pts.items():
        where = f"{source}: points[{lab!r}]"
        if val == "C":
            assignment[lab] = None
        elif isinstance(val, bool) or not isinstance(val, int):
            raise ParseError(f'{where}: must be a ray index or "C", got {val!r}')
        else:
            assignment[lab] = val
    try:
        return GaleDiagram.from_assignment(order, assignment)
    except InvalidParameter as e:
        raise ParseError(f"{source}: {e}") from e


def load_diagram(path) -> GaleDiagram:
    """Load a diagram file; raises :class:`ParseError` on malformed input."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{p}: {e.strerror or e}") from e
    return loads_diagram(text, source=str(p))


def dumps_diagram(G: GaleDiagram) -> str:
    """Serialize a diagram deterministically (points in label order)."""
    pts = {lab: ("C" if ray is None else ray) for lab, ray in G.points}
    return json.dumps({"order": G.order, "points": pts}) + "\n"


def save_diagram(G: GaleDiagram, path) -> None:
    Path(path).write_text(dumps_diagram(G), encoding="utf-8")


# ---------------------------------------------------------------------------
# catalogs


@dataclass(frozen=True)
class ManifestEntry:
    """One catalog row: where the file is, how it was built, what it is."""

    path: str
    family: str
    params: tuple[int, ...]
    n: int
    dim: int
    excess: int
    f_vector: tuple[int, ...]
    simplicial: bool
    neighbourly: bool
    reducible: bool
    proper: bool
    primitive: bool


@dataclass(frozen=True)
class Manifest:
    entries: tuple[ManifestEntry, ...]


def _slug(params) -> str:
    return "-".join(str(p) if p >= 0 else f"m{-p}" for p in params)


def manifest_entry(item: CatalogItem, path: str) -> ManifestEntry:
    L = item.lattice
    return ManifestEntry(
        path=path,
        family=item.family,
        params=item.params,
        n=L.n,
        dim=L.dim,
        excess=L.excess,
        f_vector=L.f_vector,
        simplicial=is_simplicial(L),
        neighbourly=is_neighbourly(L),
        reducible=is_reducible(L),
        proper=is_proper(L),
        primitive=is_primitive(L),
    )


def write_catalog(items, outdir) -> Manifest:
    """Write one lattice file per item plus ``manifest.json`` into ``outdir``."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for item in items:
        name = f"{item.family}-{_slug(item.params)}.json"
        save_lattice(item.lattice, out / name)
        entries.append(manifest_entry(item, name))
    doc = {
        "schema": 1,
        "entries": [
            {
                "path": e.path,
                "family": e.family,
                "params": list(e.params),
                "n": e.n,
                "dim": e.dim,
                "excess": e.excess,
                "f_vector": list(e.f_vector),
                "simplicial": e.simplicial,
                "neighbourly": e.neighbourly,
                "reducible": e.reducible,
                "proper": e.proper,
                "primitive": e.primitive,
            }
            for e in entries
        ],
    }
    (out / "manifest.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return Manifest(entries=tuple(entries))
