"""Curve catalog: labelled curves with known generator points.

File format: a plain-text key-value schema, one ``[curve]`` block per entry.

    # comment lines start with '#'
    [curve]
    label = demo-rank3
    a4 = -16
    a6 = 1
    generators = (0, 1, 1) (4, 1, 1) (-1, 4, 1)
    regulator = 0.9309
    notes = free text until end of line

``generators`` holds whitespace-separated triples ``(A, B, C)`` with
x = A/C^2, y = B/C^3; two-component pairs ``(x, y)`` of integers are also
accepted and normalized.  ``regulator`` and ``notes`` are optional.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .curves import (
    CurveModel,
    RationalPoint,
    integral_points,
    on_curve,
    point_order,
)
from .errors import CatalogError, DependentPoints
from .heights import DEFAULT_TOL, build_profile, canonical_height, gram_matrix, _regulator_from_gram


@dataclass(frozen=True)
class CurveCatalogEntry:
    label: str
    a4: int
    a6: int
    generators: tuple[RationalPoint, ...]
    regulator_hint: float | None = None
    notes: str = ""

    @property
    def curve(self) -> CurveModel:
        return CurveModel(self.a4, self.a6)

    def profile(self, tol: float = DEFAULT_TOL):
        return build_profile(self.curve, self.generators, tol)


BUILTIN_CATALOG: tuple[CurveCatalogEntry, ...] = (
    CurveCatalogEntry(
        label="demo-rank2",
        a4=-4,
        a6=9,
        generators=(RationalPoint(0, 3, 1), RationalPoint(-2, 3, 1)),
        notes="two small independent integral points; the -24 worked example lives here",
    ),
    CurveCatalogEntry(
        label="demo-rank3",
        a4=-16,
        a6=1,
        generators=(RationalPoint(0, 1, 1), RationalPoint(-2, 5, 1), RationalPoint(4, 1, 1)),
        regulator_hint=0.9309,
        notes="rank-3 curve with trivial torsion",
    ),
)


def builtin_entry(label: str) -> CurveCatalogEntry:
    for entry in BUILTIN_CATALOG:
        if entry.label == label:
            return entry
    raise CatalogError(f"no builtin catalog entry labelled {label!r}")


_TUPLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_generators(text: str) -> tuple[RationalPoint, ...]:
    pts = []
    rest = re.sub(_TUPLE_RE, "", text).strip()
    if rest:
        raise CatalogError(f"unparsed generator text: {rest!r}")
    for group in _TUPLE_RE.findall(text):
        parts = [p.strip() for p in group.split(",")]
        if len(parts) == 3:
            A, B, C = (int(p) for p in parts)
            pts.append(RationalPoint(A, B, C))
        elif len(parts) == 2:
            pts.append(RationalPoint.from_xy(Fraction(parts[0]), Fraction(parts[1])))
        else:
            raise CatalogError(f"generator tuple needs 2 or 3 components: ({group})")
    return tuple(pts)


def parse_catalog(text: str) -> list[CurveCatalogEntry]:
    entries: list[CurveCatalogEntry] = []
    block: dict[str, str] | None = None

    def flush() -> None:
        nonlocal block
        if block is None:
            return
        try:
            entry = CurveCatalogEntry(
                label=block["label"],
                a4=int(block["a4"]),
                a6=int(block["a6"]),
                generators=_parse_generators(block.get("generators", "")),
                regulator_hint=float(block["regulator"]) if "regulator" in block else None,
                notes=block.get("notes", ""),
            )
        except KeyError as exc:
            raise CatalogError(f"catalog entry missing required key {exc}") from exc
        entries.append(entry)
        block = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "[curve]":
            flush()
            block = {}
            continue
        if block is None:
            raise CatalogError(f"line {lineno}: content outside a [curve] block")
        if "=" not in line:
            raise CatalogError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        block[key.strip()] = value.strip()
    flush()
    return entries


def load_catalog(path: str, validate: bool = False, tol: float = 1e-3) -> list[CurveCatalogEntry]:
    with open(path, "r", encoding="utf-8") as fh:
        entries = parse_catalog(fh.read())
    if validate:
        for entry in entries:
            validate_entry(entry, tol)
    return entries


def validate_entry(entry: CurveCatalogEntry, tol: float = 1e-3) -> None:
    """Generators must lie on the curve and be certifiably independent."""
    E = entry.curve
    for P in entry.generators:
        if not on_curve(E, P):
            raise CatalogError(f"{entry.label}: generator {P!r} not on curve")
    if entry.generators:
        try:
            _regulator_from_gram(gram_matrix(E, entry.generators, tol))
        except DependentPoints as exc:
            raise CatalogError(f"{entry.label}: generators not independent: {exc}") from exc


def search_generators(
    E: CurveModel,
    bound: int = 100,
    max_rank: int = 4,
    tol: float = 1e-3,
) -> list[RationalPoint]:
    """Greedy independent set among integral points of |x| <= bound.

    Candidates are scanned in ascending canonical height; a point joins the
    basis when the enlarged Gram determinant interval certifiably excludes
    zero.  This is a candidate-generator search, not a rank computation.
    """
    cands = []
    for P in integral_points(E, bound):
        if P.B == 0 or point_order(E, P) is not None:
            continue  # torsion contributes nothing to the lattice
        h = canonical_height(E, P, max(tol, 1e-4))
        cands.append((h.value, P))
    cands.sort(key=lambda item: (item[0], item[1].A, item[1].B))
    basis: list[RationalPoint] = []
    for _, P in cands:
        if len(basis) >= max_rank:
            break
        trial = basis + [P]
        try:
            _regulator_from_gram(gram_matrix(E, trial, tol))
        except DependentPoints:
            continue
        basis.append(P)
    return basis
