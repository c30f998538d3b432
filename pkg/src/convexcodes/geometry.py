"""Exact rational polyhedral engine.

Feasibility of mixed strict/weak linear systems is decided by
Fourier-Motzkin elimination over `fractions.Fraction`, cells of a
hyperplane arrangement are enumerated as feasible sign vectors with exact
witness points, and the code of a polyhedral cover is read off the cell
lattice.  Regions may carry one optional ball constraint; balls leave the
exact fragment and are handled only by seeded Monte Carlo sampling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .codes import Code, word_key, word_label, word_neurons

Vec = tuple[Fraction, ...]

DIMENSION_CAP = 8
HYPERPLANE_CAP = 14


class DimensionCapError(ValueError):
    pass


class HyperplaneBudgetError(ValueError):
    pass


class BallConstraintError(ValueError):
    """Raised when an exact operation meets a ball constraint."""


class MixedRelationsError(ValueError):
    """Raised when a cover mixes open and closed regions."""


class NonFullDimensionalRegionError(ValueError):
    def __init__(self, region_index: int, certificate: list):
        super().__init__(
            f"region {region_index} is not full-dimensional; "
            f"strict system infeasible ({len(certificate)} constraints)"
        )
        self.region_index = region_index
        self.certificate = certificate


def vec(*xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def dot(a: Vec, b: Vec) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


# ---------------------------------------------------------------------------
# regions and covers


@dataclass(frozen=True)
class HalfSpace:
    """{x : normal . x < offset} when strict, else {x : normal . x <= offset}."""

    normal: Vec
    offset: Fraction
    strict: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "normal", tuple(Fraction(x) for x in self.normal))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if not any(self.normal):
            raise ValueError("half-space normal must be non-zero")

    def contains(self, x: Vec) -> bool:
        v = dot(self.normal, x)
        return v < self.offset if self.strict else v <= self.offset


@dataclass(frozen=True)
class Ball:
    """{x : |x - center| < radius} when strict, else the closed ball."""

    center: Vec
    radius: Fraction
    strict: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", tuple(Fraction(x) for x in self.center))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")

    def contains(self, x: Vec) -> bool:
        d2 = sum((xi - ci) ** 2 for xi, ci in zip(x, self.center))
        r2 = self.radius**2
        return d2 < r2 if self.strict else d2 <= r2


@dataclass(frozen=True)
class ConvexRegion:
    """An intersection of half-spaces, optionally cut with one ball."""

    dimension: int
    halfspaces: tuple[HalfSpace, ...]
    ball: Ball | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        for h in self.halfspaces:
            if len(h.normal) != self.dimension:
                raise ValueError("half-space dimension mismatch")
        if self.ball is not None and len(self.ball.center) != self.dimension:
            raise ValueError("ball dimension mismatch")

    def contains(self, x: Vec) -> bool:
        if self.ball is not None and not self.ball.contains(x):
            return False
        return all(h.contains(x) for h in self.halfspaces)

    def all_relations(self) -> set[bool]:
        rel = {h.strict for h in self.halfspaces}
        if self.ball is not None:
            rel.add(self.ball.strict)
        return rel


AMBIENT_WHOLE = "whole"
AMBIENT_UNION = "union"


@dataclass(frozen=True)
class PolyhedralCover:
    """n regions in R^d plus an ambient mode: whole space, the union of the
    regions, or an explicit region."""

    dimension: int
    regions: tuple[ConvexRegion, ...]
    ambient: str | ConvexRegion = AMBIENT_WHOLE

    def __post_init__(self) -> None:
        object.__setattr__(self, "regions", tuple(self.regions))
        if not self.regions:
            raise ValueError("cover needs at least one region")
        for r in self.regions:
            if r.dimension != self.dimension:
                raise ValueError("region dimension mismatch")
        if isinstance(self.ambient, str):
            if self.ambient not in (AMBIENT_WHOLE, AMBIENT_UNION):
                raise ValueError(f"unknown ambient mode {self.ambient!r}")
        elif self.ambient.dimension != self.dimension:
            raise ValueError("ambient region dimension mismatch")

    @property
    def n(self) -> int:
        return len(self.regions)

    def has_balls(self) -> bool:
        if any(r.ball is not None for r in self.regions):
            return True
        return isinstance(self.ambient, ConvexRegion) and self.ambient.ball is not None

    def ambient_label(self) -> str:
        if isinstance(self.ambient, ConvexRegion):
            return "region"
        return self.ambient


def open_interval(lo, hi) -> ConvexRegion:
    """(lo, hi) as a one-dimensional region."""
    return ConvexRegion(
        1,
        (
            HalfSpace((Fraction(-1),), -Fraction(lo), True),
            HalfSpace((Fraction(1),), Fraction(hi), True),
        ),
    )


def closed_interval(lo, hi) -> ConvexRegion:
    return ConvexRegion(
        1,
        (
            HalfSpace((Fraction(-1),), -Fraction(lo), False),
            HalfSpace((Fraction(1),), Fraction(hi), False),
        ),
    )


# ---------------------------------------------------------------------------
# Fourier-Motzkin feasibility

# A constraint is (coeffs, bound, strict) meaning coeffs . x < bound
# (strict) or <= bound.  Equalities are split into two weak constraints.


def _normalize(con):
    coeffs, bound, strict = con
    lead = next((c for c in coeffs if c != 0), None)
    if lead is None:
        return con
    scale = abs(lead)
    return (tuple(c / scale for c in coeffs), bound / scale, strict)


def _prune(cons):
    """Group parallel constraints, keep the binding one; detect 0 < c failures."""
    best: dict[Vec, tuple[Fraction, bool]] = {}
    for coeffs, bound, strict in cons:
        if not any(coeffs):
            if bound < 0 or (strict and bound == 0):
                return None
            continue
        cur = best.get(coeffs)
        if cur is None or bound < cur[0] or (bound == cur[0] and strict and not cur[1]):
            best[coeffs] = (bound, strict)
    return [(c, b, s) for c, (b, s) in best.items()]


def _eliminate(cons, j):
    """Project out variable j (1-based); input constraints use vars 1..j."""
    zero, lows, ups = [], [], []
    for con in cons:
        aj = con[0][j - 1]
        if aj == 0:
            zero.append(con)
        elif aj > 0:
            ups.append(con)
        else:
            lows.append(con)
    out = list(zero)
    for la, lb, ls in lows:
        p = -la[j - 1]
        for ua, ub, us in ups:
            q = ua[j - 1]
            coeffs = tuple(q * x + p * y for x, y in zip(la, ua))
            out.append((coeffs, q * lb + p * ub, ls or us))
    return [_normalize(c) for c in out]


def feasible(
    constraints: Sequence[tuple[Sequence, object, str]],
    dimension: int | None = None,
    dimension_cap: int = DIMENSION_CAP,
) -> Vec | None:
    """Exact feasibility of a mixed strict/weak linear system.

    Each constraint is (normal, offset, rel) with rel one of '<', '<=', '='.
    Returns a rational witness satisfying every constraint, or None.
    """
    cons = []
    d = dimension
    for normal, offset, rel in constraints:
        a = tuple(Fraction(x) for x in normal)
        b = Fraction(offset)
        if d is None:
            d = len(a)
        elif len(a) != d:
            raise ValueError("constraint dimension mismatch")
        if rel == "<":
            cons.append((a, b, True))
        elif rel == "<=":
            cons.append((a, b, False))
        elif rel == "=":
            cons.append((a, b, False))
            cons.append((tuple(-x for x in a), -b, False))
        else:
            raise ValueError(f"unknown relation {rel!r}")
    if d is None:
        return ()
    if d > dimension_cap:
        raise DimensionCapError(f"dimension {d} exceeds cap {dimension_cap}")

    per_var: list = [None] * (d + 1)
    per_var[d] = _prune([_normalize(c) for c in cons])
    if per_var[d] is None:
        return None
    for j in range(d, 0, -1):
        nxt = _prune(_eliminate(per_var[j], j))
        if nxt is None:
            return None
        per_var[j - 1] = nxt

    witness: list[Fraction] = []
    for j in range(1, d + 1):
        lo = hi = None  # (value, strict)
        for coeffs, bound, strict in per_var[j]:
            aj = coeffs[j - 1]
            if aj == 0:
                continue
            partial = sum(
                (coeffs[k] * witness[k] for k in range(j - 1)), Fraction(0)
            )
            val = (bound - partial) / aj
            if aj > 0:
                if hi is None or val < hi[0] or (val == hi[0] and strict):
                    hi = (val, strict)
            else:
                if lo is None or val > lo[0] or (val == lo[0] and strict):
                    lo = (val, strict)
        if lo is None and hi is None:
            witness.append(Fraction(0))
        elif lo is None:
            witness.append(hi[0] - 1)
        elif hi is None:
            witness.append(lo[0] + 1)
        elif lo[0] < hi[0]:
            witness.append((lo[0] + hi[0]) / 2)
        else:
            # elimination guarantees lo == hi with both bounds weak
            assert lo[0] == hi[0] and not lo[1] and not hi[1]
            witness.append(lo[0])
    return tuple(witness)


# ---------------------------------------------------------------------------
# arrangements and cells


@dataclass(frozen=True)
class Cell:
    """One feasible sign vector of an arrangement, with an exact witness."""

    signs: tuple[int, ...]
    witness: Vec
    codeword: int | None = None

    @property
    def full_dim(self) -> bool:
        return all(s != 0 for s in self.signs)


@dataclass(frozen=True)
class CellComplex:
    dimension: int
    hyperplanes: tuple[tuple[Vec, Fraction], ...]
    cells: tuple[Cell, ...]

    def full_dim_count(self) -> int:
        return sum(1 for c in self.cells if c.full_dim)


def canonical_hyperplane(normal: Vec, offset: Fraction) -> tuple[tuple[Vec, Fraction], int]:
    """Scale to first-nonzero-coefficient +1; report the orientation kept.

    (normal, offset) = orient * mu * (v, b) with mu > 0.
    """
    lead = next(c for c in normal if c != 0)
    orient = 1 if lead > 0 else -1
    scale = abs(lead)
    v = tuple(c / scale * orient for c in normal)
    b = offset / scale * orient
    return (v, b), orient


def _point_sign(plane: tuple[Vec, Fraction], x: Vec) -> int:
    v = dot(plane[0], x) - plane[1]
    return (v > 0) - (v < 0)


def enumerate_cells(
    hyperplanes: Sequence[tuple[Sequence, object]],
    dimension: int,
    max_hyperplanes: int = HYPERPLANE_CAP,
) -> CellComplex:
    """All feasible sign vectors of an arrangement, each with a witness.

    Cells are relatively open, pairwise disjoint, and partition R^d.  The
    hyperplane list must already be deduplicated and canonically scaled.
    """
    planes = [
        (tuple(Fraction(x) for x in nrm), Fraction(off)) for nrm, off in hyperplanes
    ]
    if len(set(planes)) != len(planes):
        raise ValueError("hyperplane list contains duplicates")
    if len(planes) > max_hyperplanes:
        raise HyperplaneBudgetError(
            f"{len(planes)} hyperplanes exceed the cap of {max_hyperplanes}"
        )
    origin = tuple(Fraction(0) for _ in range(dimension))
    partial: list[tuple[tuple[int, ...], Vec]] = [((), origin)]
    for k, (v, b) in enumerate(planes):
        grown: list[tuple[tuple[int, ...], Vec]] = []
        for signs, w in partial:
            sw = _point_sign((v, b), w)
            for s in (-1, 0, 1):
                if s == sw:
                    grown.append((signs + (s,), w))
                    continue
                cons = []
                for kk in range(k):
                    vv, bb = planes[kk]
                    cons.append(_sign_constraint(vv, bb, signs[kk]))
                cons.append(_sign_constraint(v, b, s))
                wit = feasible(cons, dimension, dimension_cap=max(dimension, DIMENSION_CAP))
                if wit is not None:
                    grown.append((signs + (s,), wit))
        partial = grown
    cells = tuple(Cell(s, w) for s, w in partial)
    return CellComplex(dimension, tuple(planes), cells)


def _sign_constraint(v: Vec, b: Fraction, s: int):
    if s == 0:
        return (v, b, "=")
    if s < 0:
        return (v, b, "<")
    return (tuple(-x for x in v), -b, "<")


def is_face(c: tuple[int, ...], t: tuple[int, ...]) -> bool:
    """cell(c) lies in the closure of cell(t)."""
    for a, b in zip(c, t):
        if b == 0:
            if a != 0:
                return False
        elif a != 0 and a != b:
            return False
    return True


def closure_cells(members: set[int], cells: Sequence[Cell]) -> set[int]:
    """Indices of cells contained in the closure of the given cell set."""
    return {
        i
        for i, c in enumerate(cells)
        if any(is_face(c.signs, cells[j].signs) for j in members)
    }


def interior_cells(members: set[int], cells: Sequence[Cell]) -> set[int]:
    """Indices of cells contained in the interior of the given cell set.

    A point of a cell c has arbitrarily close points exactly in the cells t
    whose closure contains c, so c is interior iff all such t are members.
    """
    out = set()
    for i, c in enumerate(cells):
        if i not in members:
            continue
        if all(
            j in members
            for j, t in enumerate(cells)
            if is_face(c.signs, t.signs)
        ):
            out.add(i)
    return out


def boundary_cells(members: set[int], cells: Sequence[Cell]) -> set[int]:
    return closure_cells(members, cells) - interior_cells(members, cells)


# ---------------------------------------------------------------------------
# code of a cover

# Compiled region: per half-space, the canonical plane index, the sign a
# point must have to lie strictly inside, and the strictness flag.


@dataclass(frozen=True)
class _Compiled:
    planes: tuple[tuple[Vec, Fraction], ...]
    region_conds: tuple[tuple[tuple[int, int, bool], ...], ...]
    ambient_conds: tuple[tuple[int, int, bool], ...] | None  # None unless region


def _compile(cover: PolyhedralCover) -> _Compiled:
    if cover.has_balls():
        raise BallConstraintError(
            "cover carries ball constraints; exact cell enumeration is "
            "unavailable, use sample_code"
        )
    plane_ix: dict[tuple[Vec, Fraction], int] = {}

    def cond_of(h: HalfSpace) -> tuple[int, int, bool]:
        key, orient = canonical_hyperplane(h.normal, h.offset)
        if key not in plane_ix:
            plane_ix[key] = len(plane_ix)
        # normal.x < offset  <=>  orient * (v.x - b) < 0
        return (plane_ix[key], -orient, h.strict)

    region_conds = tuple(
        tuple(cond_of(h) for h in r.halfspaces) for r in cover.regions
    )
    ambient_conds = None
    if isinstance(cover.ambient, ConvexRegion):
        ambient_conds = tuple(cond_of(h) for h in cover.ambient.halfspaces)
    planes = tuple(sorted(plane_ix, key=lambda p: (p[0], p[1])))
    renumber = {plane_ix[p]: i for i, p in enumerate(planes)}
    region_conds = tuple(
        tuple((renumber[ix], sg, st) for ix, sg, st in conds)
        for conds in region_conds
    )
    if ambient_conds is not None:
        ambient_conds = tuple((renumber[ix], sg, st) for ix, sg, st in ambient_conds)
    return _Compiled(planes, region_conds, ambient_conds)


def _satisfies(signs: tuple[int, ...], conds, weaken: bool = False, strengthen: bool = False) -> bool:
    for ix, want, strict in conds:
        s = signs[ix]
        if strengthen:
            ok = s == want
        elif strict and not weaken:
            ok = s == want
        else:
            ok = s == want or s == 0
        if not ok:
            return False
    return True


def arrangement_cells(cover: PolyhedralCover, max_hyperplanes: int = HYPERPLANE_CAP) -> CellComplex:
    """The cell complex of all hyperplanes appearing in the cover."""
    comp = _compile(cover)
    return enumerate_cells(comp.planes, cover.dimension, max_hyperplanes)


def region_cell_sets(
    cover: PolyhedralCover, cells: CellComplex | None = None
) -> tuple[list[tuple[set[int], set[int], set[int]]], CellComplex]:
    """Per region, the cell index sets of the region, its closure, and its
    interior, on the cover's own arrangement.

    Closure and interior read the weakened and strengthened constraints,
    which is exact for full-dimensional or empty regions.
    """
    comp = _compile(cover)
    if cells is None:
        cells = enumerate_cells(comp.planes, cover.dimension)
    elif cells.hyperplanes != comp.planes:
        raise ValueError("supplied cells were built from a different arrangement")
    out = []
    for conds in comp.region_conds:
        exact = {
            ix for ix, c in enumerate(cells.cells) if _satisfies(c.signs, conds)
        }
        closed = {
            ix
            for ix, c in enumerate(cells.cells)
            if _satisfies(c.signs, conds, weaken=True)
        }
        inner = {
            ix
            for ix, c in enumerate(cells.cells)
            if _satisfies(c.signs, conds, strengthen=True)
        }
        out.append((exact, closed, inner))
    return out, cells


def code_of_cover(
    cover: PolyhedralCover,
    cells: CellComplex | None = None,
    max_hyperplanes: int = HYPERPLANE_CAP,
) -> tuple[Code, dict[int, tuple[Cell, ...]]]:
    """The exact code of a polyhedral cover, plus the cells of each codeword.

    Every half-space boundary joins one arrangement, so membership of a
    whole cell in a region is read off the cell's sign vector.
    """
    comp = _compile(cover)
    if cells is None:
        cells = enumerate_cells(comp.planes, cover.dimension, max_hyperplanes)
    elif cells.hyperplanes != comp.planes:
        raise ValueError("supplied cells were built from a different arrangement")
    atlas: dict[int, list[Cell]] = {}
    for cell in cells.cells:
        word = 0
        for i, conds in enumerate(comp.region_conds):
            if _satisfies(cell.signs, conds):
                word |= 1 << i
        if comp.ambient_conds is not None:
            if not _satisfies(cell.signs, comp.ambient_conds):
                continue
        elif cover.ambient == AMBIENT_UNION and word == 0:
            continue
        atlas.setdefault(word, []).append(replace(cell, codeword=word))
    code = Code(cover.n, frozenset(atlas))
    return code, {w: tuple(cs) for w, cs in atlas.items()}


# ---------------------------------------------------------------------------
# closure / interior transforms


class TransformError(ValueError):
    def __init__(self, offenders: list[tuple[int, list]]):
        idx = ", ".join(str(i) for i, _ in offenders)
        super().__init__(f"regions not full-dimensional: {idx}")
        self.offenders = offenders


CLOSURE = "closure"
INTERIOR = "interior"


def _strict_system(region: ConvexRegion):
    return [(h.normal, h.offset, "<") for h in region.halfspaces]


def transform_cover(cover: PolyhedralCover, mode: str) -> PolyhedralCover:
    """Flip strict/weak relations; topologically valid for full-dimensional
    polyhedra, which is checked per region and enforced.

    An empty region is also accepted when its flipped system stays empty,
    since the closure and interior of the empty set are empty.
    """
    if mode not in (CLOSURE, INTERIOR):
        raise ValueError(f"unknown transform mode {mode!r}")
    if cover.has_balls():
        raise BallConstraintError("closure/interior transforms need ball-free covers")
    offenders = []
    for i, r in enumerate(cover.regions):
        sys = _strict_system(r)
        if feasible(sys, cover.dimension) is not None:
            continue
        as_given = [
            (h.normal, h.offset, "<" if h.strict else "<=") for h in r.halfspaces
        ]
        weak = [(h.normal, h.offset, "<=") for h in r.halfspaces]
        empty_now = feasible(as_given, cover.dimension) is None
        flip_target = sys if mode == INTERIOR else weak
        stays_empty = feasible(flip_target, cover.dimension) is None
        if empty_now and stays_empty:
            continue
        offenders.append((i, sys))
    if offenders:
        raise TransformError(offenders)
    want_strict = mode == INTERIOR
    regions = tuple(
        ConvexRegion(
            r.dimension,
            tuple(replace(h, strict=want_strict) for h in r.halfspaces),
        )
        for r in cover.regions
    )
    return replace(cover, regions=regions)


# ---------------------------------------------------------------------------
# non-degeneracy (top-dimensional atoms, boundary condition)


@dataclass(frozen=True)
class Offender:
    condition: str  # "i" or "ii"
    sigma: int
    cell: Cell


@dataclass(frozen=True)
class NondegeneracyReport:
    cond_i: bool
    cond_ii: bool
    offenders: tuple[Offender, ...]


def check_nondegeneracy(
    cover: PolyhedralCover,
    cells: CellComplex | None = None,
    max_hyperplanes: int = HYPERPLANE_CAP,
) -> NondegeneracyReport:
    """Check both non-degeneracy conditions on the cell lattice.

    (i)  every cell of a non-empty atom lies in the closure of a
         full-dimensional cell of the same atom;
    (ii) every cell inside an intersection of region boundaries lies in the
         boundary of the intersection of those regions.

    Atoms are taken over the whole space regardless of the cover's ambient
    mode.
    """
    comp = _compile(cover)
    for i, r in enumerate(cover.regions):
        weak = [(h.normal, h.offset, "<=") for h in r.halfspaces]
        if feasible(weak, cover.dimension) is None:
            continue  # empty region never contributes
        sys = _strict_system(r)
        if feasible(sys, cover.dimension) is None:
            raise NonFullDimensionalRegionError(i, sys)
    if cells is None:
        cells = enumerate_cells(comp.planes, cover.dimension, max_hyperplanes)
    all_cells = cells.cells

    def word_of(signs) -> int:
        w = 0
        for i, conds in enumerate(comp.region_conds):
            if _satisfies(signs, conds):
                w |= 1 << i
        return w

    atoms: dict[int, list[int]] = {}
    for ix, cell in enumerate(all_cells):
        atoms.setdefault(word_of(cell.signs), []).append(ix)

    offenders: list[Offender] = []

    # condition (i)
    for sigma, members in sorted(atoms.items(), key=lambda kv: word_key(kv[0])):
        fulls = [ix for ix in members if all_cells[ix].full_dim]
        for ix in members:
            if not any(
                is_face(all_cells[ix].signs, all_cells[j].signs) for j in fulls
            ):
                offenders.append(Offender("i", sigma, all_cells[ix]))

    # condition (ii)
    per_region, _ = region_cell_sets(cover, cells)
    in_region = [exact for exact, _, _ in per_region]
    bd_region = [closed - inner for _, closed, inner in per_region]

    candidates: set[int] = set()
    for ix in range(len(all_cells)):
        touched = 0
        for i, bd in enumerate(bd_region):
            if ix in bd:
                touched |= 1 << i
        if touched:
            sub = touched
            while sub:
                candidates.add(sub)
                sub = (sub - 1) & touched
    for sigma in sorted(candidates, key=word_key):
        idxs = word_neurons(sigma)
        common_bd = set.intersection(*(bd_region[i - 1] for i in idxs))
        if not common_bd:
            continue
        inter = set.intersection(*(in_region[i - 1] for i in idxs))
        bd_inter = boundary_cells(inter, all_cells)
        for ix in sorted(common_bd):
            if ix not in bd_inter:
                offenders.append(Offender("ii", sigma, all_cells[ix]))

    cond_i = not any(o.condition == "i" for o in offenders)
    cond_ii = not any(o.condition == "ii" for o in offenders)
    return NondegeneracyReport(cond_i, cond_ii, tuple(offenders))


@dataclass(frozen=True)
class InvarianceReport:
    code_equal_cl: bool | None
    code_equal_int: bool | None


def verify_closure_interior_invariance(
    cover: PolyhedralCover,
    cells: CellComplex | None = None,
) -> InvarianceReport:
    """Compare the cover's code with the code of its closure or interior.

    The cover must be all-open or all-closed; the flipped cover shares the
    same arrangement, so the cell complex is computed once.
    """
    rels: set[bool] = set()
    for r in cover.regions:
        rels |= r.all_relations()
    if rels == {True, False}:
        raise MixedRelationsError("cover mixes strict and weak regions")
    if cells is None:
        cells = arrangement_cells(cover)
    base, _ = code_of_cover(cover, cells)
    if rels in (set(), {True}):  # open cover (or all-trivial regions)
        other, _ = code_of_cover(transform_cover(cover, CLOSURE), cells)
        return InvarianceReport(code_equal_cl=base.words == other.words, code_equal_int=None)
    other, _ = code_of_cover(transform_cover(cover, INTERIOR), cells)
    return InvarianceReport(code_equal_cl=None, code_equal_int=base.words == other.words)


# ---------------------------------------------------------------------------
# Monte Carlo sampling (the only route for ball-constrained covers)


@dataclass(frozen=True)
class SampleReport:
    code: Code
    counts: dict[int, int]
    budget: int
    seed: int
    box: tuple[Vec, Vec]

    def render(self) -> str:
        lines = [
            f"budget={self.budget} seed={self.seed}",
            "box="
            + " ".join(
                f"[{lo},{hi}]" for lo, hi in zip(self.box[0], self.box[1])
            ),
        ]
        for w in self.code.sorted_words():
            lines.append(f"{word_label(w, self.code.n)}: {self.counts[w]}")
        return "\n".join(lines) + "\n"


def derive_box(cover: PolyhedralCover) -> tuple[Vec, Vec]:
    """Bounding box of all ball constraints; the only automatic derivation."""
    balls = [r.ball for r in cover.regions if r.ball is not None]
    if isinstance(cover.ambient, ConvexRegion) and cover.ambient.ball is not None:
        balls.append(cover.ambient.ball)
    if not balls:
        raise ValueError("no sampling box derivable: cover has no ball constraints")
    lo = tuple(
        min(b.center[j] - b.radius for b in balls) for j in range(cover.dimension)
    )
    hi = tuple(
        max(b.center[j] + b.radius for b in balls) for j in range(cover.dimension)
    )
    return lo, hi


def sample_code(
    cover: PolyhedralCover,
    budget: int,
    seed: int,
    box: tuple[Sequence, Sequence] | None = None,
) -> SampleReport:
    """Uniform rational sampling in a box; observed codewords with counts.

    Deterministic for a fixed seed.  The estimate never invents codewords:
    every sampled point is classified by exact arithmetic.
    """
    if box is None:
        lo, hi = derive_box(cover)
    else:
        lo = tuple(Fraction(x) for x in box[0])
        hi = tuple(Fraction(x) for x in box[1])
    if len(lo) != cover.dimension or len(hi) != cover.dimension:
        raise ValueError("box dimension mismatch")
    if any(l >= h for l, h in zip(lo, hi)):
        raise ValueError("zero-volume sampling box")
    rng = random.Random(seed)
    denom = 1 << 48
    counts: dict[int, int] = {}
    ambient_region = cover.ambient if isinstance(cover.ambient, ConvexRegion) else None
    for _ in range(budget):
        x = tuple(
            l + (h - l) * Fraction(rng.getrandbits(48), denom)
            for l, h in zip(lo, hi)
        )
        word = 0
        for i, r in enumerate(cover.regions):
            if r.contains(x):
                word |= 1 << i
        if ambient_region is not None and not ambient_region.contains(x):
            continue
        if cover.ambient == AMBIENT_UNION and word == 0:
            continue
        counts[word] = counts.get(word, 0) + 1
    return SampleReport(
        Code(cover.n, frozenset(counts)), counts, budget, seed, (lo, hi)
    )


# ---------------------------------------------------------------------------
# cover text format

# Header "d=<int> n=<int> ambient=<whole|union|region>".  Each region opens
# with a SET line, followed by "H <num>/<den> ... : <num>/<den> <lt|le>"
# (normal coefficients, then offset and relation) and an optional
# "BALL cx cy ... r <lt|le>".  An ambient region comes last under AMBIENT.


class CoverParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _parse_frac(tok: str, ln: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise CoverParseError(ln, f"bad rational {tok!r}") from None


def cover_to_text(cover: PolyhedralCover) -> str:
    lines = [
        f"d={cover.dimension} n={cover.n} ambient={cover.ambient_label()}"
    ]

    def emit_region(r: ConvexRegion) -> None:
        for h in r.halfspaces:
            rel = "lt" if h.strict else "le"
            lines.append(
                "H "
                + " ".join(_frac_str(c) for c in h.normal)
                + " : "
                + _frac_str(h.offset)
                + f" {rel}"
            )
        if r.ball is not None:
            rel = "lt" if r.ball.strict else "le"
            lines.append(
                "BALL "
                + " ".join(_frac_str(c) for c in r.ball.center)
                + f" {_frac_str(r.ball.radius)} {rel}"
            )

    for r in cover.regions:
        lines.append("SET")
        emit_region(r)
    if isinstance(cover.ambient, ConvexRegion):
        lines.append("AMBIENT")
        emit_region(cover.ambient)
    return "\n".join(lines) + "\n"


def cover_from_text(text: str) -> PolyhedralCover:
    d = n = None
    ambient_mode: str | None = None
    sections: list[list[tuple[int, str]]] = []
    ambient_section: list[tuple[int, str]] | None = None
    current: list[tuple[int, str]] | None = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if d is None:
            parts = dict(
                tok.split("=", 1) for tok in line.split() if "=" in tok
            )
            try:
                d = int(parts["d"])
                n = int(parts["n"])
                ambient_mode = parts["ambient"]
            except (KeyError, ValueError):
                raise CoverParseError(
                    ln, "expected header 'd=<int> n=<int> ambient=<mode>'"
                ) from None
            if ambient_mode not in (AMBIENT_WHOLE, AMBIENT_UNION, "region"):
                raise CoverParseError(ln, f"unknown ambient {ambient_mode!r}")
            continue
        if line == "SET":
            if ambient_section is not None:
                raise CoverParseError(ln, "SET after AMBIENT")
            current = []
            sections.append(current)
            continue
        if line == "AMBIENT":
            ambient_section = []
            current = ambient_section
            continue
        if current is None:
            raise CoverParseError(ln, "constraint line before any SET")
        current.append((ln, line))
    if d is None:
        raise CoverParseError(1, "empty input, expected header")

    def build_region(entries: list[tuple[int, str]]) -> ConvexRegion:
        halfspaces = []
        ball = None
        for ln, line in entries:
            toks = line.split()
            if toks[0] == "H":
                if ":" not in toks:
                    raise CoverParseError(ln, "H line missing ':'")
                cut = toks.index(":")
                normal = tuple(_parse_frac(t, ln) for t in toks[1:cut])
                if len(normal) != d:
                    raise CoverParseError(ln, f"normal has {len(normal)} coords, want {d}")
                if len(toks) != cut + 3:
                    raise CoverParseError(ln, "H line needs offset and relation after ':'")
                offset = _parse_frac(toks[cut + 1], ln)
                rel = toks[cut + 2]
                if rel not in ("lt", "le"):
                    raise CoverParseError(ln, f"bad relation {rel!r}")
                halfspaces.append(HalfSpace(normal, offset, rel == "lt"))
            elif toks[0] == "BALL":
                if ball is not None:
                    raise CoverParseError(ln, "second BALL in one set")
                if len(toks) != d + 3:
                    raise CoverParseError(ln, "BALL needs center, radius, relation")
                center = tuple(_parse_frac(t, ln) for t in toks[1 : d + 1])
                radius = _parse_frac(toks[d + 1], ln)
                rel = toks[d + 2]
                if rel not in ("lt", "le"):
                    raise CoverParseError(ln, f"bad relation {rel!r}")
                ball = Ball(center, radius, rel == "lt")
            else:
                raise CoverParseError(ln, f"unknown directive {toks[0]!r}")
        return ConvexRegion(d, tuple(halfspaces), ball)

    if len(sections) != n:
        raise CoverParseError(1, f"header says n={n} but found {len(sections)} SETs")
    regions = tuple(build_region(sec) for sec in sections)
    ambient: str | ConvexRegion
    if ambient_mode == "region":
        if ambient_section is None:
            raise CoverParseError(1, "ambient=region but no AMBIENT section")
        ambient = build_region(ambient_section)
    else:
        if ambient_section is not None:
            raise CoverParseError(1, "AMBIENT section without ambient=region")
        ambient = ambient_mode
    return PolyhedralCover(d, regions, ambient)
