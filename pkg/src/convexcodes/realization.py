"""Constructive convex realizations with machine-checked certificates.

Three constructions are provided: the chamber cover realizing the
intersection completion of a code's maximal words, the monotone extension
that adds missing non-maximal words to an abstract cover one fresh point
at a time, and the potential cover whose code is the intersection
completion of the input.  Each construction emits a certificate holding
the target code, the achieved code, and a replayable realization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .codes import (
    AbstractCover,
    Code,
    abstract_code,
    intersection_completion,
    classify_completeness,
    maximal_codewords,
    simplicial_complex,
    word_key,
    word_label,
    word_neurons,
)
from .geometry import (
    AMBIENT_UNION,
    AMBIENT_WHOLE,
    Ball,
    CellComplex,
    ConvexRegion,
    HalfSpace,
    PolyhedralCover,
    Vec,
    code_of_cover,
    dot,
    enumerate_cells,
    feasible,
    sample_code,
)

GEOMETRIC_CHECK_CAP = 4  # verify the half-space cover whenever k stays this small


@dataclass(frozen=True)
class CheckRecord:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True, eq=False)
class RealizationCertificate:
    target: Code
    achieved: Code
    method: str  # "chamber" | "chamber+monotone" | "potential"
    dimension: int
    ambient: str
    checks: tuple[CheckRecord, ...]
    cover: AbstractCover | None = None  # replayable abstract realization

    @property
    def valid(self) -> bool:
        return self.achieved.words == self.target.words and all(
            c.passed for c in self.checks
        )


@dataclass(frozen=True)
class NotApplicable:
    """The chamber pipeline needs every intersection of maximal words present."""

    missing: int
    intersect_of: tuple[int, ...]

    def describe(self, n: int) -> str:
        terms = " ∩ ".join(word_label(w, n) for w in self.intersect_of)
        return f"{word_label(self.missing, n)} = {terms} is missing from the code"


def replay_certificate(cert: RealizationCertificate) -> bool:
    """Recompute the achieved code from the stored realization."""
    if cert.cover is None:
        return False
    return abstract_code(cert.cover).words == cert.achieved.words


# ---------------------------------------------------------------------------
# chamber realization of the completion of the maximal words


@dataclass(frozen=True, eq=False)
class ChamberRealization:
    k: int  # number of maximal words after padding
    padded_words: tuple[int, ...]
    rho: Mapping[int, int]  # neuron -> mask over [k]
    abstract: AbstractCover  # points are the non-empty subsets of [k]
    geometric: PolyhedralCover
    padding_count: int
    achieved_whole: Code
    achieved_union: Code


def _simplex_planes(k: int) -> list[tuple[Vec, Fraction]]:
    """Facet hyperplanes of the rational simplex conv{0, e_1, ..., e_{k-1}}.

    Plane a < k is {x_a = 0} with the vertex side x_a >= 0; plane k is
    {sum x = 1} with the vertex side sum x <= 1.
    """
    d = k - 1
    planes: list[tuple[Vec, Fraction]] = []
    for a in range(1, k):
        normal = tuple(Fraction(1 if j == a - 1 else 0) for j in range(d))
        planes.append((normal, Fraction(0)))
    planes.append((tuple(Fraction(1) for _ in range(d)), Fraction(1)))
    return planes


def _vertex_side(a: int, k: int) -> int:
    # sign of (plane normal . x - offset) on the closed side holding vertex a
    return 1 if a < k else -1


def _chamber_of(x: Vec, planes, k: int) -> int:
    """The mask of closed sides containing x, one bit per plane."""
    rho = 0
    for a in range(1, k + 1):
        v, b = planes[a - 1]
        s = dot(v, x) - b
        side = _vertex_side(a, k)
        if s == 0 or ((s > 0) - (s < 0)) == side:
            rho |= 1 << (a - 1)
    return rho


def max_int_realization(
    code: Code,
    ambient: str = AMBIENT_UNION,
    geometric_check_cap: int = GEOMETRIC_CHECK_CAP,
) -> tuple[ChamberRealization, RealizationCertificate]:
    """Realize the intersection completion of the maximal words of a code.

    Fewer than three maximal words get padded with empty ones so the
    half-space construction lives in R^{max(2, k-1)}.  The abstract chamber
    cover is the exactness carrier; the geometric cover is cross-checked
    against it whenever k stays within `geometric_check_cap`.
    """
    if ambient not in (AMBIENT_WHOLE, AMBIENT_UNION):
        raise ValueError(f"ambient must be whole or union, got {ambient!r}")
    if not code.words:
        raise ValueError("cannot realize an empty code")
    maxima = sorted(maximal_codewords(code), key=word_key)
    padding = max(0, 3 - len(maxima))
    words = tuple(maxima) + (0,) * padding
    k = len(words)
    d = k - 1

    rho = {
        i: sum(1 << (a - 1) for a, w in enumerate(words, start=1) if w & (1 << (i - 1)))
        for i in range(1, code.n + 1)
    }
    points = tuple(range(1, 1 << k))  # non-empty subsets of [k] as masks
    membership = {
        i: frozenset(p for p in points if p and p & rho[i] == p)
        for i in range(1, code.n + 1)
    }
    abstract = AbstractCover(code.n, points, membership, None)
    achieved_whole = abstract_code(abstract)
    achieved_union = Code(code.n, achieved_whole.words - {0})

    planes = _simplex_planes(k)
    regions = []
    for i in range(1, code.n + 1):
        hs = []
        for a in range(1, k + 1):
            if rho[i] & (1 << (a - 1)):
                continue
            v, b = planes[a - 1]
            if _vertex_side(a, k) > 0:
                hs.append(HalfSpace(v, b, True))  # strictly below the vertex side
            else:
                hs.append(HalfSpace(tuple(-c for c in v), -b, True))
        regions.append(ConvexRegion(d, tuple(hs)))
    geometric = PolyhedralCover(d, tuple(regions), ambient)

    completion = intersection_completion(Code(code.n, frozenset(maxima)))
    if ambient == AMBIENT_WHOLE:
        target_words = set(completion.words)
        if padding:
            target_words.add(0)
        achieved = achieved_whole
        cert_cover = abstract
    else:
        target_words = completion.words - {0}
        achieved = achieved_union
        covered = frozenset(p for p in points if abstract.point_word(p))
        cert_cover = AbstractCover(code.n, points, membership, covered)
    target = Code(code.n, frozenset(target_words))

    checks = [
        CheckRecord(
            "abstract-chamber-code",
            achieved.words == target.words,
            f"achieved {len(achieved)} words",
        )
    ]
    if k <= geometric_check_cap:
        checks.extend(_geometric_checks(geometric, abstract, planes, words, k, ambient))
    else:
        checks.append(
            CheckRecord(
                "geometric-agreement",
                True,
                f"skipped: k={k} above cap {geometric_check_cap}",
            )
        )

    cert = RealizationCertificate(
        target=target,
        achieved=achieved,
        method="chamber",
        dimension=d,
        ambient=ambient,
        checks=tuple(checks),
        cover=cert_cover,
    )
    realization = ChamberRealization(
        k=k,
        padded_words=words,
        rho=rho,
        abstract=abstract,
        geometric=geometric,
        padding_count=padding,
        achieved_whole=achieved_whole,
        achieved_union=achieved_union,
    )
    return realization, cert


def _geometric_checks(geometric, abstract, planes, words, k, ambient):
    """Cross-check the half-space cover against the abstract chamber cover."""
    checks = []
    geo_code, _ = code_of_cover(geometric)
    expected = abstract_code(abstract).words
    if ambient == AMBIENT_UNION:
        expected = expected - {0}
    checks.append(
        CheckRecord(
            "geometric-agreement",
            geo_code.words == expected,
            f"code_of_cover gives {len(geo_code)} words",
        )
    )
    # refine by every simplex plane so each chamber is a union of cells
    cells = enumerate_cells(planes, k - 1)
    seen_chambers: set[int] = set()
    per_cell_ok = True
    for cell in cells.cells:
        chamber = _chamber_of(cell.witness, planes, k)
        seen_chambers.add(chamber)
        expected_word = _intersect_words(words, chamber)
        actual = 0
        for i, region in enumerate(geometric.regions):
            if region.contains(cell.witness):
                actual |= 1 << i
        if actual != expected_word:
            per_cell_ok = False
    checks.append(
        CheckRecord("cell-for-codeword", per_cell_ok, f"{len(cells.cells)} cells")
    )
    checks.append(
        CheckRecord(
            "chamber-coverage",
            seen_chambers == set(range(1, 1 << k)),
            f"{len(seen_chambers)} of {(1 << k) - 1} chambers hit",
        )
    )
    return checks


def _intersect_words(words: tuple[int, ...], chamber: int) -> int:
    out = None
    for a, w in enumerate(words, start=1):
        if chamber & (1 << (a - 1)):
            out = w if out is None else out & w
    return 0 if out is None else out


# ---------------------------------------------------------------------------
# monotone extension


class MonotoneExtendError(ValueError):
    def __init__(self, message: str, word: int):
        super().__init__(message)
        self.word = word


def monotone_extend(cover: AbstractCover, target: Code) -> AbstractCover:
    """Grow an abstract cover until its code equals `target`.

    Needs code(cover) <= target <= faces of its complex, with the maximal
    words unchanged.  Missing words are added in decreasing cardinality;
    each one costs a single fresh point whose membership is exactly the word
    (the abstract image of carving a cap out of a bigger atom).
    """
    base = abstract_code(cover)
    if target.n != base.n:
        raise MonotoneExtendError("neuron count mismatch", 0)
    missing_base = sorted(base.words - target.words, key=word_key)
    if missing_base:
        raise MonotoneExtendError(
            f"target drops codeword {word_label(missing_base[0], base.n)}",
            missing_base[0],
        )
    complex_ = simplicial_complex(base)
    faces = complex_.faces()
    for w in sorted(target.words, key=word_key):
        if w not in faces:
            raise MonotoneExtendError(
                f"target word {word_label(w, base.n)} is not a face of the complex",
                w,
            )
    maxima = maximal_codewords(base)
    assert maximal_codewords(target) == maxima

    points = list(cover.points)
    membership = {i: set(s) for i, s in cover.membership.items()}
    ambient = None if cover.ambient is None else set(cover.ambient)
    counter = 0
    existing = set(points)
    for sigma in sorted(target.words - base.words, key=word_key, reverse=True):
        # a strictly bigger maximal word always exists; its atom is the one
        # a geometric construction would carve the fresh point out of
        if not any(m != sigma and m & sigma == sigma for m in maxima):
            raise MonotoneExtendError(
                f"no maximal word strictly contains {word_label(sigma, base.n)}",
                sigma,
            )
        while f"q{counter}" in existing:
            counter += 1
        fresh = f"q{counter}"
        counter += 1
        existing.add(fresh)
        points.append(fresh)
        for i in word_neurons(sigma):
            membership.setdefault(i, set()).add(fresh)
        if ambient is not None:
            ambient.add(fresh)
    return AbstractCover(
        cover.n,
        tuple(points),
        {i: frozenset(s) for i, s in membership.items()},
        None if ambient is None else frozenset(ambient),
    )


def abstract_from_cover(
    cover: PolyhedralCover, cells: CellComplex | None = None
) -> AbstractCover:
    """Collapse a polyhedral cover to one abstract point per cell."""
    _, atlas = code_of_cover(cover, cells)
    points: list[str] = []
    membership: dict[int, set[str]] = {}
    idx = 0
    for word in sorted(atlas, key=word_key):
        for _ in atlas[word]:
            label = f"c{idx}"
            idx += 1
            points.append(label)
            for i in word_neurons(word):
                membership.setdefault(i, set()).add(label)
    return AbstractCover(
        cover.n,
        tuple(points),
        {i: frozenset(s) for i, s in membership.items()},
        None,
    )


# ---------------------------------------------------------------------------
# geometric chord cutter (demonstration grade, verified by sampling)


class ChordCutError(ValueError):
    pass


def chord_cut(
    cover: PolyhedralCover,
    ball: Ball,
    sigma0: int,
    alpha: int,
    witness: Vec | None = None,
    budget: int = 20000,
    seed: int = 11,
) -> PolyhedralCover:
    """Cut a cap out of the atom of `alpha` to uncover the codeword `sigma0`.

    All regions keep the open ball constraint; the sets of `sigma0` keep the
    full cap while the others lose the closed half-space bounding it.  The
    construction is validated by seeded sampling against the expected code
    and retried with a thinner cap on mismatch.
    """
    if sigma0 == 0:
        raise ChordCutError("sigma0 must be a non-empty proper subset of alpha")
    if sigma0 & alpha != sigma0 or sigma0 == alpha:
        raise ChordCutError("sigma0 must be a non-empty proper subset of alpha")
    if cover.dimension < 2:
        raise ChordCutError("chord cutter needs dimension at least 2")
    for r in cover.regions:
        if r.ball is not None or any(not h.strict for h in r.halfspaces):
            raise ChordCutError("cover must be open polyhedral without balls")

    restricted = _restrict_to_ball(cover, ball)
    reference = sample_code(restricted, budget, seed)
    expected = set(reference.code.words) | {sigma0}

    base = witness if witness is not None else _atom_witness(cover, ball, alpha)
    if base is None:
        raise ChordCutError("no rational witness found in the target atom")

    # the cap must stay inside the atom (thin) yet carry enough measure for
    # the sampling check to see it; retries shave it thinner
    for pullback in (Fraction(1, 8), Fraction(1, 32), Fraction(1, 128)):
        w = _push_to_sphere(cover, ball, alpha, base, pullback)
        u = tuple(wi - ci for wi, ci in zip(w, ball.center))
        if not any(u):
            continue
        # the cap is the closed half-space {u.x >= u.w}; sets outside sigma0
        # keep only its open complement
        keep = HalfSpace(u, dot(u, w), True)
        regions = []
        for i, r in enumerate(cover.regions):
            hs = list(r.halfspaces)
            if not sigma0 & (1 << i):
                hs.append(keep)
            regions.append(ConvexRegion(cover.dimension, tuple(hs), ball))
        candidate = PolyhedralCover(cover.dimension, tuple(regions), _ball_ambient(cover, ball))
        observed = sample_code(candidate, budget, seed)
        if set(observed.code.words) == expected:
            return candidate
    raise ChordCutError(
        f"no admissible cap found near witness {tuple(map(str, base))}"
    )


def _ball_ambient(cover: PolyhedralCover, ball: Ball):
    if cover.ambient == AMBIENT_UNION:
        return AMBIENT_UNION
    if isinstance(cover.ambient, ConvexRegion):
        return ConvexRegion(
            cover.dimension, cover.ambient.halfspaces, ball
        )
    return ConvexRegion(cover.dimension, (), ball)


def _restrict_to_ball(cover: PolyhedralCover, ball: Ball) -> PolyhedralCover:
    regions = tuple(
        ConvexRegion(r.dimension, r.halfspaces, ball) for r in cover.regions
    )
    return PolyhedralCover(cover.dimension, regions, _ball_ambient(cover, ball))


def _atom_witness(cover: PolyhedralCover, ball: Ball, alpha: int) -> Vec | None:
    """A rational point of the atom of alpha inside the ball.

    Feasibility runs on the sets of alpha intersected with a small central
    box of the ball; exclusion from the other sets is then checked exactly.
    """
    d = cover.dimension
    h = ball.radius / (2 * d)  # box inside the ball: d * h^2 < r^2
    cons = []
    for j in range(d):
        e = tuple(Fraction(1 if t == j else 0) for t in range(d))
        cons.append((e, ball.center[j] + h, "<"))
        cons.append((tuple(-c for c in e), -(ball.center[j] - h), "<"))
    for i in word_neurons(alpha):
        for hs in cover.regions[i - 1].halfspaces:
            cons.append((hs.normal, hs.offset, "<" if hs.strict else "<="))
    w = feasible(cons, d)
    if w is None:
        return None
    for j in range(cover.n):
        if not alpha & (1 << j) and cover.regions[j].contains(w):
            return None
    return w


def _push_to_sphere(
    cover: PolyhedralCover, ball: Ball, alpha: int, base: Vec, pullback: Fraction
) -> Vec:
    """Walk from the center toward the sphere while staying in the atom.

    Several directions are tried (radially through `base`, then the axes);
    the walk that gets closest to the sphere wins, and its endpoint is then
    pulled back toward the center by the given fraction so the cap keeps
    some thickness.
    """

    def good(x: Vec) -> bool:
        if not ball.contains(x):
            return False
        for j in range(cover.n):
            inside = cover.regions[j].contains(x)
            if bool(alpha & (1 << j)) != inside:
                return False
        return True

    d = cover.dimension
    directions: list[Vec] = []
    radial = tuple(b - c for b, c in zip(base, ball.center))
    if any(radial):
        directions.append(radial)
    for j in range(d):
        e = tuple(Fraction(1 if t == j else 0) for t in range(d))
        directions.append(e)
        directions.append(tuple(-c for c in e))

    r2 = ball.radius**2
    best: tuple[Fraction, Vec] | None = None
    for u in directions:

        def at(t: Fraction) -> Vec:
            return tuple(c + t * ui for c, ui in zip(ball.center, u))

        t = Fraction(1)
        shrink = 0
        while not good(at(t)) and shrink < 24:
            t /= 2
            shrink += 1
        if not good(at(t)):
            continue
        t_good, t_bad = t, t * 2
        grow = 0
        while good(at(t_bad)) and grow < 60:
            t_good, t_bad = t_bad, t_bad * 2
            grow += 1
        for _ in range(24):
            mid = (t_good + t_bad) / 2
            if good(at(mid)):
                t_good = mid
            else:
                t_bad = mid
        pulled = t_good * (1 - pullback)
        w = at(pulled) if good(at(pulled)) else at(t_good)
        d2 = sum((wi - ci) ** 2 for wi, ci in zip(w, ball.center))
        score = d2 / r2
        if best is None or score > best[0]:
            best = (score, w)
    return best[1] if best else base


# ---------------------------------------------------------------------------
# potential cover


@dataclass(frozen=True, eq=False)
class PotentialCoverRealization:
    basis_index: Mapping[int, int]  # non-empty codeword -> coordinate
    vertex_sets: Mapping[int, tuple[int, ...]]  # neuron -> vertex coordinates
    witnesses: Mapping[int, Vec]  # achieved codeword -> point of its atom
    dimension: int


def potential_cover(code: Code) -> tuple[PotentialCoverRealization, RealizationCertificate]:
    """The closed convex cover V_i = conv{e_w : w contains i} and its code.

    The achieved code is computed combinatorially: a non-empty word belongs
    iff it equals the intersection of all non-empty codewords containing it,
    and the empty word belongs iff no neuron lies in every non-empty
    codeword.  Every achieved word gets an exact barycentric witness whose
    membership pattern is then verified coordinate by coordinate.
    """
    if not code.words:
        raise ValueError("potential cover needs a non-empty code")
    nonempty = sorted((w for w in code.words if w), key=word_key)
    basis_index = {w: i for i, w in enumerate(nonempty)}
    dim = len(nonempty)
    vertex_sets = {
        i: tuple(basis_index[w] for w in nonempty if w & (1 << (i - 1)))
        for i in range(1, code.n + 1)
    }

    achieved_words: set[int] = set()
    if nonempty:
        candidates = simplicial_complex(Code(code.n, frozenset(nonempty))).faces()
        for sigma in candidates:
            if sigma == 0:
                continue
            closure = None
            for w in nonempty:
                if w & sigma == sigma:
                    closure = w if closure is None else closure & w
            if closure == sigma:
                achieved_words.add(sigma)
        common = nonempty[0]
        for w in nonempty:
            common &= w
        if common == 0:
            achieved_words.add(0)

    witnesses: dict[int, Vec] = {}
    for sigma in achieved_words:
        family = [w for w in nonempty if w & sigma == sigma] if sigma else nonempty
        kf = len(family)
        point = [Fraction(0)] * dim
        for w in family:
            point[basis_index[w]] = Fraction(1, kf)
        witnesses[sigma] = tuple(point)

    checks = []
    sound = True
    for sigma, point in witnesses.items():
        support = {j for j, c in enumerate(point) if c > 0}
        total = sum(point, Fraction(0))
        member_mask = 0
        for i in range(1, code.n + 1):
            if support and support <= set(vertex_sets[i]):
                member_mask |= 1 << (i - 1)
        if total != 1 or member_mask != sigma:
            sound = False
    checks.append(
        CheckRecord("witness-membership", sound, f"{len(witnesses)} witnesses")
    )

    achieved = Code(code.n, frozenset(achieved_words))
    target = intersection_completion(Code(code.n, frozenset(nonempty))) if nonempty else Code(code.n, frozenset())
    checks.append(
        CheckRecord(
            "achieved-is-completion",
            achieved.words == target.words,
            f"{len(achieved)} words",
        )
    )
    realization = PotentialCoverRealization(basis_index, vertex_sets, witnesses, dim)
    cert = RealizationCertificate(
        target=target,
        achieved=achieved,
        method="potential",
        dimension=dim,
        ambient=AMBIENT_UNION,
        checks=tuple(checks),
        cover=None,
    )
    return realization, cert


# ---------------------------------------------------------------------------
# end-to-end pipeline


def realize(
    code: Code,
    ambient: str | None = None,
    geometric_check_cap: int = GEOMETRIC_CHECK_CAP,
):
    """Realize a max intersection-complete code exactly; the certificate
    records dimension max(2, k-1).

    Returns NotApplicable, with the first missing intersection of maximal
    words as witness, when the completeness hypothesis fails.  The ambient
    mode defaults to whole space when the empty word is present and to the
    union of the sets otherwise.
    """
    report = classify_completeness(code)
    if not report.max_intersection_complete:
        return _missing_intersection(code)
    if ambient is None:
        ambient = AMBIENT_WHOLE if 0 in code.words else AMBIENT_UNION
    realz, cert = max_int_realization(
        code, ambient, geometric_check_cap=geometric_check_cap
    )
    base_cover = cert.cover
    base_code = cert.achieved
    method = "chamber"
    cover = base_cover
    if base_code.words != code.words:
        cover = monotone_extend(base_cover, code)
        method = "chamber+monotone"
    achieved = abstract_code(cover)
    checks = list(cert.checks)
    checks.append(
        CheckRecord(
            "monotone-extension",
            achieved.words == code.words,
            f"added {len(code.words - base_code.words)} words",
        )
    )
    return RealizationCertificate(
        target=code,
        achieved=achieved,
        method=method,
        dimension=realz.k - 1,
        ambient=ambient,
        checks=tuple(checks),
        cover=cover,
    )


def _missing_intersection(code: Code) -> NotApplicable:
    maxima = sorted(maximal_codewords(code), key=word_key)
    completion = intersection_completion(Code(code.n, frozenset(maxima)))
    missing = sorted(completion.words - code.words, key=word_key)[0]
    for size in range(2, len(maxima) + 1):
        for combo in _combos(maxima, size):
            inter = combo[0]
            for w in combo[1:]:
                inter &= w
            if inter == missing:
                return NotApplicable(missing, tuple(combo))
    raise AssertionError("missing word must arise as an intersection")


def _combos(items, size):
    from itertools import combinations

    return combinations(items, size)
