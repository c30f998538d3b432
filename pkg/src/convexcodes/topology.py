"""Mod-2 homology, contractibility certificates, and convexity obstructions.

Reduced Betti numbers are computed over GF(2) from boundary-matrix ranks,
with the empty face carried in degree -1 so that the complex consisting of
the empty face alone reports its one unit of (-1)-homology.  Contractibility
is three-valued: a non-zero reduced Betti number certifies NotContractible,
a cone apex or a replayable collapse sequence certifies Contractible, and
everything else is Unknown.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .codes import (
    Code,
    SimplicialComplex,
    link,
    restrict,
    simplicial_complex,
    simplicial_violators,
    word_key,
    word_neurons,
)

COLLAPSE_RESTARTS = 32


# ---------------------------------------------------------------------------
# reduced homology over GF(2)


@dataclass(frozen=True)
class BettiProfile:
    """Reduced Betti numbers (beta_0, beta_1, ...) with trailing zeros trimmed.

    `minus_one` is 1 exactly for the complex whose only face is the empty
    face, and 0 otherwise.
    """

    minus_one: int
    reduced: tuple[int, ...]

    def is_zero(self) -> bool:
        return self.minus_one == 0 and not self.reduced

    def __str__(self) -> str:
        if self.minus_one:
            return "(1 in degree -1)"
        return "(" + ",".join(str(b) for b in self.reduced) + ")"


def _rank_gf2(columns: list[int]) -> int:
    """Rank of a GF(2) matrix given as column bit masks."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            low = col & -col
            if low in pivots:
                col ^= pivots[low]
            else:
                pivots[low] = col
                rank += 1
                break
    return rank


def reduced_betti(K: SimplicialComplex, face_budget: int = 1 << 20) -> BettiProfile:
    """Reduced GF(2) Betti numbers of a complex, from boundary ranks."""
    if not K.facets:
        return BettiProfile(0, ())
    faces = K.faces(budget=face_budget)
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        by_dim.setdefault(f.bit_count() - 1, []).append(f)
    top = max(by_dim)
    for d in by_dim:
        by_dim[d].sort(key=word_key)
    index = {d: {f: i for i, f in enumerate(by_dim[d])} for d in by_dim}

    def boundary_rank(d: int) -> int:
        # columns are d-faces, rows are (d-1)-faces
        if d not in by_dim or (d - 1) not in by_dim:
            return 0
        rows = index[d - 1]
        cols = []
        for f in by_dim[d]:
            col = 0
            for i in word_neurons(f):
                col |= 1 << rows[f & ~(1 << (i - 1))]
            cols.append(col)
        return _rank_gf2(cols)

    ranks = {d: boundary_rank(d) for d in range(0, top + 1)}
    ranks[top + 1] = 0
    minus_one = 1 - ranks.get(0, 0)
    betti = [
        len(by_dim.get(d, ())) - ranks[d] - ranks[d + 1] for d in range(0, top + 1)
    ]
    while betti and betti[-1] == 0:
        betti.pop()
    return BettiProfile(minus_one, tuple(betti))


# ---------------------------------------------------------------------------
# contractibility


@dataclass(frozen=True)
class Contractible:
    """Certificate: a cone apex, or a collapse sequence ending in a point."""

    apex: int | None = None
    collapse_sequence: tuple[tuple[int, int], ...] | None = None


@dataclass(frozen=True)
class NotContractible:
    """Certificate: a non-zero reduced Betti number in the given degree."""

    degree: int
    betti: int


@dataclass(frozen=True)
class Unknown:
    restarts: int


Verdict = Contractible | NotContractible | Unknown


def cone_apex(K: SimplicialComplex) -> int | None:
    """A vertex contained in every facet, if one exists."""
    common = None
    for f in K.facets:
        common = f if common is None else common & f
    if not common:
        return None
    return word_neurons(common)[0]


def cone_complex(K: SimplicialComplex, apex: int) -> SimplicialComplex:
    """The cone over K with a fresh apex vertex."""
    bit = 1 << (apex - 1)
    if any(f & bit for f in K.facets):
        raise ValueError(f"apex {apex} already appears in the complex")
    n = max(K.n, apex)
    return SimplicialComplex(n, frozenset(f | bit for f in K.facets))


def _try_collapse(faces: set[int], rng: random.Random) -> tuple[tuple[int, int], ...] | None:
    """Greedy free-face collapse; returns the removal sequence on success."""
    live = set(faces)
    seq: list[tuple[int, int]] = []
    while len(live) > 1:
        free: list[tuple[int, int]] = []
        for f in live:
            cof = [g for g in live if g != f and g & f == f]
            if len(cof) == 1:
                free.append((f, cof[0]))
        if not free:
            return None
        free.sort(key=lambda p: (word_key(p[0]), word_key(p[1])))
        f, g = free[rng.randrange(len(free))]
        live.discard(f)
        live.discard(g)
        seq.append((f, g))
    (last,) = live
    if last.bit_count() != 1:
        return None
    return tuple(seq)


def replay_collapse(K: SimplicialComplex, seq: Iterable[tuple[int, int]]) -> bool:
    """Check that a collapse sequence is valid and ends in a single vertex."""
    live = {f for f in K.faces() if f != 0}
    for f, g in seq:
        if f not in live or g not in live:
            return False
        cof = [h for h in live if h != f and h & f == f]
        if cof != [g]:
            return False
        live.discard(f)
        live.discard(g)
    return len(live) == 1 and next(iter(live)).bit_count() == 1


def contractibility(
    K: SimplicialComplex,
    restarts: int = COLLAPSE_RESTARTS,
    seed: int = 0,
) -> Verdict:
    """Decide contractibility where a certificate is available.

    Checks, in order: cone apex, non-zero reduced Betti number, greedy
    free-face collapses with seeded random restarts.
    """
    if not K.facets:
        raise ValueError("contractibility of the void complex is undefined")
    apex = cone_apex(K)
    if apex is not None:
        return Contractible(apex=apex)
    profile = reduced_betti(K)
    if profile.minus_one:
        return NotContractible(degree=-1, betti=profile.minus_one)
    for d, b in enumerate(profile.reduced):
        if b:
            return NotContractible(degree=d, betti=b)
    faces = {f for f in K.faces() if f != 0}
    for attempt in range(restarts):
        rng = random.Random((seed << 16) + attempt)
        seq = _try_collapse(faces, rng)
        if seq is not None:
            return Contractible(collapse_sequence=seq)
    return Unknown(restarts=restarts)


# ---------------------------------------------------------------------------
# obstructions


@dataclass(frozen=True)
class LocalObstruction:
    """A simplicial violator whose link complex is certified non-contractible."""

    sigma: int
    verdict: NotContractible
    link_facets: frozenset[int]


@dataclass(frozen=True)
class NonlocalObstruction:
    """Two covering subsets whose restricted complexes have different homology."""

    sigma1: int
    sigma2: int
    profile1: BettiProfile
    profile2: BettiProfile


@dataclass(frozen=True)
class LocalScan:
    found: tuple[LocalObstruction, ...]
    undecided: tuple[int, ...]  # violators where contractibility came back Unknown

    def certifies_no_local_obstruction(self) -> bool:
        return not self.found and not self.undecided


def local_obstructions(
    code: Code,
    restarts: int = COLLAPSE_RESTARTS,
    seed: int = 0,
) -> LocalScan:
    """Scan every non-empty simplicial violator for a local obstruction."""
    found: list[LocalObstruction] = []
    undecided: list[int] = []
    for sigma in sorted(simplicial_violators(code), key=word_key):
        if sigma == 0:
            continue
        link_cx = simplicial_complex(link(code, sigma))
        verdict = contractibility(link_cx, restarts=restarts, seed=seed)
        if isinstance(verdict, NotContractible):
            found.append(LocalObstruction(sigma, verdict, link_cx.facets))
        elif isinstance(verdict, Unknown):
            undecided.append(sigma)
    return LocalScan(tuple(found), tuple(undecided))


def minimal_covering_sets(code: Code) -> list[int]:
    """Inclusion-minimal subsets meeting every codeword (minimal hitting sets)."""
    if 0 in code.words or not code.words:
        return []
    words = sorted(code.words, key=word_key)
    minimal: list[int] = []

    def dominated(s: int) -> bool:
        return any(m & s == m for m in minimal)

    def branch(s: int, remaining: list[int]) -> None:
        if dominated(s):
            return
        uncovered = [w for w in remaining if not w & s]
        if not uncovered:
            minimal.append(s)
            return
        w = uncovered[0]
        for i in word_neurons(w):
            branch(s | (1 << (i - 1)), uncovered[1:])

    branch(0, words)
    # branching can emit non-minimal sets; prune to the true minima
    minimal.sort(key=word_key)
    pruned: list[int] = []
    for s in minimal:
        if not any(m != s and m & s == m for m in pruned):
            pruned.append(s)
    return pruned


def covering_sets(code: Code, limit: int | None = None) -> list[int]:
    """Covering subsets in canonical size order, grown from the minimal ones.

    Every covering set is a superset of a minimal one, so size level s is
    the minima of size s plus all one-element extensions of level s-1.
    """
    minima = minimal_covering_sets(code)
    if not minima:
        return []
    full = (1 << code.n) - 1
    by_size: dict[int, set[int]] = {}
    for m in minima:
        by_size.setdefault(m.bit_count(), set()).add(m)
    out: list[int] = []
    prev: set[int] = set()
    for size in range(min(by_size), code.n + 1):
        level = set(by_size.get(size, ()))
        for s in prev:
            rest = full & ~s
            for i in word_neurons(rest):
                level.add(s | (1 << (i - 1)))
        out.extend(sorted(level, key=word_key))
        if limit is not None and len(out) >= limit:
            break
        prev = level
    if limit is not None:
        out = out[:limit]
    return out


def nonlocal_obstructions(
    code: Code,
    max_pair_budget: int = 2000,
) -> tuple[NonlocalObstruction, ...]:
    """Search pairs of covering subsets for a homology mismatch.

    Pairs are examined in order of increasing total size, up to the budget.
    A Betti-profile inequality between the restricted complexes is a sound
    witness that they are not homotopy equivalent.
    """
    if 0 in code.words or not code.words:
        return ()
    # enough covering sets that the budgeted pair scan cannot starve
    cap = max(64, int((2 * max_pair_budget) ** 0.5) + 2)
    cands = covering_sets(code, limit=cap)
    profiles: dict[int, BettiProfile] = {}

    def profile(sigma: int) -> BettiProfile:
        if sigma not in profiles:
            profiles[sigma] = reduced_betti(simplicial_complex(restrict(code, sigma)))
        return profiles[sigma]

    pairs = [
        (cands[i], cands[j])
        for i in range(len(cands))
        for j in range(i + 1, len(cands))
    ]
    pairs.sort(
        key=lambda p: (
            p[0].bit_count() + p[1].bit_count(),
            word_key(p[0]),
            word_key(p[1]),
        )
    )
    found: list[NonlocalObstruction] = []
    for s1, s2 in pairs[:max_pair_budget]:
        p1, p2 = profile(s1), profile(s2)
        if p1 != p2:
            found.append(NonlocalObstruction(s1, s2, p1, p2))
    return tuple(found)


def survey_nonlocal_vs_local(
    codes: Iterable[Code],
    max_pair_budget: int = 500,
) -> list[dict]:
    """Report, never assert: does a non-local obstruction come with a local one?

    One row per code that has a non-local obstruction.  Consumers must treat
    the rows as observations only.
    """
    rows = []
    for c in codes:
        nl = nonlocal_obstructions(c, max_pair_budget=max_pair_budget)
        if not nl:
            continue
        scan = local_obstructions(c)
        rows.append(
            {
                "code": tuple(c.sorted_words()),
                "n": c.n,
                "nonlocal_pairs": len(nl),
                "has_local": bool(scan.found),
                "undecided_links": len(scan.undecided),
            }
        )
    return rows
