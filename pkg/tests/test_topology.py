import random

import pytest
from hypothesis import given, settings, strategies as st

from convexcodes import (
    Code,
    Contractible,
    NotContractible,
    SimplicialComplex,
    cone_complex,
    contractibility,
    covering_sets,
    link,
    local_obstructions,
    nonlocal_obstructions,
    reduced_betti,
    replay_collapse,
    simplicial_complex,
    survey_nonlocal_vs_local,
    word_mask,
)
from oracles import brute_covering_sets


def cx(n, *faces):
    return SimplicialComplex(n, frozenset(word_mask(f) for f in faces))


# ---------------------------------------------------------------------------
# homology


def test_hollow_triangle():
    assert reduced_betti(cx(3, [1, 2], [1, 3], [2, 3])).reduced == (0, 1)


def test_full_simplex():
    assert reduced_betti(cx(3, [1, 2, 3])).is_zero()


def test_two_isolated_vertices():
    p = reduced_betti(cx(4, [3], [4]))
    assert p.reduced == (1,)
    assert p.minus_one == 0


def test_tetrahedron_boundary():
    p = reduced_betti(cx(4, [1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]))
    assert p.reduced == (0, 0, 1)


def test_empty_face_complex():
    p = reduced_betti(SimplicialComplex(3, frozenset({0})))
    assert p.minus_one == 1 and p.reduced == ()


def test_void_complex():
    p = reduced_betti(SimplicialComplex(3, frozenset()))
    assert p.is_zero()


def test_two_triangles_sharing_an_edge():
    assert reduced_betti(cx(4, [1, 2, 3], [1, 2, 4])).is_zero()


# ---------------------------------------------------------------------------
# contractibility


def test_cone_detected():
    v = contractibility(cx(3, [1, 2, 3]))
    assert isinstance(v, Contractible) and v.apex == 1


def test_disconnected_not_contractible():
    v = contractibility(cx(4, [3], [4]))
    assert isinstance(v, NotContractible)
    assert v.degree == 0 and v.betti == 1


def test_link_complex_of_two_triangle_code():
    c = Code.from_compact(4, "0 1 2 3 4 123 124")
    k = simplicial_complex(link(c, word_mask([1, 2])))
    v = contractibility(k)
    assert isinstance(v, NotContractible)


def test_collapse_certificate_replays():
    # a path of three edges has no cone apex but collapses to a point
    k = cx(4, [1, 2], [2, 3], [3, 4])
    v = contractibility(k)
    assert isinstance(v, Contractible)
    if v.collapse_sequence is not None:
        assert replay_collapse(k, v.collapse_sequence)


def test_collapse_needed_for_path_complex():
    # facets {23, 26, 56}: path 3-2-6-5, no common vertex
    k = cx(6, [2, 3], [2, 6], [5, 6])
    v = contractibility(k)
    assert isinstance(v, Contractible)
    assert v.collapse_sequence is not None
    assert replay_collapse(k, v.collapse_sequence)


def test_contractibility_rejects_void():
    with pytest.raises(ValueError):
        contractibility(SimplicialComplex(2, frozenset()))


def test_empty_face_complex_not_contractible():
    v = contractibility(SimplicialComplex(2, frozenset({0})))
    assert isinstance(v, NotContractible) and v.degree == -1


@st.composite
def complexes(draw, max_n=5):
    n = draw(st.integers(2, max_n))
    words = draw(st.sets(st.integers(1, (1 << n) - 1), min_size=1, max_size=5))
    return simplicial_complex(Code(n, frozenset(words)))


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_cone_law(k):
    apex = k.n + 1
    if apex > 16:
        return
    v = contractibility(cone_complex(k, apex))
    assert isinstance(v, Contractible)


@settings(max_examples=60, deadline=None)
@given(complexes(max_n=4))
def test_verdict_certificates_sound(k):
    v = contractibility(k)
    if isinstance(v, Contractible):
        if v.apex is not None:
            bit = 1 << (v.apex - 1)
            assert all(f & bit for f in k.facets)
        if v.collapse_sequence is not None:
            assert replay_collapse(k, v.collapse_sequence)
        assert reduced_betti(k).is_zero()
    elif isinstance(v, NotContractible):
        p = reduced_betti(k)
        if v.degree == -1:
            assert p.minus_one == v.betti != 0
        else:
            assert p.reduced[v.degree] == v.betti != 0


# ---------------------------------------------------------------------------
# local obstructions


def test_local_obstruction_disconnected_link_code():
    scan = local_obstructions(Code.from_compact(3, "0 1 2 13 23"))
    assert [o.sigma for o in scan.found] == [word_mask([3])]
    assert not scan.undecided
    (obs,) = scan.found
    assert obs.link_facets == {word_mask([1]), word_mask([2])}


def test_local_obstruction_two_triangle_code():
    scan = local_obstructions(Code.from_compact(4, "0 1 2 3 4 123 124"))
    assert [o.sigma for o in scan.found] == [word_mask([1, 2])]
    assert not scan.undecided


def test_local_obstruction_among_nonlocal_code():
    scan = local_obstructions(Code.from_compact(4, "23 14 123"))
    assert [o.sigma for o in scan.found] == [word_mask([1])]
    assert not scan.undecided


def test_no_local_obstruction_six_neuron_code():
    c = Code.from_compact(6, "123 126 156 456 345 234 12 16 56 45 34 23 0")
    scan = local_obstructions(c)
    assert not scan.found and not scan.undecided


def test_no_local_obstruction_five_neuron_code():
    c = Code.from_compact(5, "2345 124 135 145 14 15 24 35 45 4 5")
    scan = local_obstructions(c)
    assert not scan.found and not scan.undecided


# ---------------------------------------------------------------------------
# covering sets and non-local obstructions


def test_covering_sets_against_oracle():
    c = Code.from_compact(4, "23 14 123")
    got = covering_sets(c)
    assert set(got) == brute_covering_sets(c.words, 4)
    # canonical order: sizes never decrease
    sizes = [s.bit_count() for s in got]
    assert sizes == sorted(sizes)


def test_covering_sets_empty_word():
    assert covering_sets(Code.from_compact(3, "0 1 12")) == []


def test_nonlocal_obstruction_fixture():
    got = nonlocal_obstructions(Code.from_compact(4, "23 14 123"))
    pairs = {(o.sigma1, o.sigma2) for o in got}
    key = (word_mask([1, 2]), word_mask([3, 4]))
    assert key in pairs
    obs = next(o for o in got if (o.sigma1, o.sigma2) == key)
    assert obs.profile1.is_zero()
    assert obs.profile2.reduced == (1,)


def test_nonlocal_empty_word_trivial():
    assert nonlocal_obstructions(Code.from_compact(3, "0 12 13")) == ()


def test_nonlocal_six_neuron_code_empty():
    c = Code.from_compact(6, "123 126 156 456 345 234 12 16 56 45 34 23 0")
    assert nonlocal_obstructions(c, max_pair_budget=10_000) == ()


def test_nonlocal_budget_limits_work():
    c = Code.from_compact(4, "23 14 123")
    assert nonlocal_obstructions(c, max_pair_budget=0) == ()


def test_survey_reports_but_never_asserts():
    rng = random.Random(99)
    codes = []
    for _ in range(40):
        n = rng.randint(3, 5)
        words = {rng.randrange(1, 1 << n) for _ in range(rng.randint(1, 6))}
        codes.append(Code(n, frozenset(words)))
    rows = survey_nonlocal_vs_local(codes, max_pair_budget=200)
    for row in rows:
        assert set(row) == {"code", "n", "nonlocal_pairs", "has_local", "undecided_links"}
        assert row["nonlocal_pairs"] > 0
