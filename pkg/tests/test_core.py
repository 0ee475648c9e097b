import random

import pytest

from kcore.core import (
    CoreComplex,
    build_core,
    canonicalize,
    index,
    is_complete,
    lift,
    member,
    prune_to_span,
    rebase,
    reduced_path,
    span_vertices,
    trans,
    trivial_core,
)
from kcore.errors import InputError
from kcore.groups import Subgroup
from kcore.oracle import enumerate_ball, full_cover_bfs
from kcore.words import is_reduced

from conftest import (
    FINITE,
    FIXTURES,
    INFINITE,
    Z2A,
    Z3B,
    a,
    b,
    core_of,
    gens_of,
    product_of,
    random_product,
    random_reduced,
)
from core_checks import check_core_invariants


def in_cyclic(P, h, x):
    """Membership in <h> for cyclically reduced h of length >= 2: powers of h are already reduced."""
    x = P.reduce(x)
    n, r = divmod(len(x), len(h))
    return r == 0 and x in (h * n, P.invert(h) * n)


def coset_target(P, h, reps, v, s):
    """Which core vertex is the coset H*rep(v)*s, by brute-force membership in <h>."""
    hits = [i for i, r in enumerate(reps) if in_cyclic(P, h, P.multiply(reps[v], (s,), P.invert(r)))]
    assert len(hits) <= 1
    return hits[0] if hits else None


def test_fixture_M_transitions(M, P23):
    h = (a(1), b(1))
    reps = [(), (a(1),)]
    assert trans(M, 0, a(1)) == 1
    assert trans(M, 0, b(1)) is None
    assert trans(M, 0, b(2)) == 1
    for v in range(2):
        for s in P23.syllables():
            assert trans(M, v, s) == coset_target(P23, h, reps, v, s)


def test_lift_examples(M):
    assert lift(M, 0, ()) == ([0], True)
    assert lift(M, 0, (a(1), b(1))) == ([0, 1, 0], True)
    assert lift(M, 0, (b(1), a(1))) == ([0], False)


def test_build_examples():
    D = core_of("Dinf")
    assert D.vertex_count == 2 and is_complete(D)
    assert full_cover_bfs(product_of("Dinf"), gens_of("Dinf")).index == 2
    M = core_of("M")
    assert M.vertex_count == 2 and trans(M, 0, b(1)) is None
    V = core_of("V")
    assert V.vertex_count == 2
    assert [c.stabilizer.elements for c in V.components["A"]] == [(0, 1), (0, 1)]
    assert all(member(V, g) for g in gens_of("V"))


def test_build_drops_trivial_generators(P23):
    C = build_core(Z2A, Z3B, [P23.parse("a1 a1"), P23.parse("b1 b2")])
    assert C == trivial_core(Z2A, Z3B)
    assert C.vertex_count == 1
    assert [c.stabilizer.elements for t in "AB" for c in C.components[t]] == [(0,), (0,)]
    with pytest.raises(InputError):
        build_core(Z2A, Z3B, [])


def test_index_examples():
    assert (is_complete(core_of("Dinf")), index(core_of("Dinf"))) == (True, 2)
    assert (is_complete(core_of("M")), index(core_of("M"))) == (False, None)
    assert (is_complete(core_of("G")), index(core_of("G"))) == (True, 1)


def test_member_examples(M, P23):
    assert member(M, P23.parse("a1 b1"))
    assert not member(M, P23.parse("b1 a1"))
    assert member(M, P23.parse("a1 b1 a1 b1"))
    ball = enumerate_ball(P23, [P23.parse("a1 b1")], 6)
    assert (b(1), a(1)) not in ball.elements
    assert not in_cyclic(P23, (a(1), b(1)), (b(1), a(1)))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_invariants_of_fixture_cores(name):
    C = core_of(name)
    check_core_invariants(C)
    for g in gens_of(name):
        assert member(C, g)


@pytest.mark.parametrize("name", FINITE)
def test_folding_agrees_with_coset_enumeration(name):
    C = core_of(name)
    cover = full_cover_bfs(product_of(name), gens_of(name))
    assert cover.status == "complete"
    assert cover.index == index(C)
    assert cover.table == tuple(tuple(row) for row in C.table)


@pytest.mark.parametrize("name", INFINITE)
def test_infinite_index_cover_exceeds_cap(name):
    assert index(core_of(name)) is None
    assert full_cover_bfs(product_of(name), gens_of(name), cap=200).status == "cap-exceeded"


def test_core_stable_under_adding_products():
    rng = random.Random(11)
    for name in ("M", "V", "S3Z3", "idx3", "offbase"):
        P, gens = product_of(name), gens_of(name)
        C = core_of(name)
        A, B, _ = FIXTURES[name]
        for _ in range(25):
            s = random_product(P, gens, rng)
            assert build_core(A, B, gens + [s]) == C


def test_membership_closure():
    rng = random.Random(5)
    for name in ("M", "V", "S3Z3", "idx6"):
        P, gens, C = product_of(name), gens_of(name), core_of(name)
        pool = [random_product(P, gens, rng) for _ in range(20)] + [random_reduced(P, rng) for _ in range(20)]
        for u in pool:
            if member(C, u):
                assert member(C, P.invert(u))
                for v in pool:
                    if member(C, v):
                        assert member(C, P.multiply(u, v))


def test_ball_positives_are_members():
    for name in ("M", "V", "S3Z3", "offbase", "idx3"):
        P, gens, C = product_of(name), gens_of(name), core_of(name)
        for w in enumerate_ball(P, gens, 4).elements:
            assert member(C, w)


def test_prune_fixes_built_cores():
    for name in FIXTURES:
        C = core_of(name)
        assert prune_to_span(C) == C
        assert prune_to_span(prune_to_span(C)) == prune_to_span(C)


def test_rebase_M_at_v1(M, P23):
    R = rebase(M, 1)
    assert R.vertex_count == 2
    # the conjugating path v1 -> w0 reads a1, so the conjugate is <a (ab) a^-1> = <ba>
    assert reduced_path(M, 1, 0) == (a(1),)
    conj = P23.multiply((a(1),), P23.parse("a1 b1"), (a(1),))
    assert conj == (b(1), a(1))
    assert build_core(Z2A, Z3B, [conj]) == R
    visited = set()
    for w in enumerate_ball(P23, [conj], 3).elements:
        path, ok = lift(R, R.base, w)
        assert ok and path[-1] == R.base
        visited |= set(path)
    assert visited == {0, 1}
    # missing transitions moved: the new base lacks an a-free b-edge
    assert [s for s in P23.syllables() if trans(R, 0, s) is None] == [b(2)]


def test_rebase_identity_and_completeness():
    for name in FIXTURES:
        C = core_of(name)
        assert rebase(C, C.base) == C
        for v in range(C.vertex_count):
            R = rebase(C, v)
            assert R.vertex_count <= C.vertex_count
            assert is_complete(R) == is_complete(C)
            check_core_invariants(R)
    D = core_of("Dinf")
    assert index(rebase(D, 1)) == 2


def test_prune_removes_pendant_vertex(M, P23):
    # M plus a vertex 2 hanging off the free B-coset; it has no A-edges, so
    # no reduced loop at the base can pass through it.
    raw = {
        "A": [(c.stabilizer, dict(c.coord_of)) for c in M.components["A"]]
        + [(Subgroup("A", (0,)), {2: 0})],
        "B": [(M.components["B"][0].stabilizer, {**M.components["B"][0].coord_of, 2: 1})],
    }
    X = canonicalize(P23, 0, [0, 1, 2], raw)
    assert X.vertex_count == 3
    assert span_vertices(X) == {0, 1}
    assert prune_to_span(X) == M
    with pytest.raises(InputError):
        CoreComplex.from_json(X.to_json())
    assert CoreComplex.from_json(X.to_json(), check_minimal=False) == X


def test_reduced_path_is_reduced_and_correct():
    for name in FIXTURES:
        C = core_of(name)
        for v in range(C.vertex_count):
            for tag in (None, "A", "B"):
                p = reduced_path(C, v, C.base, first_tag=tag)
                if p is None:
                    assert tag is not None and v == C.base
                    continue
                assert is_reduced(p)
                if tag:
                    assert p[0].tag == tag
                path, ok = lift(C, v, p)
                assert ok and path[-1] == C.base


def test_json_round_trip():
    for name in FIXTURES:
        C = core_of(name)
        text = C.to_json()
        C2 = CoreComplex.from_json(text)
        assert C2 == C
        assert C2.to_json() == text


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(base=7),
        lambda d: d["A_components"][0].update(stabilizer=[0, 1, 2]),
        lambda d: d["B_components"][0]["members"].update({"0": "1", "1": "1"}),
        lambda d: d.pop("groups"),
        lambda d: d["A_components"].pop(),
    ],
)
def test_from_json_rejects_bad_cores(mutate):
    d = core_of("M").to_dict()
    mutate(d)
    with pytest.raises(InputError):
        CoreComplex.from_dict(d)
