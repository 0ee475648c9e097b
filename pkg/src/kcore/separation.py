"""Separating normal subgroups for infinite-index subgroups, and
nontrivial intersections with normal closures for finite-index ones.

For an infinite-index subgroup ``H`` the procedure is: move the base point
to a vertex with a missing edge, grow a word whose monodromy rank drops at
every step until no vertex of the core can read it, and close it up into a
cyclically reduced word ``g``. The normal closure of ``g**6`` then meets
``H`` trivially.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .core import (
    CoreComplex,
    index,
    is_complete,
    member,
    rebase,
    reduced_path,
    trans,
)
from .errors import FiniteIndexError, InfiniteIndexError, InputError
from .monodromy import monodromy, rank
from .words import Syllable, is_cyclically_reduced

EXPONENT = 6


@dataclass(frozen=True)
class SeparationWitness:
    g: tuple
    exponent: int
    descent_trace: tuple  # ((word, rank), ...)
    rebase_conjugator: tuple
    missing: Syllable = None
    situated_core: CoreComplex = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class IntersectionWitness:
    h: tuple
    expression: tuple  # ((conjugator, sign), ...)
    z: tuple
    power: int


def boundary_vertices(C: CoreComplex):
    """``(v, x)`` for every vertex ``v`` and syllable ``x`` with ``v*x`` outside the core."""
    P = C.product
    return [
        (v, s)
        for v in range(C.vertex_count)
        for s in P.syllables()
        if trans(C, v, s) is None
    ]


def well_situate(C: CoreComplex):
    """Conjugate so the base has a missing edge.

    Returns ``(C2, u)`` where ``C2`` is the core of ``u H u^-1`` and ``u`` labels
    a reduced path in ``C`` from the new base to the old one.
    """
    boundary = boundary_vertices(C)
    if not boundary:
        raise FiniteIndexError("finite index: no separating normal subgroup exists")
    if any(v == C.base for v, _ in boundary):
        return C, ()
    v = boundary[0][0]
    u = reduced_path(C, v, C.base)
    return rebase(C, v), u


def find_rank_zero(C: CoreComplex) -> SeparationWitness:
    """Cyclically reduced ``g`` with ``rank(g) = 0`` on a well-situated core."""
    if is_complete(C):
        raise FiniteIndexError("finite index: every word has rank equal to the index")
    P = C.product
    missing = [s for s in P.syllables() if trans(C, C.base, s) is None]
    if not missing:
        raise InputError("core is not well situated: no missing edge at the base")
    x0 = missing[0]
    opp = P.other(x0.tag)
    o = Syllable(opp, 1)

    g = (o,)
    r = rank(C, g)
    trace = [(g, r)]
    while r > 0:
        rho = monodromy(C, g)
        v, end = rho.pairs[0]
        if end == C.base:
            ext = (x0,)
        else:
            q = reduced_path(C, end, C.base, first_tag=x0.tag)
            assert q is not None, "every non-base core vertex has reduced paths home starting in either factor"
            ext = P.reduce(q + (x0,))
        g = P.concat_reduce(g, ext)
        if g[-1].tag != opp:
            g = g + (o,)
        new_r = rank(C, g)
        assert new_r < r, "descent must lower the rank"
        r = new_r
        trace.append((g, r))

    # g starts and ends in the opposite factor; one more x0 closes it up
    g = g + (x0,)
    assert is_cyclically_reduced(g) and len(g) >= 2
    assert rank(C, g) == 0
    return SeparationWitness(g, EXPONENT, tuple(trace), (), x0, C)


def separating_witness(C: CoreComplex) -> SeparationWitness:
    C2, u = well_situate(C)
    w = find_rank_zero(C2)
    return SeparationWitness(w.g, w.exponent, w.descent_trace, u, w.missing, C2)


def evaluate_expression(P, x, expression):
    """Reduced product of ``c x^s c^-1`` over ``expression``."""
    out = ()
    xr = P.reduce(x)
    xi = P.invert(xr)
    for c, sign in expression:
        out = P.multiply(out, c, xr if sign > 0 else xi, P.invert(c))
    return out


def intersection_witness(C: CoreComplex, x) -> IntersectionWitness:
    """A nontrivial element of ``H`` inside the normal closure of ``x``.

    ``z`` is ``x`` itself when it is cyclically reduced of length >= 2, and
    otherwise ``t x t^-1 x`` for the first syllable ``t`` that makes it so.
    Some power ``z**k`` acts trivially on the (complete) core and so lies in
    ``H``; ``z`` has infinite order, so ``z**k`` is not the identity.
    """
    if not is_complete(C):
        raise InfiniteIndexError("index infinite: the core is not complete")
    P = C.product
    xr = P.reduce(x)
    if not xr:
        raise InputError("x reduces to the identity")
    if is_cyclically_reduced(xr) and len(xr) >= 2:
        z, unit = xr, (((), 1),)
    else:
        for t in P.syllables():
            z = P.multiply((t,), xr, P.invert((t,)), xr)
            if is_cyclically_reduced(z) and len(z) >= 2:
                unit = (((t,), 1), ((), 1))
                break
        else:  # pragma: no cover - some syllable of the other factor always works
            raise AssertionError("no syllable conjugator makes z cyclically reduced")
    perm = dict(monodromy(C, z).pairs)
    assert len(perm) == index(C)
    k = 1
    seen = set()
    for v in perm:
        if v in seen:
            continue
        n, w = 0, v
        while True:
            seen.add(w)
            w = perm[w]
            n += 1
            if w == v:
                break
        k = lcm(k, n)
    h = z * k
    assert h and member(C, h)
    return IntersectionWitness(h, unit * k, z, k)
