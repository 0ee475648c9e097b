"""Brute-force cross-checks for the core machinery.

Nothing here uses the folding code: subgroup balls come from multiplying
out generators, finite covers from Todd-Coxeter coset enumeration, and
normal-closure elements from random products of conjugates.
"""
from __future__ import annotations

import bisect
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import CoreComplex, member_codes
from .words import FreeProduct, format_word

RNG_ALGORITHM = "numpy PCG64, per-chunk streams from SeedSequence(seed).spawn"
CHUNK = 500


# -- positive membership ----------------------------------------------------


@dataclass(frozen=True)
class BallEnumeration:
    radius: int
    elements: frozenset


def enumerate_ball(P: FreeProduct, gens, k: int) -> BallEnumeration:
    """Reduced forms of all products of at most ``k`` generators and inverses."""
    letters = []
    for w in gens:
        r = P.reduce(w)
        letters.extend([r, P.invert(r)])
    elements = {()}
    frontier = {()}
    for _ in range(k):
        nxt = set()
        for u in frontier:
            for s in letters:
                v = P.concat_reduce(u, s)
                if v not in elements:
                    elements.add(v)
                    nxt.add(v)
        frontier = nxt
    return BallEnumeration(k, frozenset(elements))


def rewrite_random_order(P: FreeProduct, w, rng: random.Random):
    """Reduce ``w`` by applying the elementary rules at random positions."""
    w = list(w)
    while True:
        spots = [i for i in range(len(w) - 1) if w[i].tag == w[i + 1].tag]
        if not spots:
            return tuple(w)
        i = rng.choice(spots)
        x, y = w[i], w[i + 1]
        e = P.factor(x.tag).mul[x.elem][y.elem]
        w[i : i + 2] = [] if e == 0 else [type(x)(x.tag, e)]


# -- coset enumeration ------------------------------------------------------


@dataclass(frozen=True)
class FullCoverSlice:
    status: str  # "complete" | "cap-exceeded"
    table: tuple  # canonical rows of length P.n_codes; identity columns map a coset to itself
    defined: int

    @property
    def index(self):
        return len(self.table) if self.status == "complete" else None


def _relators(P: FreeProduct):
    rels = []
    for G, off in ((P.A, 0), (P.B, P.nA)):
        for x in G.nonidentity:
            for y in G.nonidentity:
                z = G.mul[x][y]
                if z != 0:
                    rels.append([off + x, off + y, off + G.inv[z]])
    return rels


def full_cover_bfs(P: FreeProduct, gens, cap: int = 10000) -> FullCoverSlice:
    """HLT Todd-Coxeter enumeration of the cosets of ``<gens>`` in A*B.

    The presentation has every nonidentity element as a generator and the
    multiplication table as relators. Gives up once more than ``cap``
    cosets have been defined.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    cols = [c for c in range(P.n_codes) if c not in (0, P.nA)]
    inv = P.inv_code
    table = [dict()]
    parent = [0]

    def rep(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c, x):
        d = len(table)
        table.append(dict())
        parent.append(d)
        table[c][x] = d
        table[d][inv[x]] = c

    def merge(k, l, queue):
        k, l = rep(k), rep(l)
        if k != l:
            k, l = min(k, l), max(k, l)
            parent[l] = k
            queue.append(l)

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in cols:
                f = table[e].get(x)
                if f is None:
                    continue
                table[f].pop(inv[x], None)
                e1, f1 = rep(e), rep(f)
                if x in table[e1]:
                    merge(f1, table[e1][x], queue)
                elif inv[x] in table[f1]:
                    merge(e1, table[f1][inv[x]], queue)
                else:
                    table[e1][x] = f1
                    table[f1][inv[x]] = e1

    def scan_and_fill(c, word):
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and word[i] in table[f]:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and inv[word[j]] in table[b]:
                b = table[b][inv[word[j]]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][inv[word[i]]] = f
                return
            define(f, word[i])

    for w in gens:
        codes = P.encode(P.reduce(w))
        if codes:
            scan_and_fill(0, codes)
    rels = _relators(P)
    c = 0
    while c < len(table):
        if len(table) > cap:
            return FullCoverSlice("cap-exceeded", (), len(table))
        if parent[c] == c:
            for r in rels:
                scan_and_fill(c, r)
                if parent[c] != c:
                    break
            if parent[c] == c:
                for x in cols:
                    if x not in table[c]:
                        define(c, x)
        c += 1
    live = [k for k in range(len(table)) if parent[k] == k]
    rows = {k: {x: rep(v) for x, v in table[k].items()} for k in live}
    return FullCoverSlice("complete", canonical_table(P, rows, rep(0)), len(table))


def canonical_table(P: FreeProduct, rows, start):
    """Renumber a complete coset table by BFS from ``start`` over codes in order."""
    order = {start: 0}
    queue = [start]
    for v in queue:
        for x in range(P.n_codes):
            w = rows[v].get(x, v) if x in (0, P.nA) else rows[v][x]
            if w not in order:
                order[w] = len(order)
                queue.append(w)
    out = [None] * len(order)
    for v, i in order.items():
        out[i] = tuple(
            i if x in (0, P.nA) else order[rows[v][x]] for x in range(P.n_codes)
        )
    return tuple(out)


def euler_free_rank(idx: int, order_a: int, order_b: int):
    """Rank of a free subgroup of index ``idx``, from Euler characteristics.

    chi(A*B) = 1/|A| + 1/|B| - 1 and chi(H) = idx * chi(A*B) = 1 - rank(H).
    """
    num = idx * (order_a + order_b - order_a * order_b)
    den = order_a * order_b
    if num % den:
        raise ValueError("index is incompatible with a free subgroup")
    return 1 - num // den


def looks_free_basis(P: FreeProduct, gens, depth: int) -> bool:
    """True when all freely reduced products of ``gens`` up to ``depth`` letters are distinct.

    Necessary for ``gens`` to be a free basis; at small depth it is strong
    evidence that the subgroup is free of rank ``len(gens)``.
    """
    letters = []
    for i, w in enumerate(gens):
        r = P.reduce(w)
        letters.append((i, 1, r))
        letters.append((i, -1, P.invert(r)))
    seen = {(): ()}
    frontier = [((), ())]
    for _ in range(depth):
        nxt = []
        for formal, elem in frontier:
            for i, e, r in letters:
                if formal and formal[-1] == (i, -e):
                    continue
                f2 = formal + ((i, e),)
                g2 = P.concat_reduce(elem, r)
                if g2 in seen:
                    return False
                seen[g2] = f2
                nxt.append((f2, g2))
        frontier = nxt
    return True


# -- normal closure sampling ----------------------------------------------


@dataclass(frozen=True)
class ClosureSample:
    z: tuple
    recipe: tuple  # ((conjugator word, sign), ...)
    seed: int
    index: int


class _ReducedWordSampler:
    """Uniform reduced words of length at most ``max_len``."""

    def __init__(self, P: FreeProduct, max_len: int):
        self.P = P
        na, nb = P.A.order - 1, P.B.order - 1
        choices = [(0, None)]
        weights = [1]
        for L in range(1, max_len + 1):
            for start, (p, q) in (("A", (na, nb)), ("B", (nb, na))):
                choices.append((L, start))
                weights.append(p ** ((L + 1) // 2) * q ** (L // 2))
        self.choices = choices
        total = sum(weights)
        self.cum = list(np.cumsum(weights) / total)

    def draw(self, rng):
        i = bisect.bisect_right(self.cum, rng.random())
        L, start = self.choices[min(i, len(self.choices) - 1)]
        if L == 0:
            return []
        P = self.P
        sizes = (P.A.order - 1, P.B.order - 1) if start == "A" else (P.B.order - 1, P.A.order - 1)
        offsets = (0, P.nA) if start == "A" else (P.nA, 0)
        out = []
        for pos, u in enumerate(rng.random(L).tolist()):
            k = pos % 2
            out.append(offsets[k] + 1 + int(u * sizes[k]))
        return out


def _inverse_codes(P, codes):
    inv = P.inv_code
    return [inv[c] for c in reversed(codes)]


def _sample_chunk(P, g_codes, exponent, first, count, max_conj, max_len, seed_seq):
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    sampler = _ReducedWordSampler(P, max_len)
    pos = g_codes * exponent
    neg = _inverse_codes(P, pos)
    out = []
    for i in range(first, first + count):
        k = int(rng.integers(1, max_conj + 1))
        word = []
        recipe = []
        for _ in range(k):
            w = sampler.draw(rng)
            sign = 1 if rng.random() < 0.5 else -1
            word += w + (pos if sign > 0 else neg) + _inverse_codes(P, w)
            recipe.append((w, sign))
        out.append((i, P.reduce_codes(word), recipe))
    return out


def _chunks(samples, seed):
    n = (samples + CHUNK - 1) // CHUNK
    children = np.random.SeedSequence(seed).spawn(n)
    return [(c * CHUNK, min(CHUNK, samples - c * CHUNK), children[c]) for c in range(n)]


def sample_closure(P: FreeProduct, g, samples, max_conjugates, max_conjugator_len, seed, exponent=6):
    """Random elements of the normal closure of ``g**exponent``.

    Each is the reduced product of ``k <= max_conjugates`` (uniform) conjugates
    ``w g^(+-exponent) w^-1`` with ``w`` uniform among reduced words of length
    at most ``max_conjugator_len``. Deterministic given ``seed``.
    """
    g_codes = P.encode(g)
    for first, count, ss in _chunks(samples, seed):
        for i, z, recipe in _sample_chunk(P, g_codes, exponent, first, count, max_conjugates, max_conjugator_len, ss):
            yield ClosureSample(
                P.decode(z), tuple((P.decode(w), s) for w, s in recipe), seed, i
            )


def evaluate_recipe(P: FreeProduct, g, recipe, exponent=6):
    gp = P.power(P.reduce(g), exponent)
    out = ()
    for w, s in recipe:
        out = P.multiply(out, w, gp if s > 0 else P.invert(gp), P.invert(w))
    return out


# -- spelling ---------------------------------------------------------------


@dataclass(frozen=True)
class SpellingReport:
    passed: bool
    needed: int
    rotation: int = -1


def _windows(seq, L):
    doubled = list(seq) + list(seq)
    return {tuple(doubled[i : i + L]) for i in range(len(seq))}


def spelling_factors(P: FreeProduct, g, exponent=6):
    """Length ``3*len(g) - 1`` factors of cyclic conjugates of ``g**(+-exponent)``."""
    L = 3 * len(g) - 1
    pos = P.encode(g) * exponent
    return L, _windows(pos, L) | _windows(_inverse_codes(P, pos), L)


def spelling_check(P: FreeProduct, z, g, factors=None) -> SpellingReport:
    """Does some cyclic conjugate of ``z`` share a factor of length ``3*len(g)-1``
    with a cyclic conjugate of ``g**6`` or ``g**-6``?

    ``z`` must be nonempty and cyclically reduced.
    """
    L, pieces = factors if factors is not None else spelling_factors(P, g)
    codes = P.encode(z)
    n = len(codes)
    if n < L:
        return SpellingReport(False, L)
    doubled = codes + codes
    for i in range(n):
        if tuple(doubled[i : i + L]) in pieces:
            return SpellingReport(True, L, i)
    return SpellingReport(False, L)


# -- soak -------------------------------------------------------------------


def _soak_chunk(args):
    core_json, g, exponent, first, count, max_conj, max_len, ss, spelling = args
    C = CoreComplex.from_json(core_json, check_minimal=False)
    return _soak_chunk_local(C, g, exponent, first, count, max_conj, max_len, ss, spelling)


def _soak_chunk_local(C, g, exponent, first, count, max_conj, max_len, ss, spelling):
    P = C.product
    factors = spelling_factors(P, g, exponent)
    rows = []
    for i, z, recipe in _sample_chunk(P, P.encode(g), exponent, first, count, max_conj, max_len, ss):
        if not z:
            continue
        violation = member_codes(C, z)
        spelled = None
        if spelling:
            _, core_z = P.cyclically_reduce(P.decode(z))
            spelled = spelling_check(P, core_z, g, factors).passed
        if violation or spelled is False:
            rows.append((i, violation, spelled, recipe, z))
        else:
            rows.append((i, False, True, None, None))
    return rows


def soak(C: CoreComplex, g, samples, max_conjugates, max_conjugator_len, seed, spelling=True, exponent=6, jobs=1):
    """Sample the normal closure of ``g**exponent`` and test each element against ``C``.

    Returns a JSON-ready report. ``violations`` counts nontrivial samples
    that lie in the subgroup; spelling failures are listed as warnings.
    """
    P = C.product
    tasks = [
        (first, count, ss) for first, count, ss in _chunks(samples, seed)
    ]
    if jobs > 1 and len(tasks) > 1:
        text = C.to_json()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(
                pool.map(
                    _soak_chunk,
                    [(text, g, exponent, f, c, max_conjugates, max_conjugator_len, ss, spelling) for f, c, ss in tasks],
                )
            )
    else:
        parts = [
            _soak_chunk_local(C, g, exponent, f, c, max_conjugates, max_conjugator_len, ss, spelling)
            for f, c, ss in tasks
        ]
    rows = sorted((r for part in parts for r in part), key=lambda r: r[0])
    violations = []
    warnings = []
    for i, bad, spelled, recipe, z in rows:
        if recipe is None:
            continue
        entry = {
            "sample": i,
            "z": format_word(P.decode(z)),
            "recipe": [[format_word(P.decode(w)), s] for w, s in recipe],
        }
        if bad:
            violations.append(entry)
        if spelled is False:
            warnings.append(entry)
    report = {
        "samples": samples,
        "nontrivial": len(rows),
        "violations": len(violations),
        "violation_recipes": violations,
    }
    if spelling:
        report["spelling_checked"] = len(rows)
        report["spelling_passed"] = len(rows) - len(warnings)
        report["spelling_warnings"] = warnings
    report["seed"] = seed
    report["rng"] = RNG_ALGORITHM
    return report
