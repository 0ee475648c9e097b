"""Core complexes of subgroups of A*B.

A core is stored as its vertices plus, for each factor, a partition of the
vertices into components. A component of factor ``F`` with stabilizer ``S``
sits inside the coset space ``S\\F``: each member vertex is a right coset
``S*c`` (``c`` its coordinate) and an ``F``-edge labelled ``x`` runs from the
vertex at ``S*c`` to the vertex at ``S*c*x`` whenever that coset is occupied.
Edges and triangles of the ambient cover between core vertices are therefore
implicit in the coset arithmetic.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from . import kernels
from .errors import InputError
from .groups import (
    FactorGroup,
    Subgroup,
    canonical_coset_rep,
    conjugate_subgroup,
    coset_count,
    is_subgroup,
    subgroup_closure,
)
from .words import FreeProduct, Syllable

TAGS = ("A", "B")


@dataclass(frozen=True)
class FactorComponent:
    tag: str
    stabilizer: Subgroup
    coord_of: dict
    occupied: dict

    @property
    def members(self):
        return sorted(self.coord_of)

    def is_complete(self, G: FactorGroup):
        return len(self.occupied) == coset_count(G, self.stabilizer)


class CoreComplex:
    """A finished core complex. Treat instances as immutable."""

    def __init__(self, product: FreeProduct, base: int, vertex_count: int, components: dict):
        self.product = product
        self.base = base
        self.vertex_count = vertex_count
        self.components = {t: tuple(components[t]) for t in TAGS}
        self.component_of = {}
        for t in TAGS:
            owner = [-1] * vertex_count
            for i, comp in enumerate(self.components[t]):
                for v in comp.coord_of:
                    if owner[v] != -1:
                        raise InputError(f"vertex {v} lies in two {t}-components")
                    owner[v] = i
            if -1 in owner:
                raise InputError(f"vertex {owner.index(-1)} lies in no {t}-component")
            self.component_of[t] = tuple(owner)
        self.table = _transition_table(product, vertex_count, self.components, self.component_of)
        self._ktable = kernels.prepare_table(self.table)

    @property
    def A(self):
        return self.product.A

    @property
    def B(self):
        return self.product.B

    def component(self, tag, v) -> FactorComponent:
        return self.components[tag][self.component_of[tag][v]]

    def __eq__(self, other):
        return isinstance(other, CoreComplex) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return f"CoreComplex(vertices={self.vertex_count}, base={self.base})"

    # -- serialization -----------------------------------------------------

    def to_dict(self):
        out = {"base": self.base, "vertices": self.vertex_count}
        for t in TAGS:
            out[f"{t}_components"] = [
                {
                    "stabilizer": list(c.stabilizer.elements),
                    "members": {str(v): str(c.coord_of[v]) for v in c.members},
                }
                for c in self.components[t]
            ]
        out["groups"] = {"A": self.A.spec, "B": self.B.spec}
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data, check_minimal=True):
        try:
            P = FreeProduct(
                FactorGroup.from_spec("A", data["groups"]["A"]),
                FactorGroup.from_spec("B", data["groups"]["B"]),
            )
            base = data["base"]
            m = data["vertices"]
            raw = {}
            for t in TAGS:
                G = P.factor(t)
                comps = []
                for c in data[f"{t}_components"]:
                    stab = sorted(c["stabilizer"])
                    if not is_subgroup(G, stab):
                        raise InputError(f"{t}-component stabilizer {stab} is not a subgroup")
                    S = Subgroup(t, tuple(stab))
                    coords = {int(v): int(x) for v, x in c["members"].items()}
                    for v, x in coords.items():
                        if not 0 <= v < m:
                            raise InputError(f"vertex {v} out of range")
                        if canonical_coset_rep(G, S, x) != x:
                            raise InputError(f"coordinate {x} of vertex {v} is not a canonical coset representative")
                    comps.append((S, coords))
                raw[t] = comps
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed core file: {exc!r}") from exc
        if not (isinstance(base, int) and 0 <= base < m):
            raise InputError(f"base {base!r} is not a vertex")
        C = canonicalize(P, base, range(m), raw)
        if check_minimal and prune_to_span(C) != C:
            raise InputError("core is not minimal: some vertex lies on no reduced loop at the base")
        return C

    @classmethod
    def from_json(cls, text, check_minimal=True):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"core file is not valid JSON: {exc}") from exc
        return cls.from_dict(data, check_minimal=check_minimal)


def _transition_table(P, m, components, component_of):
    table = []
    for v in range(m):
        row = [-1] * P.n_codes
        for t, off in (("A", 0), ("B", P.nA)):
            G = P.factor(t)
            comp = components[t][component_of[t][v]]
            c = comp.coord_of[v]
            row[off] = v
            for x in G.nonidentity:
                row[off + x] = comp.occupied.get(canonical_coset_rep(G, comp.stabilizer, G.mul[c][x]), -1)
        table.append(row)
    return table


def canonicalize(P: FreeProduct, base, vertices, raw) -> CoreComplex:
    """Build a canonical ``CoreComplex`` from loose component data.

    ``raw[tag]`` is a list of ``(stabilizer, {vertex: coord})``; vertex ids
    are arbitrary hashables and coordinates any coset members. Vertices are
    renumbered by BFS from ``base`` (factor A before B, elements in index
    order), components ordered by smallest member, and each component is
    re-rooted so its smallest member has coordinate 0.
    """
    vertices = list(vertices)
    where = {t: {} for t in TAGS}
    for t in TAGS:
        G = P.factor(t)
        for i, (S, coords) in enumerate(raw[t]):
            occ = {}
            for v, x in coords.items():
                r = canonical_coset_rep(G, S, x)
                if r in occ:
                    raise InputError(f"vertices {occ[r]} and {v} occupy the same {t}-coset")
                occ[r] = v
                where[t][v] = (i, r)
        missing = [v for v in vertices if v not in where[t]]
        if missing:
            raise InputError(f"vertex {missing[0]} lies in no {t}-component")

    occupied = {t: [{} for _ in raw[t]] for t in TAGS}
    for t in TAGS:
        for v, (i, r) in where[t].items():
            occupied[t][i][r] = v

    def step(v, t, x):
        G = P.factor(t)
        i, c = where[t][v]
        S = raw[t][i][0]
        return occupied[t][i].get(canonical_coset_rep(G, S, G.mul[c][x]))

    new_id = {base: 0}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for s in P.syllables():
            w = step(v, s.tag, s.elem)
            if w is not None and w not in new_id:
                new_id[w] = len(new_id)
                queue.append(w)
    if len(new_id) != len(vertices):
        raise InputError("complex is not connected")

    comps = {}
    for t in TAGS:
        G = P.factor(t)
        out = []
        for S, coords in raw[t]:
            members = sorted((new_id[v], x) for v, x in coords.items())
            if not members:
                continue
            c_root = members[0][1]
            S2 = conjugate_subgroup(G, S, c_root)
            ci = G.inv[c_root]
            coord_of = {v: canonical_coset_rep(G, S2, G.mul[ci][x]) for v, x in members}
            out.append((members[0][0], S2, coord_of))
        out.sort(key=lambda item: item[0])
        comps[t] = [
            FactorComponent(t, S2, coord_of, {x: v for v, x in coord_of.items()})
            for _, S2, coord_of in out
        ]
    return CoreComplex(P, 0, len(vertices), comps)


# -- queries ----------------------------------------------------------------


def trans(C: CoreComplex, v: int, x: Syllable):
    """Endpoint of the ``x``-edge out of ``v`` inside the core, or ``None``."""
    off = 0 if x.tag == "A" else C.product.nA
    w = C.table[v][off + x.elem]
    return None if w < 0 else w


def lift(C: CoreComplex, v: int, w):
    """Follow reduced word ``w`` from ``v``; return the defined prefix path and whether it is all of ``w``."""
    path = [v]
    for x in w:
        nxt = trans(C, path[-1], x)
        if nxt is None:
            return path, False
        path.append(nxt)
    return path, True


def member(C: CoreComplex, w) -> bool:
    P = C.product
    codes = P.reduce_codes(P.encode(w))
    return kernels.walk(C._ktable, C.base, codes) == C.base


def member_codes(C: CoreComplex, reduced_codes) -> bool:
    return kernels.walk(C._ktable, C.base, reduced_codes) == C.base


def is_complete(C: CoreComplex) -> bool:
    return all(
        comp.is_complete(C.product.factor(t)) for t in TAGS for comp in C.components[t]
    )


def index(C: CoreComplex):
    """``[G:H]`` as an int, or ``None`` for infinite index."""
    return C.vertex_count if is_complete(C) else None


def steps(C: CoreComplex, v, tag):
    """Vertices reachable from ``v`` by one nonidentity ``tag`` syllable."""
    comp = C.component(tag, v)
    out = [w for w in comp.members if w != v]
    if not comp.stabilizer.is_trivial:
        out.append(v)
    return sorted(out)


def _syllable_between(C, v, w, tag):
    """Smallest ``x`` of factor ``tag`` with ``v*x = w`` (both in one component)."""
    G = C.product.factor(tag)
    for x in G.nonidentity:
        if trans(C, v, Syllable(tag, x)) == w:
            return Syllable(tag, x)
    return None


def reduced_path(C: CoreComplex, src, dst, first_tag=None):
    """Label of a shortest reduced path ``src -> dst`` in the core.

    With ``first_tag`` the path must be nonempty and start with a syllable
    of that factor. Returns ``None`` when no such path exists.
    """
    if first_tag is None and src == dst:
        return ()
    starts = [first_tag] if first_tag else list(TAGS)
    parent = {}
    queue = deque()
    for t in starts:
        for w in steps(C, src, t):
            if (w, t) not in parent:
                parent[(w, t)] = ((src, None), t)
                queue.append((w, t))
    while queue:
        state = queue.popleft()
        w, last = state
        if w == dst:
            labels = []
            while state[1] is not None:
                (prev, tag) = parent[state]
                labels.append(_syllable_between(C, prev[0], state[0], tag))
                state = prev
            return tuple(reversed(labels))
        t = "B" if last == "A" else "A"
        for u in steps(C, w, t):
            if (u, t) not in parent:
                parent[(u, t)] = (state, t)
                queue.append((u, t))
    return None


# -- construction -----------------------------------------------------------


class _UnionFind:
    def __init__(self, n=0):
        self.parent = list(range(n))

    def add(self):
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, k):
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _factor_components(P, uf, edges, tag, vertices):
    """One folding pass over the ``tag``-edges.

    Returns ``(components, merged)``: components as ``(stabilizer, coords)``
    and whether any two vertices were identified.
    """
    G = P.factor(tag)
    adj = {v: [] for v in vertices}
    for u, t, x, v in edges:
        if t != tag:
            continue
        ru, rv = uf.find(u), uf.find(v)
        adj[ru].append((x, rv))
        adj[rv].append((G.inv[x], ru))
    coord = {}
    comps = []
    merged = False
    for r0 in sorted(adj):
        if r0 in coord:
            continue
        coord[r0] = 0
        members = [r0]
        stab_gens = set()
        queue = deque([r0])
        while queue:
            u = queue.popleft()
            for x, w in adj[u]:
                c = G.mul[coord[u]][x]
                if w not in coord:
                    coord[w] = c
                    members.append(w)
                    queue.append(w)
                else:
                    # a cycle: u*x and w are the same vertex
                    stab_gens.add(G.mul[c][G.inv[coord[w]]])
        S = subgroup_closure(G, stab_gens)
        by_coset = {}
        for v in members:
            by_coset.setdefault(canonical_coset_rep(G, S, coord[v]), []).append(v)
        for group in by_coset.values():
            for v in group[1:]:
                merged |= uf.union(group[0], v)
        comps.append((S, {v: coord[v] for v in members}))
    return comps, merged


def build_core(A: FactorGroup, B: FactorGroup, gens) -> CoreComplex:
    """Core complex of the subgroup generated by ``gens`` (words over A*B).

    The generators are laid out as loops at the base and folded: within each
    factor component, cycles contribute stabilizer elements and vertices in
    the same coset of the stabilizer are identified, until nothing changes.
    """
    P = gens_product(A, B)
    if not gens:
        raise InputError("at least one generator is required")
    words = []
    for w in gens:
        for s in w:
            P.syllable(s.tag, s.elem)
        r = P.reduce(w)
        if r:
            words.append(r)

    uf = _UnionFind(1)
    edges = []
    for w in words:
        cur = 0
        for i, s in enumerate(w):
            nxt = 0 if i == len(w) - 1 else uf.add()
            edges.append((cur, s.tag, s.elem, nxt))
            cur = nxt

    while True:
        merged = False
        for t in TAGS:
            vertices = sorted({uf.find(v) for v in range(len(uf.parent))})
            _, m = _factor_components(P, uf, edges, t, vertices)
            merged |= m
        if not merged:
            break
    vertices = sorted({uf.find(v) for v in range(len(uf.parent))})
    raw = {t: _factor_components(P, uf, edges, t, vertices)[0] for t in TAGS}
    return canonicalize(P, uf.find(0), vertices, raw)


_PRODUCTS = {}


def gens_product(A, B) -> FreeProduct:
    key = (A, B)
    if key not in _PRODUCTS:
        _PRODUCTS[key] = FreeProduct(A, B)
    return _PRODUCTS[key]


# -- span, pruning, rebasing -----------------------------------------------


def _reachable(C, start):
    """States ``(v, t)``: a nonempty reduced path from ``start`` ends at ``v`` with a ``t``-syllable.

    Paths are reversible, so the same set read backwards gives the states
    from which a reduced path to ``start`` begins with a ``t``-syllable.
    """
    seen = set()
    queue = deque()
    for t in TAGS:
        for w in steps(C, start, t):
            if (w, t) not in seen:
                seen.add((w, t))
                queue.append((w, t))
    while queue:
        v, last = queue.popleft()
        t = "B" if last == "A" else "A"
        for w in steps(C, v, t):
            if (w, t) not in seen:
                seen.add((w, t))
                queue.append((w, t))
    return seen


def span_vertices(C: CoreComplex):
    """Vertices crossed by some reduced loop at the base."""
    states = _reachable(C, C.base)
    keep = {C.base}
    for v in range(C.vertex_count):
        if (v, "A") in states and (v, "B") in states:
            # in along an A-syllable, out along a B-syllable (reverse of a B-ending path)
            keep.add(v)
    return keep


def _restrict(C: CoreComplex, keep, base):
    raw = {}
    for t in TAGS:
        raw[t] = [
            (comp.stabilizer, {v: x for v, x in comp.coord_of.items() if v in keep})
            for comp in C.components[t]
        ]
        raw[t] = [item for item in raw[t] if item[1]]
    return canonicalize(C.product, base, sorted(keep), raw)


def prune_to_span(C: CoreComplex) -> CoreComplex:
    return _restrict(C, span_vertices(C), C.base)


def rebase(C: CoreComplex, v: int) -> CoreComplex:
    """Core of the conjugate subgroup seen from vertex ``v``."""
    if not 0 <= v < C.vertex_count:
        raise InputError(f"vertex {v} out of range")
    moved = _restrict(C, set(range(C.vertex_count)), v)
    return prune_to_span(moved)


def trivial_core(A, B) -> CoreComplex:
    P = gens_product(A, B)
    raw = {t: [(Subgroup(t, (0,)), {0: 0})] for t in TAGS}
    return canonicalize(P, 0, [0], raw)
