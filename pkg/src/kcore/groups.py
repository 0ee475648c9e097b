"""Finite factor groups given by multiplication tables.

Elements are the integers ``0 .. order-1`` and ``0`` is always the identity.
Subgroups are stored as sorted tuples of element indices; cosets are right
cosets ``S*x`` named by their smallest element.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .errors import GroupAxiomError, InputError

TAGS = ("A", "B")


@dataclass(frozen=True, eq=False)
class FactorGroup:
    tag: str
    order: int
    mul: tuple
    inv: tuple
    spec: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.tag not in TAGS:
            raise InputError(f"factor tag must be 'A' or 'B', got {self.tag!r}")

    def __eq__(self, other):
        return (
            isinstance(other, FactorGroup)
            and self.tag == other.tag
            and self.mul == other.mul
        )

    def __hash__(self):
        return hash((self.tag, self.mul))

    def __repr__(self):
        kind = self.spec.get("kind", "table")
        return f"FactorGroup({self.tag}, {kind}, order={self.order})"

    @property
    def nonidentity(self):
        return range(1, self.order)

    def check_element(self, x):
        if not (isinstance(x, int) and 0 <= x < self.order):
            raise InputError(
                f"element index {x!r} out of range for factor {self.tag} "
                f"of order {self.order}"
            )
        return x

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_table(cls, tag, table, spec=None):
        table = [list(row) for row in table]
        n = len(table)
        if n < 2:
            raise GroupAxiomError("nontriviality", f"order {n} < 2")
        for i, row in enumerate(table):
            if len(row) != n:
                raise GroupAxiomError("table shape", f"row {i} has length {len(row)}, expected {n}")
            for x in row:
                if not (isinstance(x, int) and 0 <= x < n):
                    raise GroupAxiomError("closure", f"entry {x!r} in row {i} is not an element index")
        for x in range(n):
            if table[0][x] != x or table[x][0] != x:
                raise GroupAxiomError("identity", f"element 0 is not a two-sided identity for {x}")
        for x, y, z in itertools.product(range(n), repeat=3):
            if table[table[x][y]][z] != table[x][table[y][z]]:
                raise GroupAxiomError("associativity", f"({x}*{y})*{z} != {x}*({y}*{z})")
        inv = []
        for x in range(n):
            right = [y for y in range(n) if table[x][y] == 0]
            if len(right) != 1 or table[right[0]][x] != 0:
                raise GroupAxiomError("inverses", f"element {x} has no two-sided inverse")
            inv.append(right[0])
        spec = spec if spec is not None else {"kind": "table", "order": n, "table": table}
        return cls(tag, n, tuple(tuple(r) for r in table), tuple(inv), spec)

    @classmethod
    def cyclic(cls, tag, n):
        if not isinstance(n, int) or n < 2:
            raise GroupAxiomError("nontriviality", f"cyclic order must be an integer >= 2, got {n!r}")
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls.from_table(tag, table, {"kind": "cyclic", "order": n})

    @classmethod
    def symmetric(cls, tag, degree):
        """S_n on permutations listed lexicographically (identity first).

        The product ``p*q`` applies ``p`` first, then ``q``.
        """
        if not isinstance(degree, int) or degree < 2:
            raise GroupAxiomError("nontriviality", f"symmetric degree must be an integer >= 2, got {degree!r}")
        perms = list(itertools.permutations(range(degree)))
        index = {p: i for i, p in enumerate(perms)}
        table = [[index[tuple(q[p[k]] for k in range(degree))] for q in perms] for p in perms]
        return cls.from_table(tag, table, {"kind": "symmetric", "degree": degree})

    @classmethod
    def from_spec(cls, tag, spec):
        if not isinstance(spec, dict) or "kind" not in spec:
            raise InputError(f"group spec for {tag} must be an object with a 'kind' field")
        kind = spec["kind"]
        if kind == "cyclic":
            return cls.cyclic(tag, spec.get("order"))
        if kind == "symmetric":
            return cls.symmetric(tag, spec.get("degree"))
        if kind == "table":
            table = spec.get("table")
            if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
                raise InputError(f"group spec for {tag}: 'table' must be a list of rows")
            if spec.get("order") != len(table):
                raise GroupAxiomError("table shape", f"declared order {spec.get('order')!r} != {len(table)} rows")
            return cls.from_table(tag, table)
        raise InputError(f"group spec for {tag}: unknown kind {kind!r}")

    def element_order(self, x):
        k, y = 1, x
        while y != 0:
            y = self.mul[y][x]
            k += 1
        return k


@dataclass(frozen=True)
class Subgroup:
    parent: str
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements

    @property
    def is_trivial(self):
        return len(self.elements) == 1


def subgroup_closure(G: FactorGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup of ``G`` containing ``seed``."""
    gens = sorted({G.check_element(x) for x in seed} - {0})
    elems = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul[x][g]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    # finite group: closure under multiplication by generators gives inverses too
    assert G.order % len(elems) == 0
    return Subgroup(G.tag, tuple(sorted(elems)))


def is_subgroup(G: FactorGroup, elements) -> bool:
    s = set(elements)
    if 0 not in s or not all(isinstance(x, int) and 0 <= x < G.order for x in s):
        return False
    for x in s:
        if G.inv[x] not in s:
            return False
        for y in s:
            if G.mul[x][y] not in s:
                return False
    return True


def right_coset(G: FactorGroup, S: Subgroup, x: int):
    return sorted(G.mul[s][x] for s in S.elements)


def canonical_coset_rep(G: FactorGroup, S: Subgroup, x: int) -> int:
    G.check_element(x)
    return min(G.mul[s][x] for s in S.elements)


def conjugate_subgroup(G: FactorGroup, S: Subgroup, c: int) -> Subgroup:
    """``c^-1 S c``."""
    ci = G.inv[c]
    return Subgroup(G.tag, tuple(sorted(G.mul[G.mul[ci][s]][c] for s in S.elements)))


def coset_count(G: FactorGroup, S: Subgroup) -> int:
    return G.order // len(S)
