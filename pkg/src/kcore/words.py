"""Words in the free product A*B and their normal forms.

A word is a tuple of ``Syllable(tag, elem)`` with ``elem != 0``. Reduced words
alternate factor tags; the empty tuple is the identity.

For the hot paths every syllable also has an integer *code*: ``elem`` for
factor A and ``|A| + elem`` for factor B (codes ``0`` and ``|A|`` are the two
identities and never appear in a word).
"""
from __future__ import annotations

import re
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import InputError
from .groups import FactorGroup


class Syllable(NamedTuple):
    tag: str
    elem: int

    def __str__(self):
        return f"{self.tag.lower()}{self.elem}"


Word = tuple  # tuple[Syllable, ...]

_SYLL_RE = re.compile(r"([ab])([1-9][0-9]*)")
_WORD_RE = re.compile(r"(?:[ab][0-9]+(?: [ab][0-9]+)*)?")


def is_reduced(w: Sequence[Syllable]) -> bool:
    return all(w[i].tag != w[i + 1].tag for i in range(len(w) - 1))


def is_cyclically_reduced(w: Sequence[Syllable]) -> bool:
    return is_reduced(w) and (len(w) <= 1 or w[0].tag != w[-1].tag)


def format_word(w: Sequence[Syllable]) -> str:
    return " ".join(str(s) for s in w)


def cyclic_conjugates(z: Word) -> list:
    """All rotations of ``z`` (``len(z)`` of them, duplicates kept; ``[()]`` for the identity)."""
    if not z:
        return [()]
    return [tuple(z[i:]) + tuple(z[:i]) for i in range(len(z))]


class FreeProduct:
    """The free product of two finite factor groups."""

    def __init__(self, A: FactorGroup, B: FactorGroup):
        if A.tag != "A" or B.tag != "B":
            raise InputError("free product factors must be tagged A and B")
        self.A = A
        self.B = B
        self.nA = A.order
        self.n_codes = A.order + B.order
        prod = np.full((self.n_codes, self.n_codes), -2, dtype=np.int32)
        for G, off in ((A, 0), (B, A.order)):
            for x in range(G.order):
                for y in range(G.order):
                    z = G.mul[x][y]
                    prod[off + x, off + y] = -1 if z == 0 else off + z
        self.prod = prod
        self._prod_table = kernels.prepare_table(prod)
        self.inv_code = [0] * self.n_codes
        for G, off in ((A, 0), (B, A.order)):
            for x in range(G.order):
                self.inv_code[off + x] = off + G.inv[x]

    def __eq__(self, other):
        return isinstance(other, FreeProduct) and self.A == other.A and self.B == other.B

    def __hash__(self):
        return hash((self.A, self.B))

    def factor(self, tag) -> FactorGroup:
        return self.A if tag == "A" else self.B

    def other(self, tag):
        return "B" if tag == "A" else "A"

    def syllable(self, tag, elem) -> Syllable:
        G = self.factor(tag)
        G.check_element(elem)
        if elem == 0:
            raise InputError("syllables must be nonidentity elements (index >= 1)")
        return Syllable(tag, elem)

    def syllables(self, tag=None):
        """Every nonidentity syllable, A before B, elements in index order."""
        tags = ("A", "B") if tag is None else (tag,)
        return [Syllable(t, e) for t in tags for e in self.factor(t).nonidentity]

    # -- parsing -----------------------------------------------------------

    def parse(self, text: str) -> Word:
        if not _WORD_RE.fullmatch(text):
            raise InputError(
                f"malformed word {text!r}: expected syllables 'a<k>'/'b<k>' separated by single spaces"
            )
        out = []
        for tok in text.split(" ") if text else ():
            m = _SYLL_RE.fullmatch(tok)
            if m is None:
                raise InputError(f"malformed syllable {tok!r}: index must be a decimal >= 1 without leading zeros")
            tag = m.group(1).upper()
            k = int(m.group(2))
            if k >= self.factor(tag).order:
                raise InputError(
                    f"syllable {tok!r}: index must be < {self.factor(tag).order}, the order of factor {tag}"
                )
            out.append(Syllable(tag, k))
        return tuple(out)

    def parse_list(self, text: str) -> list:
        return [self.parse(part.strip()) for part in text.split(";")]

    # -- codes -------------------------------------------------------------

    def encode(self, w: Sequence[Syllable]) -> list:
        nA = self.nA
        return [s.elem if s.tag == "A" else nA + s.elem for s in w]

    def decode(self, codes) -> Word:
        nA = self.nA
        return tuple(Syllable("A", c) if c < nA else Syllable("B", c - nA) for c in codes)

    def reduce_codes(self, codes: list) -> list:
        return kernels.reduce_codes(codes, self._prod_table, self.nA)

    # -- the rewriting system ---------------------------------------------

    def reduce(self, w: Sequence[Syllable]) -> Word:
        """Normal form of ``w``: merge and cancel adjacent same-factor syllables."""
        out = []
        for s in w:
            if out and out[-1].tag == s.tag:
                G = self.factor(s.tag)
                top = out.pop()
                e = G.mul[top.elem][s.elem]
                if e != 0:
                    out.append(Syllable(s.tag, e))
            else:
                out.append(s)
        return tuple(out)

    def concat_reduce(self, u: Word, v: Word) -> Word:
        """``red(u v)`` for reduced ``u`` and ``v``; only the seam needs work."""
        i, j = len(u), 0
        mid = None
        while i > 0 and j < len(v) and u[i - 1].tag == v[j].tag:
            G = self.factor(v[j].tag)
            e = G.mul[u[i - 1].elem][v[j].elem]
            i -= 1
            j += 1
            if e != 0:
                mid = Syllable(v[j - 1].tag, e)
                break
        return tuple(u[:i]) + ((mid,) if mid is not None else ()) + tuple(v[j:])

    def multiply(self, *words) -> Word:
        out = ()
        for w in words:
            out = self.concat_reduce(out, self.reduce(w))
        return out

    def invert(self, w: Sequence[Syllable]) -> Word:
        return tuple(Syllable(s.tag, self.factor(s.tag).inv[s.elem]) for s in reversed(w))

    def power(self, w: Word, k: int) -> Word:
        if k < 0:
            w, k = self.invert(w), -k
        out = ()
        for _ in range(k):
            out = self.concat_reduce(out, w)
        return out

    def cyclically_reduce(self, w: Word):
        """Split reduced ``w`` as ``u z u^-1`` with ``z`` cyclically reduced.

        When the end syllables share a factor but do not cancel, conjugating
        by the first syllable folds them into one syllable at the end.
        """
        u = []
        z = tuple(w)
        while len(z) > 1 and z[0].tag == z[-1].tag:
            x, y = z[0], z[-1]
            G = self.factor(x.tag)
            u.append(x)
            if G.mul[y.elem][x.elem] == 0:
                z = z[1:-1]
            else:
                z = z[1:-1] + (Syllable(x.tag, G.mul[y.elem][x.elem]),)
        return tuple(u), z
