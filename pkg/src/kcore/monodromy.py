"""Partial permutations of core vertices induced by group elements.

``v*g`` is the endpoint of the lift of ``red(g)`` at ``v``; it is defined
when the whole lift stays in the core.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .core import CoreComplex


@dataclass(frozen=True)
class PartialVertexPermutation:
    word: tuple
    pairs: tuple  # ((v, v*g), ...) sorted by v

    @property
    def dom(self):
        return tuple(v for v, _ in self.pairs)

    @property
    def ran(self):
        return tuple(sorted(w for _, w in self.pairs))

    @property
    def rank(self):
        return len(self.pairs)

    def as_dict(self):
        return dict(self.pairs)

    def then(self, other: "PartialVertexPermutation"):
        """Composite partial map: first ``self``, then ``other``."""
        second = other.as_dict()
        return tuple((v, second[w]) for v, w in self.pairs if w in second)


def monodromy(C: CoreComplex, w) -> PartialVertexPermutation:
    P = C.product
    red = P.reduce(w)
    ends = kernels.endpoints(C._ktable, P.encode(red))
    return PartialVertexPermutation(red, tuple((v, e) for v, e in enumerate(ends) if e >= 0))


def rank(C: CoreComplex, w) -> int:
    P = C.product
    return kernels.rank(C._ktable, P.reduce_codes(P.encode(w)))


def rank_codes(C: CoreComplex, reduced_codes) -> int:
    return kernels.rank(C._ktable, reduced_codes)
