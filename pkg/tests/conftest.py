import random

import pytest

from kcore.core import build_core
from kcore.groups import FactorGroup
from kcore.words import FreeProduct, Syllable

Z2A = FactorGroup.cyclic("A", 2)
Z2B = FactorGroup.cyclic("B", 2)
Z3B = FactorGroup.cyclic("B", 3)
Z4B = FactorGroup.cyclic("B", 4)
S3A = FactorGroup.symmetric("A", 3)

# (A, B, generators) -- subgroups used throughout the suite
FIXTURES = {
    "Dinf": (Z2A, Z2B, "a1 b1"),
    "M": (Z2A, Z3B, "a1 b1"),
    "V": (Z2A, Z3B, "a1; b1 a1 b2"),
    "G": (Z2A, Z3B, "a1; b1"),
    "conj": (Z2A, Z3B, "b1 a1 b2"),
    "offbase": (Z2A, Z3B, "b2; a1 b2 a1 b1 a1"),
    "S3Z3": (S3A, Z3B, "a1 b1; a3 b2 a2"),
    "Z2Z4": (Z2A, Z4B, "a1 b2 a1 b1"),
    "long": (Z2A, Z3B, "b1 a1 b1 a1 b2 a1 b2"),
    "idx3": (Z2A, Z3B, "a1; b1 a1 b1"),
    "idx4": (Z2A, Z2B, "a1 b1 a1 b1"),
    "idx6": (Z2A, Z3B, "a1 b1 a1 b1 a1; b2 a1 b2"),
}
INFINITE = ["M", "V", "conj", "offbase", "S3Z3", "Z2Z4", "long"]
FINITE = ["Dinf", "G", "idx3", "idx4", "idx6"]


def product_of(name):
    A, B, _ = FIXTURES[name]
    return FreeProduct(A, B)


def gens_of(name):
    return product_of(name).parse_list(FIXTURES[name][2])


def core_of(name):
    A, B, _ = FIXTURES[name]
    return build_core(A, B, gens_of(name))


@pytest.fixture
def M():
    return core_of("M")


@pytest.fixture
def Dinf():
    return core_of("Dinf")


@pytest.fixture
def V():
    return core_of("V")


@pytest.fixture
def P23():
    return FreeProduct(Z2A, Z3B)


def random_word(P, rng, max_len=8, min_len=0):
    """Arbitrary (unreduced) word of syllables."""
    sylls = P.syllables()
    return tuple(rng.choice(sylls) for _ in range(rng.randint(min_len, max_len)))


def random_reduced(P, rng, max_len=8, min_len=0):
    return P.reduce(random_word(P, rng, max_len, min_len))


def random_product(P, gens, rng, max_factors=4):
    """A random product of generators and their inverses (an element of <gens>)."""
    out = ()
    for _ in range(rng.randint(0, max_factors)):
        g = rng.choice(gens)
        out = P.multiply(out, g if rng.random() < 0.5 else P.invert(P.reduce(g)))
    return out


def a(k):
    return Syllable("A", k)


def b(k):
    return Syllable("B", k)


# one line per acceptance criterion, shown at the end of every run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
