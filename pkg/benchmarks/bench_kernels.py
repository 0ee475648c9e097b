"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Checks that both backends agree on every input, then reports per-call
timings for reduction and lifting, and a full normal-closure soak run in a
subprocess under each backend.
"""
import argparse
import os
import random
import subprocess
import sys
import time
import timeit

from kcore import _pykernels
from kcore.core import build_core
from kcore.groups import FactorGroup
from kcore.words import FreeProduct

try:
    from kcore import _kernels
except ImportError:
    _kernels = None

SOAK = """
import time
from kcore import kernels
from kcore.groups import FactorGroup
from kcore.words import FreeProduct
from kcore.core import build_core
from kcore.separation import separating_witness
from kcore.oracle import soak
A, B = FactorGroup.symmetric("A", 3), FactorGroup.cyclic("B", 3)
P = FreeProduct(A, B)
C = build_core(A, B, P.parse_list("a1 b1; a3 b2 a2"))
g = separating_witness(C).g
t = time.perf_counter()
r = soak(C, g, 10000, 4, 6, 1)
print(kernels.BACKEND, r["violations"], time.perf_counter() - t)
"""


def random_word(rng, P, n):
    return [rng.randrange(1, P.n_codes) for _ in range(n)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        sys.exit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    A, B = FactorGroup.symmetric("A", 3), FactorGroup.cyclic("B", 4)
    P = FreeProduct(A, B)
    rng = random.Random(7)
    words = []
    for _ in range(200):
        w = [c for c in random_word(rng, P, 120) if c not in (0, P.nA)]
        words.append(w)
    C = build_core(A, B, P.parse_list("a1 b1; a3 b2 a2 b1; b2 a4 b2"))
    reduced = [_pykernels.reduce_codes(w, _pykernels.prepare_table(P.prod), P.nA) for w in words]
    # members of the subgroup lift all the way round, so walks read every syllable
    gens = [P.encode(w) for w in P.parse_list("a1 b1; a3 b2 a2 b1; b2 a4 b2")]
    inv = [[P.inv_code[c] for c in reversed(w)] for w in gens]
    members = []
    for _ in range(200):
        w = []
        for _ in range(30):
            w += rng.choice(gens + inv)
        members.append(_pykernels.reduce_codes(w, _pykernels.prepare_table(P.prod), P.nA))

    backends = {"python": _pykernels, "cython": _kernels}
    prepared = {
        name: (mod.prepare_table(P.prod), mod.prepare_table(C.table)) for name, mod in backends.items()
    }
    for w, r in zip(words, reduced):
        assert _kernels.reduce_codes(w, prepared["cython"][0], P.nA) == r
        assert _kernels.endpoints(prepared["cython"][1], r) == _pykernels.endpoints(prepared["python"][1], r)
    for r in members:
        assert _kernels.walk(prepared["cython"][1], 0, r) == 0 == _pykernels.walk(prepared["python"][1], 0, r)

    print(f"core: {C.vertex_count} vertices; {len(words)} random words of 120 syllables, "
          f"{len(members)} members of ~{sum(map(len, members)) // len(members)} syllables")
    print(f"{'kernel':<12}{'python us':>12}{'cython us':>12}{'speedup':>10}")
    for label, call in (
        ("reduce", lambda mod, prod, tab: [mod.reduce_codes(w, prod, P.nA) for w in words]),
        ("walk", lambda mod, prod, tab: [mod.walk(tab, 0, r) for r in members]),
        ("rank", lambda mod, prod, tab: [mod.rank(tab, r) for r in reduced]),
    ):
        times = {}
        for name, mod in backends.items():
            prod, tab = prepared[name]
            t = min(timeit.repeat(lambda: call(mod, prod, tab), number=1, repeat=args.repeat))
            times[name] = t / len(words) * 1e6
        print(f"{label:<12}{times['python']:>12.2f}{times['cython']:>12.2f}{times['python'] / times['cython']:>10.1f}")

    print("\nsoak (10000 samples, S3*Z3):")
    for pure in ("1", ""):
        env = dict(os.environ, KCORE_PURE_PYTHON=pure)
        start = time.perf_counter()
        out = subprocess.run([sys.executable, "-c", SOAK], env=env, capture_output=True, text=True, check=True)
        backend, violations, soak_time = out.stdout.split()
        print(f"  {backend:<8} soak {float(soak_time):6.2f} s  violations={violations}  "
              f"(process {time.perf_counter() - start:.2f} s)")


if __name__ == "__main__":
    main()
