"""Compare the compiled and pure-Python kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs in a fresh interpreter so the backend is chosen at import,
exactly as in normal use.
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "poly_mul": """
from chowring.polynomial import Polynomial, O, D, L
from chowring.bv import BVRing
ring = BVRing()
x = sum((Polynomial.gen((D, i, j)) for i in range(1, 6) for j in range(i + 1, 6)), Polynomial())
x = x + sum((Polynomial.gen((O, i)) for i in range(1, 6)), Polynomial())
def run():
    x.pow(4)
""",
    "bareiss_rank": """
import random
from chowring.kernels import bareiss_rank
rng = random.Random(7)
rows = [[rng.randint(-9, 9) for _ in range(100)] for _ in range(100)]
def run():
    bareiss_rank([list(r) for r in rows], 100)
""",
    "egl_n4": """
from chowring import hilbert
from chowring.bv import BVRing
def run():
    # module-level substitution tables would otherwise make repeats free
    hilbert._subst_cache.clear()
    hilbert._push_cache.clear()
    hilbert.EGL(BVRing()).chern_number(hilbert.cT(8), 4)
""",
    "bv_normalize": """
import random
from chowring.bv import BVRing
from chowring.polynomial import Polynomial, O, D, L
rng = random.Random(3)
gens = [(O, i) for i in range(1, 7)] + [(L, 1, i) for i in range(1, 7)] + [
    (D, i, j) for i in range(1, 7) for j in range(i + 1, 7)]
polys = []
for _ in range(200):
    p = Polynomial.const(1)
    for _ in range(6):
        p = p * Polynomial.gen(rng.choice(gens))
    polys.append(p)
def run():
    ring = BVRing()
    for p in polys:
        ring.normalize(p)
""",
    "basis_rank_m4": """
from chowring.k3model import K3Model, monomial_basis_rank
model = K3Model(1, 2, ((2,),), ((1, 0), (0, 1)))
def run():
    model._cache.clear()
    monomial_basis_rank(4, 4, model)
""",
}

TIMER = """
import timeit, json, chowring
{setup}
t = min(timeit.repeat(run, number=1, repeat={repeat}))
print(json.dumps({{"backend": chowring.BACKEND, "seconds": t}}))
"""


def measure(name, pure, repeat):
    env = dict(os.environ, CHOWRING_PURE_PYTHON="1" if pure else "0")
    code = TIMER.format(setup=WORKLOADS[name], repeat=repeat)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'workload':<16}{'compiled':>12}{'python':>12}{'speedup':>10}")
    for name in WORKLOADS:
        fast = measure(name, False, args.repeat)
        slow = measure(name, True, args.repeat)
        if fast["backend"] != "cython":
            label = "n/a"
        else:
            label = f"{slow['seconds'] / fast['seconds']:.2f}x"
        print(f"{name:<16}{fast['seconds']:>11.4f}s{slow['seconds']:>11.4f}s{label:>10}")


if __name__ == "__main__":
    main()
