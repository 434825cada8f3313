"""Benchmark the compiled Grassmann kernel against the pure-Python fallback.

Runs the same workloads in a subprocess per backend (the backend is chosen
at import time) and prints a table.  Usage:

    python benchmarks/bench_kernels.py            # compare both backends
    python benchmarks/bench_kernels.py --inner    # run one backend (internal)
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import time


def workloads():
    import random
    from fractions import Fraction

    from superalg import RATIONAL, CRATIONAL, FiberSplit, GrassmannElement
    from superalg import liealg as la
    from superalg.berezin import OddSubstitution, change_of_variables_residual
    from superalg.hilbert import FnSpace, ProtoSuperHilbert

    rng = random.Random(42)

    def random_element(n, density=0.5):
        e = GrassmannElement.zero(n, RATIONAL)
        for mask in range(1 << n):
            if rng.random() < density:
                e = e + GrassmannElement.monomial(
                    n, RATIONAL, mask, Fraction(rng.randrange(-9, 10), rng.randrange(1, 5))
                )
        return e

    def bench_dense_multiply():
        elements = [random_element(8, density=0.6) for _ in range(20)]
        start = time.perf_counter()
        acc = elements[0]
        for _ in range(3):
            for e in elements[1:]:
                acc = acc * e + e
        return time.perf_counter() - start

    def bench_fourier_integral():
        space = FnSpace(ProtoSuperHilbert.standard(CRATIONAL, 1), 7)
        start = time.perf_counter()
        f_int = space.fourier_via_integral()
        f_inv = space.fourier_via_inv()
        assert f_int.is_equal(f_inv)
        return time.perf_counter() - start

    def bench_bch_separation():
        alg = la.osp12()
        rep = la.osp12_matrix_rep(4, RATIONAL)
        start = time.perf_counter()
        for seed in range(6):
            local = random.Random(seed)

            def odd_coeff():
                e = GrassmannElement.zero(4, RATIONAL)
                for mask in range(1, 16):
                    if bin(mask).count("1") % 2 and local.random() < 0.6:
                        e = e + GrassmannElement.monomial(
                            4, RATIONAL, mask, Fraction(local.randrange(-5, 6))
                        )
                return e

            x = la.LieElement(
                alg,
                [GrassmannElement.zero(4, RATIONAL)] * 3 + [odd_coeff(), odd_coeff()],
            )
            y = la.LieElement(
                alg,
                [GrassmannElement.zero(4, RATIONAL)] * 3 + [odd_coeff(), odd_coeff()],
            )
            b0, b1 = la.separate_even_odd(x, y)
            assert rep.exp(x) * rep.exp(y) == rep.exp(b0) * rep.exp(x + y + b1)
        return time.perf_counter() - start

    def bench_change_of_variables():
        n = 5
        split = FiberSplit.full(n)
        gens = [GrassmannElement.generator(n, RATIONAL, j) for j in range(1, n + 1)]
        start = time.perf_counter()
        for trial in range(30):
            images = {}
            for i in range(1, n + 1):
                img = gens[i - 1] * Fraction(1 + (trial + i) % 3)
                img = img + gens[i % n] * Fraction(trial % 2)
                cubic = gens[(i + 1) % n] * gens[(i + 2) % n] * gens[(i + 3) % n]
                images[i] = img + cubic * Fraction(1, 2)
            try:
                sub = OddSubstitution(split, images)
            except ValueError:
                continue
            f = random_element(n)
            assert change_of_variables_residual(f, sub, split).is_zero()
        return time.perf_counter() - start

    return {
        "dense multiply (n=8)": bench_dense_multiply,
        "fourier two ways (n=7)": bench_fourier_integral,
        "bch separation (osp12)": bench_bch_separation,
        "change of variables (n=5)": bench_change_of_variables,
    }


def run_inner():
    from superalg import BACKEND

    results = {"backend": BACKEND, "timings": {}}
    for name, fn in workloads().items():
        fn()  # warm up caches
        results["timings"][name] = fn()
    print(json.dumps(results))


def run_comparison():
    rows = {}
    for force in (None, "1"):
        env = dict(os.environ)
        env.pop("SUPERALG_FORCE_PYTHON_KERNEL", None)
        if force:
            env["SUPERALG_FORCE_PYTHON_KERNEL"] = force
        out = subprocess.run(
            [sys.executable, __file__, "--inner"],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        data = json.loads(out.stdout.strip().splitlines()[-1])
        rows[data["backend"]] = data["timings"]
    backends = list(rows)
    names = list(next(iter(rows.values())))
    width = max(len(n) for n in names) + 2
    print(f"{'workload':<{width}}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name in names:
        line = f"{name:<{width}}"
        for b in backends:
            line += f"{rows[b][name]:>12.3f}"
        if len(backends) == 2 and rows[backends[0]][name] > 0:
            ratio = rows[backends[1]][name] / rows[backends[0]][name]
            line += f"{ratio:>9.1f}x"
        print(line)


if __name__ == "__main__":
    if "--inner" in sys.argv:
        run_inner()
    else:
        run_comparison()
