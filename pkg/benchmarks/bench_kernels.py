"""Compare the compiled and pure-Python rewriting kernels.

Usage: python3 benchmarks/bench_kernels.py [--rows N] [--length L] [--repeat K]
"""

import argparse
import time

import numpy as np

from growthlab import kernels
from growthlab.catalog import load_group
from growthlab.cayley import enumerate_growth


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def use_backend(impl):
    kernels.reduce_word = impl.reduce_word
    kernels.reduce_rows = impl.reduce_rows
    kernels.irreducible_mask = impl.irreducible_mask


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=20000)
    ap.add_argument("--length", type=int, default=24)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python backend is available")
    rng = np.random.default_rng(0)
    rows_by_group = {}
    for key in ("c2c3", "z2"):
        trie = load_group(key).rewriting.trie
        rows_by_group[key] = rng.integers(0, trie.nletters, size=(args.rows, args.length), dtype=np.uint8)

    cases = []
    for key, rows in rows_by_group.items():
        trie = load_group(key).rewriting.trie
        cases.append((f"reduce_rows {key} {args.rows}x{args.length}", lambda impl, r=rows, t=trie: impl.reduce_rows(r, t)))
    f2 = load_group("f2")
    sphere = enumerate_growth(f2, 10, store_elements=True).elements[10]
    cases.append(("irreducible_mask f2 S(10)", lambda impl: impl.irreducible_mask(sphere, f2.rewriting.trie)))
    for key, radius in (("f2", 11), ("z2", 40), ("c2c3", 24)):
        p = load_group(key)

        def bfs(impl, p=p, radius=radius):
            use_backend(impl)
            enumerate_growth(p, radius)

        cases.append((f"enumerate_growth {key} R={radius}", bfs))

    default = {name: getattr(kernels, name) for name in ("reduce_word", "reduce_rows", "irreducible_mask")}
    header = f"{'case':<38}" + "".join(f"{name:>12}" for name in backends) + ("     speedup" if len(backends) > 1 else "")
    print(header)
    for label, fn in cases:
        times = {name: best_of(lambda: fn(impl), args.repeat) for name, impl in backends.items()}
        line = f"{label:<38}" + "".join(f"{times[n] * 1e3:>10.1f}ms" for n in backends)
        if len(backends) > 1:
            line += f"{times['python'] / times['cython']:>11.1f}x"
        print(line)
    for name, fn in default.items():
        setattr(kernels, name, fn)


if __name__ == "__main__":
    main()
