"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from hyperspectra import _backend, spectral, tensor
from hyperspectra.generators import gen_complete, gen_hyperstar, gen_random
from hyperspectra.hypergraph import is_connected
from hyperspectra.spectral import SolverOptions, spectral_radius


def connected_random(n, m, k, seed):
    while True:
        H = gen_random(n, m, k, seed)
        if is_connected(H):
            return H
        seed += 1


CASES = [
    ("hyperstar:4,3", lambda: gen_hyperstar(4, 3)),
    ("complete:12,4", lambda: gen_complete(12, 4)),
    ("random:12,40,3", lambda: connected_random(12, 40, 3, 1)),
    ("random:200,1500,3", lambda: connected_random(200, 1500, 3, 1)),
    ("random:2000,20000,4", lambda: connected_random(2000, 20000, 4, 1)),
]


def use(name):
    mod = _backend.get(name)
    tensor.kernels = mod
    spectral.kernels = mod


def best(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = ["python"] + (["compiled"] if _backend.COMPILED_AVAILABLE else [])
    if len(backends) == 1:
        print("compiled kernels not built; timing the fallback only")
    opts = SolverOptions()
    print(f"{'instance':<22}{'op':<10}" + "".join(f"{b:>14}" for b in backends) + f"{'speedup':>10}")
    for label, make in CASES:
        H = make()
        x = np.random.default_rng(0).uniform(0.5, 1.0, H.n)
        for op, fn, number in (
            ("apply", lambda: tensor.apply(H, "adjacency", x), 200 if H.m < 5000 else 20),
            ("solve", lambda: spectral_radius(H, "q", opts), 5 if H.m < 5000 else 1),
        ):
            times = []
            for b in backends:
                use(b)
                times.append(best(fn, args.repeat, number))
            cells = "".join(f"{t * 1e3:>12.3f}ms" for t in times)
            ratio = f"{times[0] / times[-1]:>9.1f}x" if len(times) == 2 else ""
            print(f"{label:<22}{op:<10}{cells}{ratio}")
    use(_backend.BACKEND)


if __name__ == "__main__":
    main()
