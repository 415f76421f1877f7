"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row is the best-of-``repeat`` time per call, in microseconds.
"""
import argparse
import timeit

import numpy as np

from bicomplex_hilbert import _backend
from bicomplex_hilbert.oscillator import OscillatorParams, eigenfunction, gram_matrix


def cases(rng):
    def cvec(*shape):
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)

    a32, b32 = cvec(32), cvec(32)
    a1k, b1k = cvec(1000), cvec(1000)
    w1k = rng.uniform(0.5, 2.0, 1000)
    rows = cvec(12, 32)
    p = OscillatorParams.from_components(xi1=1.0, xi2=2.0)
    phi = eigenfunction(20, p).channel_arrays(1)
    return {
        "sp_channel N=32": lambda k: k.sp_channel(a32, b32),
        "sp_channel N=1000 weighted": lambda k: k.sp_channel(a1k, b1k, w1k),
        "gram_channel 12x32": lambda k: k.gram_channel(rows),
        "mgs_channel 12x32": lambda k: k.mgs_channel(rows),
        "gauss_channel phi_20": lambda k: k.gauss_channel(*phi, *phi),
        "oscillator gram lmax=8": lambda k: gram_matrix(8, p),
    }


def bench(fn, kernels, repeat):
    timer = timeit.Timer(lambda: fn(kernels))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number * 1e6


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    names = _backend.available()
    if "compiled" not in names:
        print("compiled extension not built; only the python backend is available")
    rng = np.random.default_rng(0)
    print(f"{'kernel':32s}" + "".join(f"{n:>14s}" for n in names) + ("      speedup" if len(names) == 2 else ""))
    for label, fn in cases(rng).items():
        times = []
        for name in names:
            with _backend.use_backend(name):
                times.append(bench(fn, _backend.kernels, args.repeat))
        row = f"{label:32s}" + "".join(f"{t:14.1f}" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:12.1f}x"
        print(row)


if __name__ == "__main__":
    main()
