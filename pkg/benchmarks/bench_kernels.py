"""Compare the compiled and pure-Python convolution kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Times the raw kernel on packed operands, then whole workloads with the
series engine routed through each backend in turn.
"""

import argparse
import sys
import timeit
from fractions import Fraction

from qmacmahon import kernel, quasimodular, theta
from qmacmahon.macmahon import family, validate


def raw_cases():
    # packed operands the way series.mul hands them to the kernel
    th = theta.theta_series(Fraction(1, 6), 3, True, 120)
    e3 = theta.eta_cubed(1, 400)
    fam = family(validate(3, [1, 2]), "A", 2, 300).entries[2]
    big = e3.scale(Fraction(10 ** 30 + 7, 3))
    return {
        "theta x theta (bivariate)": (th._pack(), th._pack(), int(120 * th.qden * 2)),
        "eta^3 x eta^3 (q^400)": (e3._pack(), e3._pack(), 400 * e3.qden),
        "dense family entry squared": (fam._pack(), fam._pack(), 300),
        "big-integer coefficients": (big._pack(), e3._pack(), 400 * e3.qden),
    }


def workloads():
    return {
        "family (3,{1,2}) k<=4 to q^150": lambda: family(validate(3, [1, 2]), "A", 4, 150),
        "theta quotient r=1/10 scale 5 to q^60": lambda: theta.theta_quotient(Fraction(-2, 5), 5, True, 60),
        "reconstruct (4,{1,3}) k<=4 to q^40": lambda: quasimodular.reconstruct(validate(4, [1, 3]), 4, 40),
    }


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    found = kernel.backends()
    names = sorted(found)
    if "cython" not in found:
        print("compiled kernel not built; only the Python fallback is timed", file=sys.stderr)
    print(f"default backend: {kernel.BACKEND}")

    header = f"{'case':42s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else "")
    print("\nraw kernel (best of %d, seconds)" % args.repeat)
    print(header)
    for label, (a, b, limit) in raw_cases().items():
        times = {}
        results = {}
        for n in names:
            conv = found[n]
            args_ = (a[0], a[1], a[2], b[0], b[1], b[2], limit)
            times[n] = best(lambda: conv(*args_), args.repeat)
            results[n] = conv(*args_)
        assert len({tuple(sorted(r.items())) for r in results.values()}) == 1, label
        _row(label, names, times)

    print("\nworkloads (best of %d, seconds)" % args.repeat)
    print(header)
    saved = kernel.convolve
    try:
        for label, fn in workloads().items():
            times = {}
            for n in names:
                kernel.convolve = found[n]
                times[n] = best(fn, args.repeat)
            _row(label, names, times)
    finally:
        kernel.convolve = saved


def _row(label, names, times):
    line = f"{label:42s}" + "".join(f"{times[n]:12.4f}" for n in names)
    if "cython" in times and "python" in times:
        line += f"{times['python'] / times['cython']:11.1f}x"
    print(line)


if __name__ == "__main__":
    main()
