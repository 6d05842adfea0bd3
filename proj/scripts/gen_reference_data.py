#!/usr/bin/env python3
"""Generate reference data files under data/ using mpmath.

Produces:
  data/zeros/zeta_hiprec.txt   first 40 ordinates of zeta zeros, 80 digits
  data/zeros/q3_ref.txt        zeros of the character 3.2 up to T=100
  data/zeros/q4_ref.txt        zeros of the character 4.3 up to T=100
  data/zeros/q5_ref.txt        zeros of the characters 5.2/5.3/5.4 up to T=100
  data/zeros/q4_1000.txt       first 1000 zeros of the character 4.3
  data/bessel_j0_ref.txt       J0 reference values, 22 digits

The Dirichlet zero search evaluates the completed L-function rotated onto
the real axis and brackets sign changes; counts are validated against the
(T/2pi) log(qT/2pi e) zero-counting estimate.  Runtime is dominated by the
1000-zero table (a few minutes).
"""

import os
import sys
import time

import mpmath as mp

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")

# Conrey character value tables for the small conductors used here.
I = mp.mpc(0, 1)
CHARS = {
    (3, 2): {1: 1, 2: -1},
    (4, 3): {1: 1, 3: -1},
    (5, 2): {1: 1, 2: I, 3: -I, 4: -1},
    (5, 3): {1: 1, 2: -I, 3: I, 4: -1},
    (5, 4): {1: 1, 2: -1, 3: -1, 4: 1},
}


def l_function(q, chi, s):
    # L(s,chi) = q^-s sum_a chi(a) zeta(s, a/q)
    tot = mp.mpc(0)
    for a, v in chi.items():
        tot += v * mp.zeta(s, mp.mpf(a) / q)
    return mp.power(q, -s) * tot


def rotated_completed(q, chi):
    """Return Z(t): a real-valued function whose sign changes on t>0 are the
    ordinates of the zeros of L(s,chi) on the critical line."""
    par = chi[q - 1]  # chi(-1)
    a = 0 if par == 1 else 1
    tau = mp.fsum([chi[n] * mp.expjpi(mp.mpf(2 * n) / q) for n in chi], absolute=False)
    eps = tau / (I ** a * mp.sqrt(q))
    assert abs(abs(eps) - 1) < mp.mpf(10) ** (-mp.mp.dps + 5)
    rot = 1 / mp.sqrt(eps)

    def Z(t):
        s = mp.mpc(mp.mpf(1) / 2, t)
        lam = mp.power(mp.mpf(q) / mp.pi, (s + a) / 2) * mp.gamma((s + a) / 2) * l_function(q, chi, s)
        z = rot * lam
        return z.real

    return Z


def predicted_count(q, T):
    # per-character zero count on 0 < gamma <= T
    return float(T / (2 * mp.pi) * mp.log(q * T / (2 * mp.pi * mp.e)))


def find_zeros(q, label, T, max_count=None, step=0.1):
    chi = CHARS[(q, label)]
    Z = rotated_completed(q, chi)
    zeros = []
    t = mp.mpf(step)
    prev_t, prev_z = t, Z(t)
    while prev_t < T and (max_count is None or len(zeros) < max_count):
        cur_t = prev_t + step
        cur_z = Z(cur_t)
        if prev_z * cur_z < 0:
            lo, hi = prev_t, cur_t
            zlo = prev_z
            for _ in range(12):
                mid = (lo + hi) / 2
                zm = Z(mid)
                if zlo * zm <= 0:
                    hi = mid
                else:
                    lo, zlo = mid, zm
            root = mp.findroot(Z, (lo + hi) / 2, solver="secant")
            zeros.append(root)
        prev_t, prev_z = cur_t, cur_z
    # sanity: compare against counting estimate
    top = zeros[-1] if max_count and zeros and len(zeros) == max_count else mp.mpf(T)
    pred = predicted_count(q, top)
    if abs(len(zeros) - pred) > 4:
        raise RuntimeError(f"count mismatch q={q}.{label}: found {len(zeros)}, predicted {pred:.1f}")
    for i in range(1, len(zeros)):
        if zeros[i] - zeros[i - 1] < step / 4:
            raise RuntimeError(f"suspicious near-double zero at {zeros[i]}")
    return zeros


def write_table(path, rows, digits, err):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        f.write("# generated by scripts/gen_reference_data.py (mpmath %s)\n" % mp.__version__)
        f.write("# format: <conrey_label q.n> <ordinate> <abs_error>\n")
        for label, gamma in rows:
            f.write("%s %s %g\n" % (label, mp.nstr(gamma, digits, strip_zeros=False), err))
    print("wrote", path, "(%d rows)" % len(rows))


def gen_zeta():
    mp.mp.dps = 90
    rows = []
    for n in range(1, 41):
        rows.append(("1.1", mp.zetazero(n).imag))
    write_table(os.path.join(DATA, "zeros", "zeta_hiprec.txt"), rows, 80, 1e-75)


def gen_small_conductors():
    mp.mp.dps = 30
    for q, labels, fname in ((3, [2], "q3_ref.txt"), (4, [3], "q4_ref.txt"), (5, [2, 3, 4], "q5_ref.txt")):
        rows = []
        for n in labels:
            t0 = time.time()
            zs = find_zeros(q, n, T=100)
            print(f"q={q}.{n}: {len(zs)} zeros to T=100 in {time.time()-t0:.1f}s")
            rows += [(f"{q}.{n}", g) for g in zs]
        write_table(os.path.join(DATA, "zeros", fname), rows, 25, 1e-20)


def gen_q4_big():
    mp.mp.dps = 30
    t0 = time.time()
    zs = find_zeros(4, 3, T=1200, max_count=1000, step=0.1)
    assert len(zs) == 1000, len(zs)
    print(f"q=4.3: 1000 zeros (top {float(zs[-1]):.3f}) in {time.time()-t0:.1f}s")
    rows = [("4.3", g) for g in zs]
    write_table(os.path.join(DATA, "zeros", "q4_1000.txt"), rows, 25, 1e-20)


def gen_j0():
    mp.mp.dps = 30
    xs = [0, 0.05, 0.14142135623730951, 0.5, 1, 1.5, 2, 2.404825557695773, 3,
          4, 5, 6, 7, 8, 8.5, 9, 9.5, 10, 11, 12, 13, 14, 15, 15.9, 16, 16.1,
          17, 19, 20, 25, 31.4, 40, 50, 64, 77.7, 100, 123.456, 200, 333.3,
          500, 777, 1000, 2000, 5000, 9999.5]
    path = os.path.join(DATA, "bessel_j0_ref.txt")
    with open(path, "w") as f:
        f.write("# x  J0(x)  (22 digits, mpmath)\n")
        for x in xs:
            f.write("%s %s\n" % (repr(x), mp.nstr(mp.besselj(0, mp.mpf(repr(x))), 22, strip_zeros=False)))
    print("wrote", path)


def main():
    which = sys.argv[1] if len(sys.argv) > 1 else "all"
    if which in ("all", "zeta"):
        gen_zeta()
    if which in ("all", "small"):
        gen_small_conductors()
    if which in ("all", "j0"):
        gen_j0()
    if which in ("all", "q4big"):
        gen_q4_big()


if __name__ == "__main__":
    main()
