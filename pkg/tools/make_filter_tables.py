#!/usr/bin/env python3
"""Regenerate the wavelet coefficient tables under src/wavecast/_filters/.

The discrete Meyer lowpass is built by frequency-sampling the Meyer
scaling response (polynomial transition band), truncating to 62 taps and
projecting back onto the orthonormality constraints so the finite filter
is exactly orthogonal to machine precision.  The bior3.7 pair comes from
the exact B-spline construction, expanded symbolically so every
coefficient is correct to the printed precision.

Run from the repo root:  python3 tools/make_filter_tables.py
"""

import pathlib

import numpy as np

OUT_DIR = pathlib.Path(__file__).resolve().parent.parent / "src" / "wavecast" / "_filters"
SQRT2 = np.sqrt(2.0)


def meyer_lowpass_raw(n_taps=62, grid=2 ** 16):
    """Truncated inverse DFT of the Meyer conjugate mirror filter."""
    k = np.arange(grid)
    w = 2 * np.pi * k / grid
    w = np.where(w > np.pi, w - 2 * np.pi, w)

    def nu(x):
        return x ** 4 * (35 - 84 * x + 70 * x ** 2 - 20 * x ** 3)

    a = np.abs(2 * w)
    phi = np.zeros_like(a)
    phi[a <= 2 * np.pi / 3] = 1.0
    band = (a > 2 * np.pi / 3) & (a <= 4 * np.pi / 3)
    phi[band] = np.cos(np.pi / 2 * nu(3 * a[band] / (2 * np.pi) - 1))

    h = np.fft.fftshift(np.fft.ifft(SQRT2 * phi).real)
    c = grid // 2
    return h[c - n_taps // 2: c + n_taps // 2].copy()


def orthonormalize(t, max_iter=60):
    """Min-norm Gauss-Newton projection onto sum(t)=sqrt(2) and
    the even-shift orthonormality constraints of a CMF."""
    M = len(t)
    K = (M - 1) // 2

    def cons(t):
        c = [t.sum() - SQRT2]
        for k in range(K + 1):
            c.append(np.dot(t[2 * k:], t[:M - 2 * k]) - (1.0 if k == 0 else 0.0))
        return np.array(c)

    def jac(t):
        rows = [np.ones(M)]
        for k in range(K + 1):
            g = np.zeros(M)
            g[2 * k:] += t[:M - 2 * k]
            g[:M - 2 * k] += t[2 * k:]
            rows.append(g)
        return np.array(rows)

    for _ in range(max_iter):
        c = cons(t)
        if np.max(np.abs(c)) < 1e-15:
            break
        step, *_ = np.linalg.lstsq(jac(t), -c, rcond=None)
        t = t + step
    return t


def bior37_pair():
    """Exact spline-biorthogonal 3.7 analysis/synthesis lowpass filters,
    both padded to 16 taps so the bank has a single filter length."""
    import sympy as sp

    z = sp.symbols("z")
    rec_poly = sp.expand(sp.sqrt(2) * ((1 + z) / 2) ** 3)
    y = (2 - z - 1 / z) / 4
    interp = sum(sp.binomial(4 + m, m) * y ** m for m in range(5))
    dec_poly = sp.expand(sp.sqrt(2) * ((1 + z) / 2) ** 7 * interp)

    dec = [float(sp.N(dec_poly.coeff(z, p), 36)) for p in range(-4, 12)]
    rec4 = [float(sp.N(rec_poly.coeff(z, p), 36)) for p in range(0, 4)]
    rec = [0.0] * 6 + rec4 + [0.0] * 6
    return np.array(dec), np.array(rec)


def write_table(name, values):
    path = OUT_DIR / name
    with open(path, "w") as fh:
        for v in values:
            fh.write(repr(float(v)) + "\n")
    print(f"wrote {path} ({len(values)} taps)")


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    dmey = orthonormalize(meyer_lowpass_raw())
    print("dmey: sum-sqrt2 = %.3e" % (dmey.sum() - SQRT2))
    write_table("dmey_lowpass.txt", dmey)

    dec, rec = bior37_pair()
    write_table("bior3_7_dec_lo.txt", dec)
    write_table("bior3_7_rec_lo.txt", rec)


if __name__ == "__main__":
    main()
