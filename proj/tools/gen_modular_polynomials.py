#!/usr/bin/env python3
"""Generate classical modular polynomial data files phi_<l>.txt.

Exact integer computation from the q-expansion of j: the power sums of
j(l*tau) and j((tau+k)/l), k = 0..l-1, are written as polynomials in j(tau)
and converted to elementary symmetric functions with Newton's identities.

Usage: gen_modular_polynomials.py OUTDIR [l ...]
"""
import sys
from pathlib import Path


def sigma3(n):
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def series_mul(a, b, prec):
    # a, b: lists indexed by exponent offset; plain power series in q, length prec
    out = [0] * prec
    for i, x in enumerate(a):
        if x == 0:
            continue
        for k in range(0, prec - i):
            y = b[k]
            if y:
                out[i + k] += x * y
    return out


def series_inv(a, prec):
    # a[0] must be 1
    out = [0] * prec
    out[0] = 1
    for n in range(1, prec):
        s = 0
        for k in range(1, n + 1):
            if k < len(a):
                s += a[k] * out[n - k]
        out[n] = -s
    return out


def j_series(prec):
    """Coefficients c[n] of q*j(q) = sum c[n] q^n, n = 0..prec-1."""
    e4 = [1] + [240 * sigma3(n) for n in range(1, prec)]
    e4cubed = series_mul(series_mul(e4, e4, prec), e4, prec)
    # Delta / q = prod (1 - q^n)^24
    eta = [0] * prec
    eta[0] = 1
    for n in range(1, prec):
        # multiply by (1 - q^n)
        for i in range(prec - 1, n - 1, -1):
            eta[i] -= eta[i - n]
    d = [1] + [0] * (prec - 1)
    for _ in range(24):
        d = series_mul(d, eta, prec)
    return series_mul(e4cubed, series_inv(d, prec), prec)


def main():
    out = Path(sys.argv[1])
    levels = [int(x) for x in sys.argv[2:]] or [2, 3, 5, 7, 11, 13]
    out.mkdir(parents=True, exist_ok=True)
    for l in levels:
        write_level(out, l)


def write_level(out, l):
    n = l + 1
    maxdeg = l * n  # largest pole order among power sums
    prec = maxdeg + 2
    jq = j_series(prec)  # q*j(q)

    # powers of q*j(q): (q j)^m as power series, m = 0..maxdeg
    pw = [[1] + [0] * (prec - 1)]
    for m in range(1, maxdeg + 1):
        pw.append(series_mul(pw[-1], jq, prec))

    def jpow_laurent(m):
        # j^m = q^-m * (q j)^m, keep exponents -m..0
        return {e - m: pw[m][e] for e in range(0, m + 1)}

    def to_poly_in_j(ser, deg):
        # ser: dict exponent -> coeff for exponents -deg..0; returns poly coeffs in j
        ser = dict(ser)
        poly = [0] * (deg + 1)
        for d in range(deg, -1, -1):
            c = ser.get(-d, 0)
            if c:
                poly[d] = c
                for e, v in jpow_laurent(d).items():
                    ser[e] = ser.get(e, 0) - c * v
        for e, v in ser.items():
            if e <= 0 and v != 0:
                raise RuntimeError("non-polynomial residue")
        return poly

    power_sums = []
    for m in range(1, n + 1):
        # j(l tau)^m: exponents multiplied by l, keep <= 0
        ser = {}
        # j^m in q, needs exponents up to 0 after scaling by l: e*l <= 0 -> e <= 0
        for e in range(-m, 1):
            v = pw[m][e + m]
            if v:
                ser[e * l] = ser.get(e * l, 0) + v
        # sum_k j((tau+k)/l)^m = l * sum_{e = 0 mod l} a_e q^(e/l)
        for e in range(-m, 1):
            if e % l == 0:
                v = pw[m][e + m]
                if v:
                    ser[e // l] = ser.get(e // l, 0) + l * v
        power_sums.append(to_poly_in_j(ser, l * m))

    def padd(a, b):
        r = [0] * max(len(a), len(b))
        for i, x in enumerate(a):
            r[i] += x
        for i, x in enumerate(b):
            r[i] += x
        return r

    def pmul(a, b):
        r = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for k, y in enumerate(b):
                    r[i + k] += x * y
        return r

    e = [[1]]
    for m in range(1, n + 1):
        acc = [0]
        for i in range(1, m + 1):
            term = pmul(e[m - i], power_sums[i - 1])
            if i % 2 == 0:
                term = [-x for x in term]
            acc = padd(acc, term)
        if any(x % m for x in acc):
            raise RuntimeError("inexact Newton division")
        e.append([x // m for x in acc])

    terms = {}
    # Phi(X, Y) = sum_m (-1)^m e_m(Y) X^(n-m)
    for m in range(0, n + 1):
        sign = -1 if m % 2 else 1
        for dy, c in enumerate(e[m]):
            if c:
                terms[(n - m, dy)] = terms.get((n - m, dy), 0) + sign * c
    for (i, k), c in terms.items():
        if terms.get((k, i)) != c:
            raise RuntimeError(f"asymmetric result at level {l}")
    path = out / f"phi_{l}.txt"
    with open(path, "w") as fh:
        fh.write(f"# classical modular polynomial of level {l}\n")
        fh.write("# one term per line: exponent_X exponent_Y coefficient\n")
        for (i, k) in sorted(terms):
            c = terms[(i, k)]
            if c:
                fh.write(f"{i} {k} {c}\n")
    print(f"level {l}: {len([c for c in terms.values() if c])} terms -> {path}")


if __name__ == "__main__":
    main()
