#!/usr/bin/env python3
"""Dev-time oracle: regenerates tests/oracle/goldens.hpp.

Uses mpmath at 40 digits for special-function values and scipy's Bessel
routines with per-arch Gauss-Legendre rules for the long partial integrals.
Nothing here shares code with the C++ implementation.
"""
import sys
import numpy as np
from mpmath import mp, mpf, besselj, bessely, gamma, sqrt, pi, diff, findroot, quad, exp, cos, sin
from scipy import special, optimize

mp.dps = 40
Q = mpf(1) / 4


def W(z, c1, c2):
    return c2 * bessely(Q, z) - c1 * besselj(Q, z)


def zarg(eta, mu):
    return sqrt(2) * mu * eta**2 / 8


def f_shape(eta, mu, c1, c2):
    return pi**2 / 64 * eta * W(zarg(eta, mu), c1, c2) ** 2


def f_literal(eta, mu, c1, c2):
    z = zarg(eta, mu)
    num = 2 * (-besselj(Q, z) * c1 + bessely(Q, z) * c2) ** 2
    den = eta**3 * mu**2 * (besselj(-3 * Q, z) * bessely(Q, z) - besselj(Q, z) * bessely(-3 * Q, z)) ** 2
    return num / den


def q_closed(eta, m, c1, c2):
    g = lambda e: -e**2 * m**2 / (c1 * 8 * besselj(Q, m * e**2 / (4 * sqrt(2))) - c2 * 8 * bessely(Q, m * e**2 / (4 * sqrt(2))))
    return diff(g, eta) / (2 * m**2)


def eta_roots(mu, c1, c2, count):
    roots = []
    z = mpf("0.05")
    step = mpf("0.1")
    prev = W(z, c1, c2)
    while len(roots) < count:
        zn = z + step
        cur = W(zn, c1, c2)
        if prev * cur < 0:
            r = findroot(lambda s: W(s, c1, c2), (z, zn), solver="anderson")
            roots.append(sqrt(8 * r / (sqrt(2) * mu)))
        z, prev = zn, cur
    return roots


def partial_integrals(limits, mu, c1, c2):
    """F(H) = int_0^H f d(eta), arch-aligned 24-point Gauss-Legendre in eta."""
    def Wnp(z):
        return c2 * special.yv(0.25, z) - c1 * special.jv(0.25, z)

    # exact zeros up to z=200, then pi-spaced continuation (f is smooth, the
    # panel ends need not sit on zeros)
    zs = []
    grid = np.arange(0.05, 200.0, 0.1)
    vals = Wnp(grid)
    for a, b, va, vb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if va * vb < 0:
            zs.append(optimize.brentq(Wnp, a, b, xtol=1e-15))
    zmax = np.sqrt(2) * mu * max(limits) ** 2 / 8
    k = np.arange(1, int((zmax - zs[-1]) / np.pi) + 2)
    zs = np.concatenate([zs, zs[-1] + k * np.pi])
    etas = np.sqrt(8 * zs / (np.sqrt(2) * mu))
    x, w = np.polynomial.legendre.leggauss(24)
    out = []
    for H in limits:
        b = np.concatenate([[0.0], etas[etas < H], [H]])
        total = 0.0
        chunk = 200000
        for s in range(0, len(b) - 1, chunk):
            lo = b[s:s + chunk]
            hi = b[s + 1:s + 1 + chunk]
            lo = lo[: len(hi)]
            mid = 0.5 * (lo + hi)
            half = 0.5 * (hi - lo)
            pts = mid[:, None] + half[:, None] * x[None, :]
            fz = np.pi**2 / 64 * pts * Wnp(np.sqrt(2) * mu * pts**2 / 8) ** 2
            total += float(np.sum(half * (fz @ w)))
        out.append(total)
    return out


def main():
    lines = []
    emit = lines.append
    emit("// Generated by tests/oracle/gen_goldens.py -- do not edit by hand.")
    emit("#pragma once")
    emit("")
    emit("#include <array>")
    emit("")
    emit("namespace golden {")
    emit("")
    emit("struct Point { double x; double value; };")
    emit("struct OrderPoint { int num; double z; double value; };")
    emit("")

    gx = [mpf("1.25"), mpf("0.1"), mpf("3.7"), mpf("10.3"), mpf("27.5"), mpf("-2.5"), mpf("-4.5"), mpf("-0.3")]
    emit("inline constexpr std::array<Point, %d> kGamma{{" % len(gx))
    for x in gx:
        emit("    {%s, %s}," % (mp.nstr(x, 20), mp.nstr(gamma(x), 20)))
    emit("}};")
    emit("")

    orders = [1, -3, -1, 3, 5, -7, 9, -11]
    zs = [mpf("0.001"), mpf("0.5"), mpf("1"), mpf("2"), mpf("7.5"), mpf("12.25"), mpf("15"), mpf("20"), mpf("25"), mpf("60.5"), mpf("1000"), mpf("9999.5")]
    for name, fn in (("kBesselJ", besselj), ("kBesselY", bessely)):
        pts = [(n, z, fn(mpf(n) / 4, z)) for n in orders for z in zs]
        emit("// order = num/4")
        emit("inline constexpr std::array<OrderPoint, %d> %s{{" % (len(pts), name))
        for n, z, v in pts:
            emit("    {%d, %s, %s}," % (n, mp.nstr(z, 20), mp.nstr(v, 20)))
        emit("}};")
        emit("")

    z = mpf(3)
    emit("// k-th z-derivatives of J_{1/4}, Y_{1/4} at z = 3, k = 1..3")
    for name, fn in (("kJQuarterDerivAt3", besselj), ("kYQuarterDerivAt3", bessely)):
        vals = [diff(lambda s: fn(Q, s), z, k) for k in (1, 2, 3)]
        emit("inline constexpr std::array<double, 3> %s{%s};" % (name, ", ".join(mp.nstr(v, 20) for v in vals)))
    emit("")

    one = mpf(1)
    emit("// m = 1, hbar = 1, c1 = c2 = 1")
    emit("inline constexpr double kShapeDensityAt1 = %s;" % mp.nstr(f_shape(one, one, one, one), 20))
    emit("inline constexpr double kShapeDensityLiteralAt1 = %s;" % mp.nstr(f_literal(one, one, one, one), 20))
    emit("inline constexpr double kShapeDensityAt0p1 = %s;" % mp.nstr(f_shape(mpf("0.1"), one, one, one), 20))
    emit("inline constexpr double kShapeDensityAt10 = %s;" % mp.nstr(f_shape(mpf(10), one, one, one), 20))
    emit("inline constexpr double kShapeDensityM2C3m1At2p5 = %s;" % mp.nstr(f_shape(mpf("2.5"), mpf(2), mpf(3), mpf(-1)), 20))
    emit("inline constexpr double kQuantumPotentialClosedAt1 = %s;" % mp.nstr(q_closed(one, one, one, one), 20))
    # printed wave function at x = y = 1, t = 1
    xi = mpf(2)
    zz = zarg(xi, one)
    amp = sqrt(2) * (-besselj(Q, zz) + bessely(Q, zz)) / (xi ** mpf(1.5) * (besselj(-3 * Q, zz) * bessely(Q, zz) - besselj(Q, zz) * bessely(-3 * Q, zz)))
    ph = xi**2 / 4
    emit("inline constexpr double kPsiPrintedReAt11 = %s;" % mp.nstr(amp * cos(ph), 20))
    emit("inline constexpr double kPsiPrintedImAt11 = %s;" % mp.nstr(amp * sin(ph), 20))
    emit("")

    for tag, (mu, c1, c2) in (("Default", (one, one, one)), ("C2Zero", (one, one, mpf(0))), ("C1Zero", (one, mpf(0), one))):
        r = eta_roots(mu, c1, c2, 12)
        emit("inline constexpr std::array<double, 12> kRootsEta%s{%s};" % (tag, ", ".join(mp.nstr(v, 20) for v in r)))
    emit("")

    limits = [10.0, 100.0, 1000.0, 10000.0]
    F = partial_integrals(limits, 1.0, 1.0, 1.0)
    emit("// int_0^H f d(eta), m = c1 = c2 = 1, scipy Bessel + 24-point Gauss-Legendre per arch")
    emit("inline constexpr std::array<Point, 4> kPartialIntegrals{{")
    for H, v in zip(limits, F):
        emit("    {%r, %r}," % (H, v))
    emit("}};")
    emit("")
    emit("}  // namespace golden")
    sys.stdout.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
