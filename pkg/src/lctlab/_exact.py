"""Integer and rational linear-algebra helpers shared by the polyhedral code."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings; floats only if exactly representable."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        f = Fraction(x)
        if f.denominator > 2**20:
            raise ValueError(f"float {x!r} is not a short rational; pass a string 'p/q'")
        return f
    return Fraction(x)


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = lcm(d, v.denominator)
    return d


def integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale every row by its own denominator lcm; row directions are preserved."""
    out = []
    for r in rows:
        d = common_denominator(r)
        out.append([int(v * d) for v in r])
    return out


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for a in v:
        g = gcd(g, a)
    if g in (0, 1):
        return tuple(v)
    return tuple(a // g for a in v)


def det_int(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Exact rank by elimination over the rationals."""
    a = [[Fraction(v) for v in r] for r in rows]
    if not a:
        return 0
    ncol = len(a[0])
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        for i in range(r + 1, len(a)):
            f = a[i][c] / pr[c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], pr)]
        r += 1
        if r == len(a):
            break
    return r


def affine_dim(points: Sequence[Sequence[Fraction]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])
