"""Dense polynomial arithmetic over prime fields and over the integers.

Two resultant routines with opposite trade-offs:

* ``resultant_prs``  — Euclidean polynomial-remainder-sequence over GF(p),
  O(d^2) field operations, usable at degree ~5000;
* ``resultant_sylvester`` — exact integer determinant of the Sylvester
  matrix (fraction-free Bareiss elimination), O(d^3), capped at small
  degree; serves as the independent oracle for the fast path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "MINUS_INFINITY",
    "CapacityError",
    "Prime",
    "ModPoly",
    "IntPoly",
    "mp_mul",
    "mp_rem",
    "mp_gcd",
    "resultant_prs",
    "resultant_sylvester",
]

#: degree of the zero polynomial — a real minus infinity, never -1-as-integer,
#: so arithmetic on degrees (skip rules, exponent bookkeeping) stays honest.
MINUS_INFINITY = float("-inf")

# Magnitude ceiling for deferred modular reduction inside the PRS: keep every
# intermediate below 2^62 so int64 products/sums cannot wrap.
_INT64_SAFE = 1 << 62


class CapacityError(ValueError):
    """An input exceeds a documented size cap (not a math error)."""


# --------------------------------------------------------------------------
# primality
# --------------------------------------------------------------------------

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin; the witness set above is known exact for
    # every n < 3.3e24, far beyond the 2^31 constructor cap.
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == small:
            return True
        if n % small == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Prime:
    """A prime modulus, primality asserted at construction.

    Values are restricted to < 2^31 so that a product of two reduced
    coefficients fits comfortably in 64-bit intermediates.
    """

    value: int

    def __post_init__(self):
        if not isinstance(self.value, int):
            raise TypeError(f"prime must be an int, got {type(self.value).__name__}")
        if not 2 <= self.value < 2**31:
            raise ValueError(f"prime must be in [2, 2^31), got {self.value}")
        if not _is_prime(self.value):
            raise ValueError(f"{self.value} is not prime")

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------


def _trim(a: np.ndarray) -> np.ndarray:
    k = len(a)
    while k > 0 and a[k - 1] == 0:
        k -= 1
    return a[:k]


class ModPoly:
    """Dense polynomial over GF(p); coeffs[k] is the coefficient of x^k.

    Canonical form: all coefficients in [0, p-1], no trailing zeros.
    Instances are immutable after construction.
    """

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus: Prime, coeffs):
        if not isinstance(modulus, Prime):
            raise TypeError("modulus must be a Prime")
        p = modulus.value
        arr = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs)
        if arr.dtype == object or arr.dtype.kind not in "iu":
            arr = np.array([int(c) % p for c in arr], dtype=np.int64)
        else:
            arr = np.remainder(arr.astype(np.int64, copy=True), p)
        arr = _trim(arr).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("ModPoly is immutable")

    @classmethod
    def zero(cls, modulus: Prime) -> "ModPoly":
        return cls(modulus, [])

    @classmethod
    def one(cls, modulus: Prime) -> "ModPoly":
        return cls(modulus, [1])

    def degree(self):
        """Degree, with the zero polynomial reporting MINUS_INFINITY."""
        return MINUS_INFINITY if len(self.coeffs) == 0 else len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def leading(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return int(self.coeffs[-1])

    def __call__(self, x: int) -> int:
        p = self.modulus.value
        acc = 0
        for c in self.coeffs[::-1]:
            acc = (acc * x + int(c)) % p
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModPoly)
            and self.modulus == other.modulus
            and len(self.coeffs) == len(other.coeffs)
            and bool(np.all(self.coeffs == other.coeffs))
        )

    def __hash__(self):
        return hash((self.modulus, self.coeffs.tobytes()))

    def __repr__(self):
        return f"ModPoly(mod {self.modulus.value}, {list(map(int, self.coeffs))})"


class IntPoly:
    """Dense polynomial with exact arbitrary-size integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls([])

    @classmethod
    def one(cls) -> "IntPoly":
        return cls([1])

    def degree(self):
        return MINUS_INFINITY if not self.coeffs else len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero() or other.is_zero():
            return IntPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    def scale(self, k: int) -> "IntPoly":
        return IntPoly([k * c for c in self.coeffs])

    def shift(self, m: int) -> "IntPoly":
        """Multiply by x^m."""
        if self.is_zero():
            return self
        return IntPoly((0,) * m + self.coeffs)

    def reduce_mod(self, modulus: Prime) -> ModPoly:
        return ModPoly(modulus, self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"


# --------------------------------------------------------------------------
# field operations
# --------------------------------------------------------------------------


def _require_same_modulus(f: ModPoly, g: ModPoly):
    if f.modulus != g.modulus:
        raise ValueError(
            f"modulus mismatch: {f.modulus.value} vs {g.modulus.value}"
        )


def mp_mul(f: ModPoly, g: ModPoly) -> ModPoly:
    """Product in GF(p)[x]."""
    _require_same_modulus(f, g)
    p = f.modulus.value
    if f.is_zero() or g.is_zero():
        return ModPoly.zero(f.modulus)
    fa, ga = f.coeffs, g.coeffs
    # convolution sums (p-1)^2 * min(len) — use the one-shot path only when
    # that provably fits in int64, else reduce row by row
    if (p - 1) * (p - 1) * min(len(fa), len(ga)) < _INT64_SAFE:
        out = np.remainder(np.convolve(fa, ga), p)
    else:
        out = np.zeros(len(fa) + len(ga) - 1, dtype=np.int64)
        for i, c in enumerate(ga):
            ci = int(c)
            if ci:
                out[i : i + len(fa)] = np.remainder(out[i : i + len(fa)] + ci * fa, p)
    return ModPoly(f.modulus, out)


def mp_rem(f: ModPoly, g: ModPoly) -> ModPoly:
    """Remainder of f divided by g in GF(p)[x] (deg r < deg g)."""
    _require_same_modulus(f, g)
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    p = f.modulus.value
    dg = len(g.coeffs) - 1
    if len(f.coeffs) - 1 < dg:
        return f
    fv = f.coeffs.astype(np.int64, copy=True)
    gv = g.coeffs
    inv = pow(int(gv[dg]), p - 2, p)
    top = len(fv) - 1
    while top >= dg:
        c = int(fv[top]) * inv % p
        if c:
            fv[top - dg : top + 1] = np.remainder(fv[top - dg : top + 1] - c * gv, p)
        top -= 1
        while top >= 0 and fv[top] == 0:
            top -= 1
    return ModPoly(f.modulus, fv[: top + 1] if top >= 0 else [])


def mp_gcd(f: ModPoly, g: ModPoly) -> ModPoly:
    """Monic gcd in GF(p)[x] (Euclid); gcd(0, 0) = 0."""
    _require_same_modulus(f, g)
    p = f.modulus.value
    while not g.is_zero():
        f, g = g, mp_rem(f, g)
    if f.is_zero():
        return f
    inv = pow(f.leading(), p - 2, p)
    return ModPoly(f.modulus, np.remainder(f.coeffs * inv, p))


# --------------------------------------------------------------------------
# resultants
# --------------------------------------------------------------------------


def resultant_prs(f: ModPoly, g: ModPoly) -> int:
    """Res(f, g) over GF(p) via the Euclidean remainder sequence.

    Same value as the Sylvester determinant reduced mod p.  Bookkeeping per
    division step:  Res(f, g) = (-1)^(df*dg) * lc(g)^(df - deg r) * Res(g, r),
    ending with Res(f, c) = c^(deg f) for a constant c.

    Modular reduction of the work arrays is deferred while a runtime bound
    proves every intermediate still fits in int64; both live polynomials are
    reduced together when the bound would be breached (reducing only one lets
    the two-term recurrence r_{k+1} = r_{k-1} - q*r_k compound the other line
    without limit).
    """
    _require_same_modulus(f, g)
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials is undefined")
    if f.is_zero() or g.is_zero():
        return 0
    p = f.modulus.value
    fv = f.coeffs.astype(np.int64, copy=True)
    gv = g.coeffs.astype(np.int64, copy=True)
    res = 1
    df, dg = len(fv) - 1, len(gv) - 1
    if df < dg:
        if (df * dg) % 2:
            res = p - 1
        fv, gv, df, dg = gv, fv, dg, df
    bf = bg = float(p - 1)  # magnitude bounds of the two live arrays
    while dg > 0:
        lg = int(gv[dg]) % p
        inv = pow(lg, p - 2, p)
        delta = df - dg
        # worst-case magnitude after this division: |r| <= bf + (delta+1)*(p-1)*bg
        if bf + (delta + 1) * (p - 1) * bg >= _INT64_SAFE:
            np.remainder(fv, p, out=fv)
            np.remainder(gv, p, out=gv)
            bf = bg = float(p - 1)
        # quotient coefficients, highest first, tracked scalar-side
        q = [0] * (delta + 1)
        ftop = [int(fv[df - i]) % p for i in range(delta + 1)]
        for i in range(delta + 1):
            c = ftop[i] * inv % p
            q[i] = c
            if c:
                for j in range(i + 1, delta + 1):
                    gi = dg - (j - i)
                    if gi >= 0:
                        ftop[j] = (ftop[j] - c * int(gv[gi])) % p
        qa = np.array(q[::-1], dtype=np.int64)
        fv[: df + 1] -= np.convolve(qa, gv)
        bf = bf + (delta + 1) * (p - 1) * bg
        dr = dg - 1
        while dr >= 0 and int(fv[dr]) % p == 0:
            dr -= 1
        if dr < 0:
            return 0
        if (df * dg) % 2:
            res = p - res
        res = res * pow(lg, df - dr, p) % p
        fv, gv = gv, fv[: dr + 1]
        bf, bg = bg, bf
        df, dg = dg, dr
    return res * pow(int(gv[0]) % p, df, p) % p


def _sylvester_matrix(f: IntPoly, g: IntPoly):
    d, e = f.degree(), g.degree()
    n = d + e
    rows = []
    frow = list(reversed(f.coeffs))  # leading first
    grow = list(reversed(g.coeffs))
    for i in range(e):
        rows.append([0] * i + frow + [0] * (e - 1 - i))
    for i in range(d):
        rows.append([0] * i + grow + [0] * (d - 1 - i))
    return rows, n


def resultant_sylvester(f: IntPoly, g: IntPoly) -> int:
    """Exact integer Res(f, g): Bareiss determinant of the Sylvester matrix.

    Degree-capped oracle path; use resultant_prs for anything big.
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials is undefined")
    if f.is_zero() or g.is_zero():
        return 0
    d, e = f.degree(), g.degree()
    if d > 200 or e > 200:
        raise CapacityError(f"degree cap 200 exceeded: {d}, {e}")
    if d == 0:
        return f.coeffs[0] ** e
    if e == 0:
        return g.coeffs[0] ** d
    m, n = _sylvester_matrix(f, g)
    # fraction-free Bareiss elimination with row pivoting
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
