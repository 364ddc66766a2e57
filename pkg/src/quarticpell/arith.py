"""Exact arithmetic: integer roots, valuations, Gaussian integers and rationals,
and a small ball-arithmetic complex type for the transcendental bits."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

import sympy
from mpmath import libmp as _lm

from .errors import PrecisionExhausted

Rational = Union[int, Fraction]

# ---------------------------------------------------------------- integers


def isqrt(n: int) -> int:
    if not isinstance(n, int):
        raise TypeError("isqrt expects an int")
    if n < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(n)


def _residue_mask(m: int) -> int:
    mask = 0
    for k in range(m):
        mask |= 1 << (k * k % m)
    return mask


_SQ64 = _residue_mask(64)
_SQ63 = _residue_mask(63)
_SQ65 = _residue_mask(65)
_SQ11 = _residue_mask(11)


def exact_sqrt(n: int) -> Optional[int]:
    """Return k with k*k == n, or None. Cheap residue rejections come first."""
    if n < 0:
        return None
    if not (_SQ64 >> (n & 63)) & 1:
        return None
    if n > 1 << 20:
        r = n % 45045  # 63 * 65 * 11
        if not ((_SQ63 >> (r % 63)) & (_SQ65 >> (r % 65)) & (_SQ11 >> (r % 11))) & 1:
            return None
    k = math.isqrt(n)
    return k if k * k == n else None


def is_perfect_square(n: int) -> bool:
    return exact_sqrt(n) is not None


def is_prime(p: int) -> bool:
    return p >= 2 and bool(sympy.isprime(p))


def _int_val(p: int, n: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_val(p: int, x: Rational) -> int:
    """v_p of a nonzero rational."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    return _int_val(p, abs(x.numerator)) - _int_val(p, x.denominator)


def prime_power_base(n: int) -> Optional[tuple[int, int]]:
    """(p, m) with n == p**m and p prime, or None. n == 1 gives (1, 0)."""
    if n == 1:
        return (1, 0)
    if n < 1:
        return None
    f = sympy.factorint(n)
    if len(f) != 1:
        return None
    (p, m), = f.items()
    return (p, m)


# ---------------------------------------------------------- Gaussian numbers


@dataclass(frozen=True, slots=True)
class GaussianInteger:
    re: int
    im: int = 0

    def __add__(self, o):
        o = _as_gi(o)
        return GaussianInteger(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = _as_gi(o)
        return GaussianInteger(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return _as_gi(o) - self

    def __neg__(self):
        return GaussianInteger(-self.re, -self.im)

    def __mul__(self, o):
        o = _as_gi(o)
        return GaussianInteger(self.re * o.re - self.im * o.im,
                               self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out, base = GaussianInteger(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        return GaussianInteger(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def divides(self, o) -> bool:
        o = _as_gi(o)
        n = self.norm()
        if n == 0:
            return o.is_zero()
        t = o * self.conj()
        return t.re % n == 0 and t.im % n == 0

    def exact_div(self, o):
        """self / o, which must be a Gaussian integer."""
        o = _as_gi(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian integer")
        t = self * o.conj()
        if t.re % n or t.im % n:
            raise ArithmeticError(f"{o} does not divide {self}")
        return GaussianInteger(t.re // n, t.im // n)

    def __str__(self):
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


def _as_gi(x) -> GaussianInteger:
    if isinstance(x, GaussianInteger):
        return x
    if isinstance(x, int):
        return GaussianInteger(x, 0)
    raise TypeError(f"cannot treat {type(x).__name__} as a Gaussian integer")


@dataclass(frozen=True, slots=True)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, GaussianInteger):
            return GaussianRational(Fraction(x.re), Fraction(x.im))
        return GaussianRational(Fraction(x), Fraction(0))

    def __add__(self, o):
        o = GaussianRational.of(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = GaussianRational.of(o)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return GaussianRational.of(o) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, o):
        o = GaussianRational.of(o)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GaussianRational.of(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        t = self * o.conj()
        return GaussianRational(t.re / n, t.im / n)

    def __rtruediv__(self, o):
        return GaussianRational.of(o) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(Fraction(1)) / self ** (-k)
        out, base = GaussianRational(Fraction(1)), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_gaussian_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def to_gaussian_integer(self) -> GaussianInteger:
        if not self.is_gaussian_integer():
            raise ArithmeticError(f"{self} is not a Gaussian integer")
        return GaussianInteger(self.re.numerator, self.im.numerator)


# ------------------------------------------------------------ ball arithmetic

DEFAULT_PRECISION = int(os.environ.get("QUARTICPELL_PRECISION", "256"))
MAX_PRECISION = 1 << 14

_N = _lm.round_nearest
_UP = _lm.round_ceiling
_DN = _lm.round_floor
_ZERO = _lm.fzero


def _ulp(x, prec):
    # bound on the rounding error of a value rounded to nearest at prec bits
    return _lm.mpf_shift(_lm.mpf_abs(x), 1 - prec) if x != _ZERO else _ZERO


def _uadd(*xs):
    s = _ZERO
    for x in xs:
        s = _lm.mpf_add(s, x, 64, _UP)
    return s


def _umul(x, y):
    return _lm.mpf_mul(x, y, 64, _UP)


def _udiv(x, y):
    return _lm.mpf_div(x, y, 64, _UP)


def _raw(x, prec):
    """Exact or nearest raw mpf plus the error made by rounding it."""
    if isinstance(x, int):
        v = _lm.from_int(x, prec, _N)
        return v, _ulp(v, prec) if x.bit_length() > prec else _ZERO
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return _raw(x.numerator, prec)
        v = _lm.from_rational(x.numerator, x.denominator, prec, _N)
        return v, _ulp(v, prec)
    if isinstance(x, float):
        return _lm.from_float(x), _ZERO
    raise TypeError(f"unsupported scalar {type(x).__name__}")


@dataclass(frozen=True)
class HighPrecisionComplex:
    """A complex ball: the true value lies within ``err`` of ``re + im*i``.

    Midpoints are raw mpmath floats rounded to ``prec`` bits, the radius is
    always rounded upward.
    """

    re: tuple
    im: tuple
    err: tuple
    prec: int

    # construction
    @classmethod
    def exact(cls, x, prec: int = DEFAULT_PRECISION) -> "HighPrecisionComplex":
        if isinstance(x, HighPrecisionComplex):
            return x
        if isinstance(x, (GaussianInteger, GaussianRational)):
            x = GaussianRational.of(x)
            re, e1 = _raw(x.re, prec)
            im, e2 = _raw(x.im, prec)
            return cls(re, im, _uadd(e1, e2), prec)
        if isinstance(x, complex):
            return cls(_lm.from_float(x.real), _lm.from_float(x.imag), _ZERO, prec)
        re, e = _raw(x, prec)
        return cls(re, _ZERO, e, prec)

    @classmethod
    def from_mpmath(cls, value, prec: int, rel_bits: Optional[int] = None):
        """Wrap a value produced by an mpmath routine at >= prec+10 bits.

        The radius is a relative 2**-(rel_bits) bound, which assumes the routine
        is accurate to a few ulps at the working precision it ran at.
        """
        import mpmath
        v = mpmath.mpc(value)
        re = _lm.mpf_pos(v.real._mpf_, prec, _N)
        im = _lm.mpf_pos(v.imag._mpf_, prec, _N)
        mag = _uadd(_lm.mpf_abs(re), _lm.mpf_abs(im), _lm.from_int(1))
        return cls(re, im, _lm.mpf_shift(mag, -(rel_bits or prec - 4)), prec)

    def _coerce(self, o) -> "HighPrecisionComplex":
        if isinstance(o, HighPrecisionComplex):
            return o
        return HighPrecisionComplex.exact(o, self.prec)

    # ring operations
    def __add__(self, o):
        o = self._coerce(o)
        p = max(self.prec, o.prec)
        re = _lm.mpf_add(self.re, o.re, p, _N)
        im = _lm.mpf_add(self.im, o.im, p, _N)
        return HighPrecisionComplex(re, im, _uadd(self.err, o.err, _ulp(re, p), _ulp(im, p)), p)

    __radd__ = __add__

    def __neg__(self):
        return HighPrecisionComplex(_lm.mpf_neg(self.re), _lm.mpf_neg(self.im), self.err, self.prec)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) + (-self)

    def _mag(self):
        return _uadd(_lm.mpf_abs(self.re), _lm.mpf_abs(self.im))

    def __mul__(self, o):
        o = self._coerce(o)
        p = max(self.prec, o.prec)
        a, b, c, d = self.re, self.im, o.re, o.im
        re = _lm.mpf_sub(_lm.mpf_mul(a, c), _lm.mpf_mul(b, d), p, _N)
        im = _lm.mpf_add(_lm.mpf_mul(a, d), _lm.mpf_mul(b, c), p, _N)
        err = _uadd(_umul(self._mag(), o.err), _umul(o._mag(), self.err),
                    _umul(self.err, o.err), _ulp(re, p), _ulp(im, p))
        return HighPrecisionComplex(re, im, err, p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        p = max(self.prec, o.prec)
        n = _lm.mpf_add(_lm.mpf_mul(o.re, o.re), _lm.mpf_mul(o.im, o.im))
        lo = _lm.mpf_sub(_lm.mpf_sqrt(n, p, _DN), o.err, p, _DN)
        if _lm.mpf_le(lo, _ZERO):
            raise ZeroDivisionError("divisor ball contains zero")
        a, b, c, d = self.re, self.im, o.re, o.im
        re = _lm.mpf_div(_lm.mpf_add(_lm.mpf_mul(a, c), _lm.mpf_mul(b, d)), n, p, _N)
        im = _lm.mpf_div(_lm.mpf_sub(_lm.mpf_mul(b, c), _lm.mpf_mul(a, d)), n, p, _N)
        q = _uadd(_lm.mpf_abs(re), _lm.mpf_abs(im))
        err = _uadd(_udiv(_uadd(self.err, _umul(q, o.err)), lo), _ulp(re, p), _ulp(im, p))
        return HighPrecisionComplex(re, im, err, p)

    def __rtruediv__(self, o):
        return self._coerce(o) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out, base = HighPrecisionComplex.exact(1, self.prec), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        return HighPrecisionComplex(self.re, _lm.mpf_neg(self.im), self.err, self.prec)

    # real-valued helpers
    def is_real(self) -> bool:
        return self.im == _ZERO

    def _require_real(self):
        if not self.is_real():
            raise ValueError("operation defined for real balls only")

    def abs(self) -> "HighPrecisionComplex":
        v = _lm.mpf_hypot(self.re, self.im, self.prec, _N)
        return HighPrecisionComplex(v, _ZERO, _uadd(self.err, _ulp(v, self.prec)), self.prec)

    def _monotone(self, f) -> "HighPrecisionComplex":
        # f(x, prec, rnd) increasing on the ball
        self._require_real()
        p = self.prec
        v = f(self.re, p, _N)
        hi = f(_lm.mpf_add(self.re, self.err, p + 8, _UP), p + 8, _UP)
        lo = f(_lm.mpf_sub(self.re, self.err, p + 8, _DN), p + 8, _DN)
        up, down = _lm.mpf_sub(hi, v, 64, _UP), _lm.mpf_sub(v, lo, 64, _UP)
        spread = up if _lm.mpf_ge(up, down) else down
        return HighPrecisionComplex(v, _ZERO, _uadd(spread, _ulp(v, p), _ulp(v, p)), p)

    def sqrt(self) -> "HighPrecisionComplex":
        self._require_real()
        if not _lm.mpf_gt(_lm.mpf_sub(self.re, self.err, self.prec, _DN), _ZERO):
            raise ValueError("sqrt of a ball reaching zero or below")
        return self._monotone(_lm.mpf_sqrt)

    def root(self, n: int) -> "HighPrecisionComplex":
        self._require_real()
        if not _lm.mpf_gt(_lm.mpf_sub(self.re, self.err, self.prec, _DN), _ZERO):
            raise ValueError("root of a ball reaching zero or below")
        return self._monotone(lambda x, p, r: _lm.mpf_nthroot(x, n, p, r))

    def exp(self) -> "HighPrecisionComplex":
        return self._monotone(_lm.mpf_exp)

    def expi(self) -> "HighPrecisionComplex":
        """e^{i x} for a real ball x."""
        self._require_real()
        p = self.prec
        c, s = _lm.mpf_cos_sin(self.re, p, _N)
        err = _uadd(self.err, _ulp(c, p), _ulp(s, p), _ulp(c, p), _ulp(s, p))
        return HighPrecisionComplex(c, s, err, p)

    def arg(self) -> "HighPrecisionComplex":
        """Principal argument in (-pi, pi]; refuses balls touching the cut."""
        p = self.prec
        mag = _lm.mpf_hypot(self.re, self.im, p, _DN)
        if not _lm.mpf_gt(mag, _lm.mpf_shift(self.err, 1)):
            raise ValueError("argument of a ball too close to zero")
        if _lm.mpf_lt(self.re, _ZERO) and _lm.mpf_le(_lm.mpf_abs(self.im), self.err):
            raise ValueError("ball straddles the branch cut of arg")
        v = _lm.mpf_atan2(self.im, self.re, p, _N)
        # |arg z' - arg z| <= asin(e/|z|) <= 2 e/|z|
        err = _uadd(_udiv(_lm.mpf_shift(self.err, 1), mag), _ulp(v, p), _ulp(v, p))
        return HighPrecisionComplex(v, _ZERO, err, p)

    # comparisons on real balls: True / False / None when undecided
    def lt(self, o) -> Optional[bool]:
        o = self._coerce(o)
        self._require_real()
        o._require_real()
        gap = _lm.mpf_sub(o.re, self.re, max(self.prec, o.prec) + 8, _N)
        rad = _uadd(self.err, o.err, _ulp(gap, self.prec))
        if _lm.mpf_gt(gap, rad):
            return True
        if _lm.mpf_le(gap, _lm.mpf_neg(rad)):
            return False
        return None

    def gt(self, o) -> Optional[bool]:
        return self._coerce(o).lt(self)

    # inspection
    def mid(self) -> complex:
        return complex(_lm.to_float(self.re), _lm.to_float(self.im))

    def radius(self) -> float:
        return _lm.to_float(self.err)

    def to_mpmath(self):
        import mpmath
        return mpmath.mpc(mpmath.mpf(self.re), mpmath.mpf(self.im))

    def contains(self, other: "HighPrecisionComplex") -> bool:
        """Whether other's ball lies inside this one."""
        d = _lm.mpf_hypot(_lm.mpf_sub(self.re, other.re), _lm.mpf_sub(self.im, other.im), 64, _UP)
        return _lm.mpf_le(_uadd(d, other.err), self.err)

    def decimal(self, digits: int = 20) -> str:
        re = _lm.to_str(self.re, digits)
        if self.is_real():
            return re
        return f"{re}+({_lm.to_str(self.im, digits)})i"

    def __repr__(self):
        return f"HPC({self.decimal(12)} ± {_lm.to_str(self.err, 3)}, prec={self.prec})"


HPC = HighPrecisionComplex


def hpc(x, prec: int = DEFAULT_PRECISION) -> HighPrecisionComplex:
    return HighPrecisionComplex.exact(x, prec)


def hp_pi(prec: int = DEFAULT_PRECISION) -> HighPrecisionComplex:
    v = _lm.mpf_pi(prec, _N)
    return HighPrecisionComplex(v, _ZERO, _uadd(_ulp(v, prec), _ulp(v, prec)), prec)


def decide(check: Callable[[int], Optional[bool]], prec: int = DEFAULT_PRECISION,
           max_prec: int = MAX_PRECISION) -> bool:
    """Run ``check(prec)``; while it cannot decide, double the precision."""
    p = prec
    while p <= max_prec:
        out = check(p)
        if out is not None:
            return out
        p *= 2
    raise PrecisionExhausted(f"comparison undecided up to {max_prec} bits")
