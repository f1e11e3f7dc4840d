"""Exact scalar arithmetic over Q and prime fields F_p.

Characteristic 0 values are arbitrary-precision rationals; characteristic p
values are residues in [0, p).  Everything is immutable and exact, so the
algebraic identities checked elsewhere in this package are true equalities,
never approximations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import AlgebraError, FieldMismatch

MAX_PRIME = 2**31
DEFAULT_SCAN_BOUND = 10**4


def is_prime(n: int) -> bool:
    """Deterministic trial division; adequate for the p < 2^31 range we allow."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: Q when characteristic is 0, otherwise F_p, p prime."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c == 0:
            return
        if c >= MAX_PRIME:
            raise AlgebraError(f"characteristic {c} exceeds the 2^31 bound")
        if not is_prime(c):
            raise AlgebraError(f"characteristic {c} is not 0 or a prime")

    @property
    def label(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse the field spec format: "Q" or "F<p>" (case-sensitive)."""
        if text == "Q":
            return cls(0)
        if text.startswith("F") and text[1:].isdigit():
            return cls(int(text[1:]))
        raise AlgebraError(f"bad field spec {text!r}: expected 'Q' or 'F<p>'")

    def scalar(self, value) -> "Scalar":
        """Coerce an int, Fraction, or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"scalar of {value.field.label} used in {self.label}")
            return value
        p = self.characteristic
        if p == 0:
            return Scalar(self, Fraction(value))
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise AlgebraError(f"denominator {value.denominator} is 0 in F{p}")
            return Scalar(self, value.numerator * pow(den, p - 2, p) % p)
        return Scalar(self, int(value) % p)

    @property
    def zero(self) -> "Scalar":
        return self.scalar(0)

    @property
    def one(self) -> "Scalar":
        return self.scalar(1)

    def nonzero_elements(self):
        """Iterate over F_p* in residue order; an error over Q."""
        if self.characteristic == 0:
            raise AlgebraError("cannot enumerate the infinite field Q")
        return (self.scalar(v) for v in range(1, self.characteristic))


class Scalar:
    """An exact element of Q or F_p.

    Representations are canonical: rationals are stored normalized by
    fractions.Fraction, residues lie in [0, p).  Equal scalars therefore
    compare and hash identically.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        # Trusted constructor; go through FieldSpec.scalar for coercion.
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(
                    f"cannot mix {self.field.label} and {other.field.label}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.characteristic
        v = self.value + o.value
        return Scalar(self.field, v % p if p else v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.characteristic
        v = self.value - o.value
        return Scalar(self.field, v % p if p else v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.characteristic
        v = self.value * o.value
        return Scalar(self.field, v % p if p else v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __neg__(self):
        p = self.field.characteristic
        return Scalar(self.field, -self.value % p if p else -self.value)

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        p = self.field.characteristic
        if p == 0:
            return Scalar(self.field, 1 / self.value)
        return Scalar(self.field, pow(self.value, p - 2, p))

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        p = self.field.characteristic
        if p:
            return Scalar(self.field, pow(self.value, k, p))
        return Scalar(self.field, self.value**k)

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self == self.field.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def sort_key(self):
        """Total order used for deterministic tie-breaking (numeric / residue)."""
        return self.value

    def __repr__(self):
        return f"Scalar({self.value!r} over {self.field.label})"

    def __str__(self):
        v = self.value
        if isinstance(v, Fraction) and v.denominator != 1:
            return f"{v.numerator}/{v.denominator}"
        return str(int(v))


def _comb_mod_prime(a: int, b: int, p: int) -> int:
    """C(a, b) mod p for 0 <= b <= a < p, without forming the big integer."""
    if b > a - b:
        b = a - b
    num = 1
    den = 1
    for t in range(1, b + 1):
        num = num * ((a - b + t) % p) % p
        den = den * t % p
    return num * pow(den, p - 2, p) % p


def binom(i: int, j: int, field: FieldSpec) -> Scalar:
    """The binomial coefficient C(i, j) as an element of the field.

    Over F_p this uses the base-p digit product (Lucas), so indices up to
    10^6 and beyond never touch a big integer.
    """
    if i < 0 or j < 0:
        raise AlgebraError("binomial indices must be natural numbers")
    if j > i:
        return field.zero
    p = field.characteristic
    if p == 0:
        return field.scalar(math.comb(i, j))
    res = 1
    while i or j:
        di, dj = i % p, j % p
        if dj > di:
            return field.zero
        res = res * _comb_mod_prime(di, dj, p) % p
        i //= p
        j //= p
    return field.scalar(res)


def _exact_int_root(m: int, d: int):
    """The exact d-th root of m >= 0, or None.  Binary search; fully exact."""
    if m in (0, 1):
        return m
    lo, hi = 1, 2
    while hi**d < m:
        lo, hi = hi, hi * 2
    while lo <= hi:
        mid = (lo + hi) // 2
        md = mid**d
        if md == m:
            return mid
        if md < m:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def nth_roots(c: Scalar, d: int, scan_bound: int = DEFAULT_SCAN_BOUND) -> list:
    """All field elements mu with mu^d = c, sorted by the canonical order.

    Over F_p this is an exhaustive scan of F_p* (p must not exceed
    scan_bound); over Q it is integer root extraction on numerator and
    denominator, so the result has 0, 1, or 2 elements.
    """
    if d < 1:
        raise AlgebraError("root order must be a positive integer")
    if c.is_zero():
        raise AlgebraError("nth_roots requires a nonzero argument")
    field = c.field
    p = field.characteristic
    if p:
        if p > scan_bound:
            raise AlgebraError(
                f"p = {p} exceeds the root-scan bound {scan_bound}"
            )
        return [m for m in field.nonzero_elements() if m**d == c]
    v = c.value
    num, den = abs(v.numerator), v.denominator
    rn = _exact_int_root(num, d)
    rd = _exact_int_root(den, d)
    if rn is None or rd is None:
        return []
    r = Fraction(rn, rd)
    if d % 2 == 1:
        root = r if v > 0 else -r
        return [field.scalar(root)]
    if v < 0:
        return []
    roots = [field.scalar(-r), field.scalar(r)]
    return roots
