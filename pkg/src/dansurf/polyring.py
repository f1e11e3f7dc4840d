"""Sparse exact multivariate polynomials over the fixed alphabet x, y, z, T, U, S.

Monomials are 6-tuples of exponents in the internal order (z, y, x, T, U, S);
the term order for printing and tie-breaking is graded lexicographic with
z > y > x > T > U > S.  Weighted degrees are exact rationals, so gradings
with fractional parameter weights work without rounding.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import AlgebraError, FieldMismatch, NotDivisible
from .scalars import FieldSpec, Scalar

VARS = ("z", "y", "x", "T", "U", "S")
VAR_INDEX = {v: i for i, v in enumerate(VARS)}
ZERO_MONO = (0, 0, 0, 0, 0, 0)
NEG_INF = float("-inf")

# Factor order used when rendering a single monomial (x first, as in x^2*y).
PRINT_ORDER = ("x", "y", "z", "T", "U", "S")


def mono(**exps) -> tuple:
    """Build a monomial tuple from keyword exponents, e.g. mono(x=2, y=1)."""
    m = [0] * 6
    for var, e in exps.items():
        if var not in VAR_INDEX:
            raise AlgebraError(f"unknown variable {var!r}")
        m[VAR_INDEX[var]] = e
    return tuple(m)


def _mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(i + j for i, j in zip(a, b))


def _term_key(m: tuple):
    return (sum(m), m)


def format_mono(m: tuple) -> str:
    parts = []
    for var in PRINT_ORDER:
        e = m[VAR_INDEX[var]]
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "*".join(parts)


class WeightVector:
    """Rational weights on a subset of the variables."""

    __slots__ = ("weights",)

    def __init__(self, weights: dict):
        w = {}
        for var, val in weights.items():
            if var not in VAR_INDEX:
                raise AlgebraError(f"unknown variable {var!r} in weight vector")
            w[var] = Fraction(val)
        self.weights = w

    def weight(self, var: str) -> Fraction:
        if var not in self.weights:
            raise AlgebraError(f"weight vector does not assign a weight to {var!r}")
        return self.weights[var]

    def mono_weight(self, m: tuple) -> Fraction:
        total = Fraction(0)
        for i, e in enumerate(m):
            if e:
                total += e * self.weight(VARS[i])
        return total

    def __eq__(self, other):
        return isinstance(other, WeightVector) and self.weights == other.weights

    def __repr__(self):
        inner = ", ".join(f"{v}:{self.weights[v]}" for v in VARS if v in self.weights)
        return "w{" + inner + "}"


class Poly:
    """A polynomial as a map from monomials to nonzero scalars.

    Values are immutable once constructed; all operations return fresh
    polynomials in canonical form (no zero coefficients stored).
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms: dict):
        # Trusted constructor; terms must already be canonical.
        self.field = field
        self.terms = terms

    @classmethod
    def from_items(cls, field: FieldSpec, items) -> "Poly":
        terms = {}
        for m, c in items:
            c = field.scalar(c)
            if m in terms:
                c = terms[m] + c
            if c.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = c
        return cls(field, terms)

    @classmethod
    def zero(cls, field: FieldSpec) -> "Poly":
        return cls(field, {})

    @classmethod
    def const(cls, field: FieldSpec, value) -> "Poly":
        c = field.scalar(value)
        return cls(field, {} if c.is_zero() else {ZERO_MONO: c})

    @classmethod
    def variable(cls, field: FieldSpec, name: str, exp: int = 1) -> "Poly":
        if exp == 0:
            return cls.const(field, 1)
        return cls(field, {mono(**{name: exp}): field.one})

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch("polynomials over different fields")
            return other
        if isinstance(other, (int, Scalar)):
            return Poly.const(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = s
        return Poly(self.field, terms)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Poly(self.field, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                s = terms.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return Poly(self.field, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise AlgebraError("polynomial powers must be natural numbers")
        result = Poly.const(self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = self.field.scalar(c)
        if c.is_zero():
            return Poly.zero(self.field)
        return Poly(self.field, {m: v * c for m, v in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ZERO_MONO in self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def variables(self) -> set:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(VARS[i])
        return used

    def constant_value(self) -> Scalar:
        """The coefficient of the constant monomial."""
        return self.terms.get(ZERO_MONO, self.field.zero)

    def coeff_of(self, var: str, k: int) -> "Poly":
        """The coefficient of var^k, as a polynomial in the remaining variables."""
        vi = VAR_INDEX[var]
        terms = {}
        for m, c in self.terms.items():
            if m[vi] == k:
                stripped = m[:vi] + (0,) + m[vi + 1 :]
                terms[stripped] = c
        return Poly(self.field, terms)

    def degree_in(self, var: str):
        vi = VAR_INDEX[var]
        if not self.terms:
            return NEG_INF
        return max(m[vi] for m in self.terms)

    def substitute(self, bindings: dict) -> "Poly":
        """Homomorphic substitution; variables absent from bindings map to themselves."""
        images = {}
        for var, val in bindings.items():
            if var not in VAR_INDEX:
                raise AlgebraError(f"unknown variable {var!r} in substitution")
            if not isinstance(val, Poly):
                val = Poly.const(self.field, val)
            elif val.field != self.field:
                raise FieldMismatch("substitution value over a different field")
            images[var] = val
        powers = {var: [Poly.const(self.field, 1), img] for var, img in images.items()}

        def power(var, e):
            lst = powers[var]
            while len(lst) <= e:
                lst.append(lst[-1] * lst[1])
            return lst[e]

        total = Poly.zero(self.field)
        for m, c in self.terms.items():
            piece = Poly.const(self.field, c)
            plain = [0] * 6
            for i, e in enumerate(m):
                if not e:
                    continue
                var = VARS[i]
                if var in images:
                    piece = piece * power(var, e)
                else:
                    plain[i] = e
            if any(plain):
                piece = piece * Poly(self.field, {tuple(plain): self.field.one})
            total = total + piece
        return total

    def weighted_degree(self, w: WeightVector):
        """max over terms of the weighted exponent sum; -inf on the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(w.mono_weight(m) for m in self.terms)

    def top_part(self, w: WeightVector) -> "Poly":
        """The sum of the terms achieving the weighted degree."""
        if not self.terms:
            raise AlgebraError("top part of the zero polynomial is undefined")
        best = self.weighted_degree(w)
        terms = {m: c for m, c in self.terms.items() if w.mono_weight(m) == best}
        return Poly(self.field, terms)

    def divide_var_power(self, var: str, m: int) -> "Poly":
        """Exact division by var^m; raises NotDivisible naming the offending term."""
        vi = VAR_INDEX[var]
        terms = {}
        for mo, c in self.terms.items():
            if mo[vi] < m:
                term = f"{c}*{format_mono(mo)}" if format_mono(mo) else str(c)
                raise NotDivisible(
                    f"term {term} has {var}-exponent {mo[vi]} < {m}"
                )
            lowered = mo[:vi] + (mo[vi] - m,) + mo[vi + 1 :]
            terms[lowered] = c
        return Poly(self.field, terms)

    def sorted_terms(self):
        """Terms in descending graded-lex order (z > y > x > T > U > S)."""
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]), reverse=True)

    def __repr__(self):
        return f"Poly({format_poly(self)} over {self.field.label})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly) -> str:
    """Canonical text form; parse(format(p)) reproduces p exactly."""
    if p.is_zero():
        return "0"
    pieces = []
    for m, c in p.sorted_terms():
        v = c.value
        negative = isinstance(v, Fraction) and v < 0
        mag = -c if negative else c
        ms = format_mono(m)
        if not ms:
            body = str(mag)
        elif mag == 1:
            body = ms
        else:
            body = f"{mag}*{ms}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
