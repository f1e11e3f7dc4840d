"""Canonical-form arithmetic in R = k[x,y,z]/(x^n y - z^2 - h(x) z).

Because the defining relation is monic and quadratic in z, the set {1, z}
is a free basis for R over k[x, y], and every element has a unique normal
form f1 + z*f2 with f1, f2 free of z.  Polynomial extensions R[T], R[U],
R[S,U] reuse the same element type: the parameters T, U, S simply appear
inside the components.

Two spec variants widen the reach of the type: `graded` drops h (the ring
k[x,y,z]/(x^n y - z^2), the homogenization target), and `free` drops the
relation entirely (a plain polynomial ring, used with generators x, y).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AlgebraError, FieldMismatch, NotDivisible, UnreducedSpec
from .polyring import NEG_INF, VARS, Poly, WeightVector, format_poly
from .scalars import FieldSpec, Scalar

PARAMS = ("T", "U", "S")


@dataclass(frozen=True)
class RingSpec:
    """Defining data (field, n, h) of a surface ring, plus variant flags."""

    field: FieldSpec
    n: int
    h: Poly
    graded: bool = False
    free: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise AlgebraError(f"n must be at least 2, got {self.n}")
        if self.h.field != self.field:
            raise FieldMismatch("h is defined over a different field")
        if not self.h.variables() <= {"x"}:
            raise AlgebraError("h must be a polynomial in x alone")
        if self.graded and self.free:
            raise AlgebraError("a spec cannot be both graded and free")
        if self.graded or self.free:
            if not self.h.is_zero():
                raise AlgebraError("graded and free specs require h = 0")
            return
        if self.h.constant_value().is_zero():
            raise AlgebraError("h(0) must be nonzero")
        deg = self.h.degree_in("x")
        if deg >= self.n:
            raise UnreducedSpec(
                f"deg_x(h) = {deg} >= n = {self.n}; apply reduce_presentation"
            )

    @property
    def standard(self) -> bool:
        return not (self.graded or self.free)

    def generators(self) -> tuple:
        return ("x", "y") if self.free else ("x", "y", "z")

    def relation(self):
        """The defining polynomial x^n*y - z^2 - h*z, or None for a free spec."""
        if self.free:
            return None
        f = self.field
        rel = Poly.variable(f, "x", self.n) * Poly.variable(f, "y")
        rel = rel - Poly.variable(f, "z", 2)
        rel = rel - self.h * Poly.variable(f, "z")
        return rel

    def _xny(self) -> Poly:
        return Poly.variable(self.field, "x", self.n) * Poly.variable(self.field, "y")

    def __str__(self):
        flags = ", graded" if self.graded else (", free" if self.free else "")
        return f"R(n={self.n}, h={format_poly(self.h)}, field={self.field.label}{flags})"


class RElem:
    """An element f1 + z*f2 of R (or of R[T], R[U], R[S,U]) in normal form."""

    __slots__ = ("spec", "f1", "f2")

    def __init__(self, spec: RingSpec, f1: Poly, f2: Poly):
        if f1.field != spec.field or f2.field != spec.field:
            raise FieldMismatch("component over a different field")
        if "z" in f1.variables() or "z" in f2.variables():
            raise AlgebraError("normal-form components must not contain z")
        self.spec = spec
        self.f1 = f1
        self.f2 = f2

    @classmethod
    def zero(cls, spec: RingSpec) -> "RElem":
        return cls(spec, Poly.zero(spec.field), Poly.zero(spec.field))

    @classmethod
    def one(cls, spec: RingSpec) -> "RElem":
        return cls.const(spec, 1)

    @classmethod
    def const(cls, spec: RingSpec, value) -> "RElem":
        return cls(spec, Poly.const(spec.field, value), Poly.zero(spec.field))

    @classmethod
    def var(cls, spec: RingSpec, name: str) -> "RElem":
        if name == "z":
            return cls(spec, Poly.zero(spec.field), Poly.const(spec.field, 1))
        return cls(spec, Poly.variable(spec.field, name), Poly.zero(spec.field))

    @classmethod
    def from_poly(cls, spec: RingSpec, p: Poly) -> "RElem":
        return normal_form(spec, p)

    def _coerce(self, other):
        if isinstance(other, RElem):
            if other.spec != self.spec:
                raise AlgebraError("elements of different rings")
            return other
        if isinstance(other, (int, Scalar)):
            return RElem.const(self.spec, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RElem(self.spec, self.f1 + o.f1, self.f2 + o.f2)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RElem(self.spec, self.f1 - o.f1, self.f2 - o.f2)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return RElem(self.spec, -self.f1, -self.f2)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        spec = self.spec
        f1 = self.f1 * o.f1
        cross = self.f1 * o.f2 + self.f2 * o.f1
        zz = self.f2 * o.f2
        if zz:
            if spec.free:
                raise AlgebraError("product needs z^2, which a free spec cannot reduce")
            # z^2 = x^n*y - h*z
            f1 = f1 + spec._xny() * zz
            cross = cross - spec.h * zz
        return RElem(spec, f1, cross)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RElem":
        if not isinstance(k, int) or k < 0:
            raise AlgebraError("element powers must be natural numbers")
        result = RElem.one(self.spec)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c) -> "RElem":
        c = self.spec.field.scalar(c)
        return RElem(self.spec, self.f1.scale(c), self.f2.scale(c))

    def __bool__(self):
        return bool(self.f1) or bool(self.f2)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other):
        if not isinstance(other, RElem):
            return NotImplemented
        return self.spec == other.spec and self.f1 == other.f1 and self.f2 == other.f2

    def to_poly(self) -> Poly:
        return self.f1 + Poly.variable(self.spec.field, "z") * self.f2

    def degree_in(self, var: str):
        """Degree in a parameter (T, U, or S) across both components."""
        return max(self.f1.degree_in(var), self.f2.degree_in(var))

    def substitute_params(self, bindings: dict) -> "RElem":
        """Substitute polynomials for the free parameters T, U, S only."""
        for var in bindings:
            if var not in PARAMS:
                raise AlgebraError(f"{var!r} is not a free parameter")
        return RElem(
            self.spec, self.f1.substitute(bindings), self.f2.substitute(bindings)
        )

    def weighted_degree(self, w: WeightVector):
        d1 = self.f1.weighted_degree(w)
        d2 = self.f2.weighted_degree(w)
        if d2 != NEG_INF:
            d2 = d2 + w.weight("z")
        return max(d1, d2)

    def top_part(self, w: WeightVector, target: RingSpec = None) -> "RElem":
        """The terms achieving the weighted degree, read in `target` (default: same spec)."""
        if self.is_zero():
            raise AlgebraError("top part of zero is undefined")
        target = target or self.spec
        best = self.weighted_degree(w)
        zero = Poly.zero(self.spec.field)
        t1, t2 = zero, zero
        if self.f1 and self.f1.weighted_degree(w) == best:
            t1 = self.f1.top_part(w)
        if self.f2 and self.f2.weighted_degree(w) + w.weight("z") == best:
            t2 = self.f2.top_part(w)
        return RElem(target, t1, t2)

    def is_monomial(self) -> bool:
        """True when the element is a single term lambda * x^i y^j z^k ..."""
        n1, n2 = len(self.f1.terms), len(self.f2.terms)
        return (n1, n2) in ((1, 0), (0, 1))

    def __repr__(self):
        return f"RElem({format_poly(self.to_poly())})"

    def __str__(self):
        return format_poly(self.to_poly())


def normal_form(spec: RingSpec, p: Poly) -> RElem:
    """Rewrite z^2 -> x^n*y - h*z until the z-degree drops below 2.

    Each rewrite strictly lowers the z-degree, so the procedure terminates
    and the result does not depend on the rewrite order.
    """
    if p.field != spec.field:
        raise FieldMismatch("polynomial over a different field")
    zdeg = p.degree_in("z")
    if zdeg == NEG_INF:
        return RElem.zero(spec)
    if spec.free and zdeg >= 2:
        raise AlgebraError("free spec admits no z^2 reduction")
    result = RElem.zero(spec)
    zpow = RElem.one(spec)
    z_elem = RElem.var(spec, "z")
    for k in range(int(zdeg) + 1):
        c = p.coeff_of("z", k)
        if c:
            result = result + RElem(spec, c, Poly.zero(spec.field)) * zpow
        if k < zdeg:
            zpow = zpow * z_elem
    return result


def r_x_divide(a: RElem, m: int) -> RElem:
    """Exact division by x^m, componentwise (valid since {1, z} is a free basis)."""
    try:
        f1 = a.f1.divide_var_power("x", m)
    except NotDivisible as exc:
        raise NotDivisible(f"constant component: {exc}") from None
    try:
        f2 = a.f2.divide_var_power("x", m)
    except NotDivisible as exc:
        raise NotDivisible(f"z component: {exc}") from None
    return RElem(a.spec, f1, f2)


def reduce_presentation(field: FieldSpec, n: int, h_raw: Poly):
    """Lower deg_x(h) below n by the substitution y -> y + g(x)*z.

    While deg_x(h) = d >= n, replacing y by y + h0*x^(d-n)*z (h0 the leading
    coefficient) turns the relation x^n*y - z^2 - h*z into the same relation
    with h replaced by h - h0*x^d.  The returned record g accumulates the
    composite substitution y -> y + g(x)*z back to the original presentation.
    """
    if n < 2:
        raise AlgebraError(f"n must be at least 2, got {n}")
    if h_raw.field != field:
        raise FieldMismatch("h over a different field")
    if not h_raw.variables() <= {"x"}:
        raise AlgebraError("h must be a polynomial in x alone")
    if h_raw.constant_value().is_zero():
        raise AlgebraError("h(0) must be nonzero")
    h = h_raw
    g = Poly.zero(field)
    while h.degree_in("x") >= n:
        d = int(h.degree_in("x"))
        h0 = h.coeff_of("x", d).constant_value()
        g = g + Poly.variable(field, "x", d - n).scale(h0)
        h = h - Poly.variable(field, "x", d).scale(h0)
    return RingSpec(field, n, h), g


def substitute_poly(spec: RingSpec, p: Poly, images: dict) -> RElem:
    """Evaluate a polynomial on ring elements: the homomorphism sending each
    variable to its image (variables absent from `images` map to themselves)."""
    cache = {}

    def power(var: str, e: int):
        lst = cache.get(var)
        if lst is None:
            base = images.get(var)
            if base is None:
                base = RElem.var(spec, var)
            lst = [RElem.one(spec), base]
            cache[var] = lst
        while len(lst) <= e:
            lst.append(lst[-1] * lst[1])
        return lst[e]

    total = RElem.zero(spec)
    for m, c in p.terms.items():
        piece = RElem.const(spec, c)
        for i, e in enumerate(m):
            if e:
                piece = piece * power(VARS[i], e)
        total = total + piece
    return total


def apply_images(spec: RingSpec, images: dict, a: RElem) -> RElem:
    """Apply the homomorphism given by generator images to a normal form."""
    return substitute_poly(spec, a.to_poly(), images)
