"""The automorphism group of R = k[x,y,z]/(x^n y - z^2 - h(x) z).

Every automorphism sends x to mu*x for a scaling mu with h(mu*x) = h(x) and
sends z to sigma*z + f(x) with sigma = +-1, where f = 0 mod x^n when
sigma = +1 and f = -h mod x^n when sigma = -1.  The triple (mu, sigma, f)
is therefore complete canonical data: the y-image is derived from the
relation and never stored.

The group is generated by the shears E_f (z -> z + x^n f), the involution
T (z -> -z - h), and the scalings L_mu; every element factors uniquely as
L_mu * T^eps * E_g, and the shears form a normal subgroup isomorphic to the
additive group of k[x].

In characteristic 2 the scalars +1 and -1 coincide, but sigma is kept
symbolic: the involution moves z by h(x) with h(0) != 0, while every shear
moves z by a multiple of x^n, so the order-2 factor survives in every
characteristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import (
    AlgebraError,
    InvalidMu,
    NotEndomorphism,
    NotInvertible,
    NotCanonicalShape,
)
from .polyring import Poly, format_poly
from .scalars import DEFAULT_SCAN_BOUND, Scalar, nth_roots
from .surface import RElem, RingSpec, r_x_divide, substitute_poly


def _low_part(p: Poly, n: int) -> Poly:
    """The terms of p with x-exponent below n (p reduced mod x^n)."""
    terms = {m: c for m, c in p.terms.items() if m[2] < n}
    return Poly(p.field, terms)


@dataclass(frozen=True)
class Automorphism:
    """Canonical triple (mu, sigma, f); the action on y is derived on demand."""

    spec: RingSpec
    mu: Scalar
    sigma: int
    f: Poly

    def __post_init__(self):
        spec = self.spec
        if not spec.standard:
            raise AlgebraError("automorphism triples are defined for standard specs")
        if self.mu.field != spec.field or self.f.field != spec.field:
            raise AlgebraError("triple data over a different field")
        if self.mu.is_zero():
            raise InvalidMu("mu must be a unit")
        if self.sigma not in (1, -1):
            raise AlgebraError("sigma must be +1 or -1")
        if not self.f.variables() <= {"x"}:
            raise AlgebraError("f must be a polynomial in x alone")
        h = spec.h
        if h.substitute({"x": _mu_x(spec, self.mu)}) != h:
            raise InvalidMu(f"h({self.mu}*x) != h(x)")
        if self.sigma == 1:
            if _low_part(self.f, spec.n):
                raise AlgebraError("sigma = +1 requires f = 0 mod x^n")
        else:
            if _low_part(self.f + h, spec.n):
                raise AlgebraError("sigma = -1 requires f = -h mod x^n")

    def image_x(self) -> RElem:
        return RElem.var(self.spec, "x").scale(self.mu)

    def image_z(self) -> RElem:
        return RElem(
            self.spec, self.f, Poly.const(self.spec.field, self.sigma)
        )

    def image_y(self) -> RElem:
        """Solve the relation: y-image = mu^-n x^-n (alpha(z)^2 + h(mu x) alpha(z))."""
        spec = self.spec
        az = self.image_z()
        h_mu = spec.h.substitute({"x": _mu_x(spec, self.mu)})
        t = az * az + RElem(spec, h_mu, Poly.zero(spec.field)) * az
        return r_x_divide(t, spec.n).scale(self.mu.inv() ** spec.n)

    def images(self) -> dict:
        return {"x": self.image_x(), "y": self.image_y(), "z": self.image_z()}

    def apply(self, a: RElem) -> RElem:
        if a.spec != self.spec:
            raise AlgebraError("element of a different ring")
        return substitute_poly(self.spec, a.to_poly(), self.images())

    def is_identity(self) -> bool:
        return self.mu == 1 and self.sigma == 1 and self.f.is_zero()

    def __str__(self):
        return f"(mu={self.mu}, sigma={self.sigma:+d}, f={format_poly(self.f)})"


def _mu_x(spec: RingSpec, mu: Scalar) -> Poly:
    return Poly.variable(spec.field, "x").scale(mu)


def identity(spec: RingSpec) -> Automorphism:
    return Automorphism(spec, spec.field.one, 1, Poly.zero(spec.field))


def shear(spec: RingSpec, f) -> Automorphism:
    """E_f: x -> x, z -> z + x^n f(x) (the U = 1 slice of a coefficient-family map)."""
    if not isinstance(f, Poly):
        f = Poly.const(spec.field, f)
    if not f.variables() <= {"x"}:
        raise AlgebraError("shear coefficient must be a polynomial in x")
    return Automorphism(spec, spec.field.one, 1, Poly.variable(spec.field, "x", spec.n) * f)


def involution(spec: RingSpec) -> Automorphism:
    """T: x -> x, y -> y, z -> -z - h(x); an order-2 automorphism."""
    return Automorphism(spec, spec.field.one, -1, -spec.h)


def scaling(spec: RingSpec, mu) -> Automorphism:
    """L_mu: x -> mu x, y -> mu^-n y, z -> z; requires h(mu x) = h(x)."""
    mu = spec.field.scalar(mu)
    return Automorphism(spec, mu, 1, Poly.zero(spec.field))


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """a after b: (a . b)(r) = a(b(r)).  Closure is re-checked by construction."""
    if a.spec != b.spec:
        raise AlgebraError("automorphisms of different rings")
    spec = a.spec
    mu = a.mu * b.mu
    sigma = a.sigma * b.sigma
    f = a.f.scale(spec.field.scalar(b.sigma)) + b.f.substitute(
        {"x": _mu_x(spec, a.mu)}
    )
    return Automorphism(spec, mu, sigma, f)


def inverse(a: Automorphism) -> Automorphism:
    spec = a.spec
    mu_inv = a.mu.inv()
    f_inv = a.f.substitute({"x": _mu_x(spec, mu_inv)}).scale(
        spec.field.scalar(-a.sigma)
    )
    return Automorphism(spec, mu_inv, a.sigma, f_inv)


def from_images(spec: RingSpec, images: dict) -> Automorphism:
    """Validate candidate generator images and extract the canonical triple.

    Shape checks run first (x -> mu x; z -> sigma z + f(x) with the right
    congruence), so a candidate like z -> z + x fails with NotCanonicalShape;
    relation preservation and invertibility are checked afterwards.
    """
    for var in ("x", "y", "z"):
        if var not in images:
            raise AlgebraError(f"missing image of {var}")
        if images[var].spec != spec:
            raise AlgebraError(f"image of {var} lies in a different ring")

    ix = images["x"]
    x_mono = (0, 0, 1, 0, 0, 0)
    if ix.f2 or set(ix.f1.terms) != {x_mono}:
        raise NotCanonicalShape(f"x-image {ix} is not of the form mu*x")
    mu = ix.f1.terms[x_mono]

    h = spec.h
    if h.substitute({"x": _mu_x(spec, mu)}) != h:
        raise NotCanonicalShape(f"h({mu}*x) != h(x)")

    iz = images["z"]
    if not iz.f2.is_constant() or iz.f2.is_zero():
        raise NotCanonicalShape(f"z-image {iz} is not of the form sigma*z + f(x)")
    lam = iz.f2.constant_value()
    f = iz.f1
    if not f.variables() <= {"x"}:
        raise NotCanonicalShape("the z-shift must be a polynomial in x alone")
    p = spec.field.characteristic
    if p == 2:
        if lam != 1:
            raise NotCanonicalShape(f"z-coefficient {lam} is not a sign")
        if not _low_part(f, spec.n):
            sigma = 1
        elif not _low_part(f + h, spec.n):
            sigma = -1
        else:
            raise NotCanonicalShape("f matches neither 0 nor -h mod x^n")
    else:
        if lam == 1:
            sigma = 1
        elif lam == -1:
            sigma = -1
        else:
            raise NotCanonicalShape(f"z-coefficient {lam} is not +-1")
        target = _low_part(f, spec.n) if sigma == 1 else _low_part(f + h, spec.n)
        if target:
            raise NotCanonicalShape(
                "f = 0 mod x^n fails" if sigma == 1 else "f = -h mod x^n fails"
            )

    candidate = Automorphism(spec, mu, sigma, f)

    rel = spec.relation()
    if not substitute_poly(spec, rel, images).is_zero():
        raise NotEndomorphism("images do not preserve the defining relation")
    if images["y"] != candidate.image_y():
        raise NotEndomorphism("y-image disagrees with the relation-derived image")

    inv = inverse(candidate)
    if not compose(candidate, inv).is_identity() or not compose(inv, candidate).is_identity():
        raise NotInvertible("candidate has no two-sided inverse")
    return candidate


def decompose(a: Automorphism):
    """The unique word (mu, eps, g) with a = L_mu . T^eps . E_g."""
    spec = a.spec
    eps = 0 if a.sigma == 1 else 1
    base = a.f if eps == 0 else a.f + spec.h
    q = base.divide_var_power("x", spec.n)
    mu_inv = a.mu.inv()
    g = q.substitute({"x": _mu_x(spec, mu_inv)}).scale(mu_inv**spec.n)
    return a.mu, eps, g


def recompose(spec: RingSpec, mu, eps: int, g) -> Automorphism:
    word = shear(spec, g)
    if eps:
        word = compose(involution(spec), word)
    return compose(scaling(spec, mu), word)


@dataclass(frozen=True)
class GroupStructure:
    """Shape of Aut(R) = N x| H with H = <T> x L."""

    m: int
    l_order: object  # int, or None for the full multiplicative group of Q
    l_elements: object  # tuple of Scalar when finite and enumerated, else None
    l_description: str
    h_description: str
    n_description: str


def group_structure(spec: RingSpec, scan_bound: int = DEFAULT_SCAN_BOUND) -> GroupStructure:
    """Compute m = gcd of the nonconstant x-exponents of h and the resulting
    scaling subgroup L = {mu : mu^m = 1}, reported with its exact order."""
    if not spec.standard:
        raise AlgebraError("group structure is defined for standard specs")
    m = 0
    for mo in spec.h.terms:
        if mo[2] > 0:
            m = gcd(m, mo[2])
    field = spec.field
    p = field.characteristic
    n_desc = "additive group of k[x] (shears E_f)"
    if m == 0:
        l_order = None if p == 0 else p - 1
        l_desc = "full multiplicative group k*"
        return GroupStructure(0, l_order, None, l_desc, "C2 x k*", n_desc)
    if m == 1:
        return GroupStructure(1, 1, (field.one,), "trivial", "C2", n_desc)
    roots = nth_roots(field.one, m, scan_bound)
    k = len(roots)
    if k == 1:
        return GroupStructure(m, 1, tuple(roots), "trivial", "C2", n_desc)
    return GroupStructure(
        m, k, tuple(roots), f"cyclic of order {k}", f"C2 x C{k}", n_desc
    )
