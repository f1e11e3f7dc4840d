"""Exponential maps phi: R -> R[U] and their higher derivations.

An exponential map is a ring homomorphism phi into the polynomial extension
R[U] satisfying two axioms: evaluating U at 0 recovers the identity, and the
coaction law phi_S(phi_U(a)) = phi_{S+U}(a) holds.  Both are checked here on
generators, which suffices because all the maps involved are homomorphisms
determined by generator images.

Writing phi(a) = sum_i D^i(a) U^i defines the associated locally finite
iterative higher derivation D = {D^i}; D^i(a) is recovered by coefficient
extraction, and the degree deg_phi(a) = deg_U(phi(a)) is a degree function.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AlgebraError,
    IllegalExponent,
    NotApplicable,
    StepLimit,
)
from .polyring import Poly
from .surface import RElem, RingSpec, apply_images, r_x_divide, substitute_poly


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


class ExponentialMap:
    """Generator images in R[U], with a flag recording a passed verification.

    Images are stored for every ring generator and, when the map acts on a
    polynomial extension R[T], for the parameter T as well.  The parameter S
    is reserved for the coaction check and never carries an image.
    """

    __slots__ = ("spec", "images", "verified")

    def __init__(self, spec: RingSpec, images: dict, verified: bool = False):
        full = {}
        for var in spec.generators():
            full[var] = images.get(var, RElem.var(spec, var))
        if "T" in images:
            full["T"] = images["T"]
        for var, img in images.items():
            if var not in full:
                raise AlgebraError(f"cannot assign an image to {var!r}")
        for var, img in full.items():
            if not isinstance(img, RElem) or img.spec != spec:
                raise AlgebraError(f"image of {var} is not an element of the ring")
            if img.degree_in("S") > 0:
                raise AlgebraError("images must not involve the reserved parameter S")
        self.spec = spec
        self.images = full
        self.verified = verified

    def carriers(self) -> tuple:
        """The variables whose images determine the map."""
        return tuple(sorted(self.images))

    def image(self, var: str) -> RElem:
        return self.images[var]

    def apply(self, a: RElem) -> RElem:
        """phi(a) for a in the source ring (a must not already involve U)."""
        if a.spec != self.spec:
            raise AlgebraError("element of a different ring")
        if a.degree_in("U") > 0:
            raise AlgebraError("apply expects a U-free element")
        return apply_images(self.spec, self.images, a)

    def is_trivial(self) -> bool:
        return all(img == RElem.var(self.spec, v) for v, img in self.images.items())

    def __eq__(self, other):
        if not isinstance(other, ExponentialMap):
            return NotImplemented
        return self.spec == other.spec and self.images == other.images

    def __repr__(self):
        inner = "; ".join(f"{v} -> {self.images[v]}" for v in sorted(self.images))
        return f"ExponentialMap({inner})"

    @classmethod
    def trivial(cls, spec: RingSpec) -> "ExponentialMap":
        return cls(spec, {}, verified=True)


def _legal_exponent(e: int, p: int) -> bool:
    if e == 1:
        return True
    if p == 0 or e < 1:
        return False
    while e % p == 0:
        e //= p
    return e == 1


def solve_generator_images(spec: RingSpec, image_z: RElem) -> dict:
    """Given phi(x) = x and a candidate phi(z), solve the relation for phi(y).

    Applying phi to x^n y = z^2 + h(x) z gives x^n phi(y) = phi(z)^2 +
    h(x) phi(z); the right-hand side must be exactly divisible by x^n, and
    the quotient is phi(y).  NotDivisible here means the candidate z-image
    breaks the relation.
    """
    if not spec.standard and not spec.graded:
        raise AlgebraError("relation solving needs a spec with a relation")
    h_elem = RElem(spec, spec.h, Poly.zero(spec.field))
    rhs = image_z * image_z + h_elem * image_z
    image_y = r_x_divide(rhs, spec.n)
    return {
        "x": RElem.var(spec, "x"),
        "y": image_y,
        "z": image_z,
    }


def build_exponential(spec: RingSpec, coeffs) -> ExponentialMap:
    """Construct the map x -> x, z -> z + x^n * F(x, U) from coefficient data.

    `coeffs` lists pairs (e, f_e) with F = sum f_e(x) U^e.  In characteristic
    zero only e = 1 is allowed; in characteristic p the exponents must be 1
    or powers of p.  The y-image is derived from the relation (never assumed),
    and the result is verified before being returned.
    """
    field = spec.field
    p = field.characteristic
    F = Poly.zero(field)
    for e, f_e in coeffs:
        if not isinstance(f_e, Poly):
            f_e = Poly.const(field, f_e)
        if not f_e.variables() <= {"x"}:
            raise AlgebraError("coefficient polynomials must involve x alone")
        if not _legal_exponent(e, p):
            raise IllegalExponent(
                f"U-exponent {e} is not allowed in characteristic {p}"
            )
        F = F + f_e * Poly.variable(field, "U", e)
    xnF = Poly.variable(field, "x", spec.n) * F
    image_z = RElem(spec, xnF, Poly.const(field, 1))
    images = solve_generator_images(spec, image_z)
    phi = ExponentialMap(spec, images)
    report = verify_exponential(spec, images)
    if not report.passed:
        raise AlgebraError(
            "internal error: a coefficient-family map failed verification: "
            + "; ".join(f"{c.name}: {c.detail}" for c in report.failures())
        )
    return ExponentialMap(spec, images, verified=True)


def make_exponential(spec: RingSpec, images: dict) -> ExponentialMap:
    """Wrap candidate images into a verified map; raise if verification fails."""
    report = verify_exponential(spec, images)
    if not report.passed:
        raise AlgebraError(
            "candidate images are not an exponential map: "
            + "; ".join(f"{c.name}: {c.detail}" for c in report.failures())
        )
    return ExponentialMap(spec, images, verified=True)


def verify_exponential(spec: RingSpec, images: dict) -> VerificationReport:
    """Run the three checks on candidate generator images.

    (relation)  the images satisfy the defining relation in R[U], so the
                candidate is a well-defined homomorphism;
    (axiom_i)   setting U = 0 in each image returns the generator;
    (axiom_ii)  phi_S(phi_U(g)) = phi_{S+U}(g) for every carrier g.
    """
    phi = ExponentialMap(spec, images)
    checks = []

    rel = spec.relation()
    if rel is None:
        checks.append(CheckResult("relation", True, "free ring, nothing to preserve"))
    else:
        image_rel = substitute_poly(spec, rel, phi.images)
        if image_rel.is_zero():
            checks.append(CheckResult("relation", True))
        else:
            checks.append(
                CheckResult(
                    "relation",
                    False,
                    f"image of the relation is {image_rel}, not 0",
                )
            )

    bad = []
    for var in phi.carriers():
        at0 = phi.images[var].substitute_params({"U": 0})
        if at0 != RElem.var(spec, var):
            bad.append(f"{var} -> {at0}")
    checks.append(
        CheckResult("axiom_i", not bad, "; ".join(bad) if bad else "")
    )

    field = spec.field
    s_poly = Poly.variable(field, "S")
    su_poly = s_poly + Poly.variable(field, "U")
    images_s = {v: img.substitute_params({"U": s_poly}) for v, img in phi.images.items()}
    bad = []
    for var in phi.carriers():
        lhs = apply_images(spec, images_s, phi.images[var])
        rhs = phi.images[var].substitute_params({"U": su_poly})
        if lhs != rhs:
            bad.append(f"{var}: phi_S(phi_U) = {lhs} but phi_(S+U) = {rhs}")
    checks.append(
        CheckResult("axiom_ii", not bad, "; ".join(bad) if bad else "")
    )

    return VerificationReport(tuple(checks))


def derivation(phi: ExponentialMap, i: int, a: RElem) -> RElem:
    """D^i(a): the U^i-coefficient of phi(a).  D^0 is the identity."""
    if i < 0:
        raise AlgebraError("derivation index must be a natural number")
    pa = phi.apply(a)
    return RElem(phi.spec, pa.f1.coeff_of("U", i), pa.f2.coeff_of("U", i))


def degree(phi: ExponentialMap, a: RElem):
    """deg_phi(a) = deg_U(phi(a)); -inf for a = 0."""
    return phi.apply(a).degree_in("U")


def is_invariant(phi: ExponentialMap, a: RElem) -> bool:
    return phi.apply(a) == a


def evaluate_at_one(phi: ExponentialMap) -> dict:
    """The automorphism obtained by setting U = 1, as generator images.

    Its inverse is obtained by setting U = -1; the round trip is checked on
    the carriers before returning.
    """
    spec = phi.spec
    at_one = {v: img.substitute_params({"U": 1}) for v, img in phi.images.items()}
    at_neg = {v: img.substitute_params({"U": -1}) for v, img in phi.images.items()}
    for var in phi.carriers():
        forward = apply_images(spec, at_one, at_neg[var])
        backward = apply_images(spec, at_neg, at_one[var])
        if forward != RElem.var(spec, var) or backward != RElem.var(spec, var):
            raise AlgebraError(
                f"internal error: U = 1 evaluation is not invertible on {var}"
            )
    return at_one


def expand_in_slice(phi: ExponentialMap, s: RElem, a: RElem, max_steps: int = 64):
    """Write a = sum a_l s^l with every coefficient a_l invariant.

    Requires phi(s) = s + U (so s has degree 1 and D^1(s) = 1).  The
    recursion subtracts D^d(a) * s^d where d = deg_phi(a); each step strictly
    lowers the degree, and D^d(a) is invariant because deg_phi(D^d(a)) <=
    deg_phi(a) - d.  Returns (coefficient, power) pairs in ascending power
    order, nonzero coefficients only.
    """
    spec = phi.spec
    u_elem = RElem.var(spec, "U")
    if phi.apply(s) != s + u_elem:
        raise NotApplicable(f"phi({s}) != {s} + U; the element is not a slice")
    coeffs = []
    current = a
    steps = 0
    while current:
        steps += 1
        if steps > max_steps:
            raise StepLimit(f"no termination within {max_steps} steps")
        d = degree(phi, current)
        if d <= 0:
            coeffs.append((current, 0))
            break
        d = int(d)
        c_d = derivation(phi, d, current)
        coeffs.append((c_d, d))
        current = current - c_d * s**d
        if current and degree(phi, current) >= d:
            raise AlgebraError("internal error: slice recursion failed to reduce degree")
    coeffs.reverse()
    return coeffs
