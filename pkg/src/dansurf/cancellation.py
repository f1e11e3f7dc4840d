"""The cylinder construction behind non-cancellation.

For 2 <= n1 < n2 <= 2*n1 and h1 = h2 = 1, the smaller ring R_1 embeds into
R_2[T] by

    x_1 -> x,
    z_1 -> z_2 + x^{n1} T,
    y_1 -> x^{n2-n1} y_2 + (2 z_1 + 1) T - x^{n1} T^2,

and R_2[T] carries an exponential map fixing the embedded R_1:

    phi(y_2) = y_2 + (2 z_1 - 2 x^{n1} T + 1) U + x^{n2} U^2,
    phi(T)   = T - x^{n2-n1} U,

with the slice

    s = -4 x^{3n1-n2} T^3 + 3 x^{2n1-n2} (2 z_1 + 1) T^2
        + 4 x^{n1} y_2 T + y_2 (2 z_1 + 1),

satisfying phi(s) = s + U, which forces R_2[T] = R_1[s].  Every displayed
identity is machine-checked by verify_witness; the identity involving a
negative power of x is restated multiplied through by x^{n2-n1} so it lives
inside the ring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AlgebraError, IllegalParameters
from .expmaps import (
    ExponentialMap,
    build_exponential,
    expand_in_slice,
    verify_exponential,
)
from .polyring import Poly
from .scalars import FieldSpec
from .surface import RElem, RingSpec


@dataclass
class CancellationWitness:
    spec2: RingSpec
    n1: int
    n2: int
    x1: RElem
    z1: RElem
    y1: RElem
    phi: ExponentialMap
    s: RElem


@dataclass(frozen=True)
class CheckEntry:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CancellationReport:
    entries: tuple

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def entry(self, name: str) -> CheckEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def build_witness(field: FieldSpec, n1: int, n2: int) -> CancellationWitness:
    """Construct the embedding, the map, and the slice, then verify everything."""
    if not (2 <= n1 < n2 <= 2 * n1):
        raise IllegalParameters(
            f"need 2 <= n1 < n2 <= 2*n1; got n1={n1}, n2={n2}"
        )
    spec2 = RingSpec(field, n2, Poly.const(field, 1))
    x = RElem.var(spec2, "x")
    y = RElem.var(spec2, "y")
    z = RElem.var(spec2, "z")
    t = RElem.var(spec2, "T")
    u = RElem.var(spec2, "U")

    z1 = z + x**n1 * t
    y1 = x ** (n2 - n1) * y + (2 * z1 + 1) * t - x**n1 * t**2

    img_t = t - x ** (n2 - n1) * u
    img_y = y + (2 * z1 - 2 * x**n1 * t + 1) * u + x**n2 * u**2
    img_z = z1 - x**n1 * img_t
    phi = ExponentialMap(
        spec2, {"x": x, "y": img_y, "z": img_z, "T": img_t}, verified=True
    )

    s = (
        -4 * x ** (3 * n1 - n2) * t**3
        + 3 * x ** (2 * n1 - n2) * (2 * z1 + 1) * t**2
        + 4 * x**n1 * y * t
        + y * (2 * z1 + 1)
    )

    witness = CancellationWitness(spec2, n1, n2, x, z1, y1, phi, s)
    report = verify_witness(witness)
    if not report.passed:
        raise AlgebraError(
            "internal error: cylinder construction failed verification: "
            + "; ".join(f"{e.name}: {e.detail}" for e in report.entries if not e.passed)
        )
    return witness


def verify_witness(w: CancellationWitness) -> CancellationReport:
    """Run the seven checks; failures become report entries, never exceptions."""
    spec2 = w.spec2
    x = RElem.var(spec2, "x")
    y = RElem.var(spec2, "y")
    z = RElem.var(spec2, "z")
    t = RElem.var(spec2, "T")
    u = RElem.var(spec2, "U")
    entries = []

    report = verify_exponential(spec2, w.phi.images)
    entries.append(
        CheckEntry(
            "exponential",
            report.passed,
            "; ".join(f"{c.name}: {c.detail}" for c in report.failures()),
        )
    )

    emb = x**w.n1 * w.y1 - (w.z1 * w.z1 + w.z1)
    entries.append(
        CheckEntry("embedded_relation", emb.is_zero(), "" if emb.is_zero() else str(emb))
    )

    rec_z = w.z1 - x**w.n1 * t
    rec = x**w.n2 * y - (rec_z * rec_z + rec_z)
    entries.append(
        CheckEntry("recovered_relation", rec.is_zero(), "" if rec.is_zero() else str(rec))
    )

    moved = []
    for name, elem in (("x", w.x1), ("y1", w.y1), ("z1", w.z1)):
        if w.phi.apply(elem) != elem:
            moved.append(name)
    entries.append(
        CheckEntry(
            "invariance",
            not moved,
            "" if not moved else "not invariant: " + ", ".join(moved),
        )
    )

    slice_diff = w.phi.apply(w.s) - (w.s + u)
    entries.append(
        CheckEntry(
            "slice_action",
            slice_diff.is_zero(),
            "" if slice_diff.is_zero() else f"phi(s) - s - U = {slice_diff}",
        )
    )

    linear = x ** (w.n2 - w.n1) * w.s + t - w.y1 * (2 * w.z1 + 1)
    entries.append(
        CheckEntry(
            "linear_form", linear.is_zero(), "" if linear.is_zero() else str(linear)
        )
    )

    bad = []
    for name, a in (("T", t), ("y2", y), ("z2", z), ("T^2", t * t), ("y2*z2", y * z)):
        try:
            parts = expand_in_slice(w.phi, w.s, a)
        except AlgebraError as exc:
            bad.append(f"{name}: {exc}")
            continue
        rebuilt = RElem.zero(spec2)
        for coeff, power in parts:
            if w.phi.apply(coeff) != coeff:
                bad.append(f"{name}: coefficient of s^{power} is not invariant")
            rebuilt = rebuilt + coeff * w.s**power
        if rebuilt != a:
            bad.append(f"{name}: reconstruction differs")
    entries.append(
        CheckEntry("slice_generates", not bad, "; ".join(bad))
    )

    return CancellationReport(tuple(entries))


def restrict_to_surface(w: CancellationWitness) -> ExponentialMap:
    """The induced map on R_2 (drop T); equals the coefficient-family map F = U."""
    images = {v: w.phi.image(v) for v in ("x", "y", "z")}
    for var, img in images.items():
        if img.degree_in("T") >= 1:
            raise AlgebraError(f"restricted image of {var} still involves T")
    report = verify_exponential(w.spec2, images)
    if not report.passed:
        raise AlgebraError("internal error: restriction is not exponential")
    restricted = ExponentialMap(w.spec2, images, verified=True)
    reference = build_exponential(w.spec2, [(1, 1)])
    if restricted != reference:
        raise AlgebraError("internal error: restriction differs from the F = U map")
    return restricted
