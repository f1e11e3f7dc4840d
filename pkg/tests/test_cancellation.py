import pytest

from dansurf import (
    IllegalParameters,
    RElem,
    build_exponential,
    build_witness,
    degree,
    derivation,
    expand_in_slice,
    is_invariant,
    normal_form,
    parse_poly,
    restrict_to_surface,
    verify_witness,
)
from dansurf.cancellation import CancellationWitness
from dansurf.expmaps import ExponentialMap
from conftest import F2, F3, F5, Q


def NF(spec, text):
    return normal_form(spec, parse_poly(text, spec.field))


def test_parameter_validation():
    with pytest.raises(IllegalParameters):
        build_witness(Q, 2, 5)  # n2 > 2 n1
    with pytest.raises(IllegalParameters):
        build_witness(Q, 2, 2)
    with pytest.raises(IllegalParameters):
        build_witness(Q, 1, 2)


def test_all_checks_pass_23_over_q():
    w = build_witness(Q, 2, 3)
    report = verify_witness(w)
    assert report.passed
    assert [e.name for e in report.entries] == [
        "exponential",
        "embedded_relation",
        "recovered_relation",
        "invariance",
        "slice_action",
        "linear_form",
        "slice_generates",
    ]


def test_explicit_slice_23():
    w = build_witness(Q, 2, 3)
    # s = -4 x^3 T^3 + 3 x (2 z1 + 1) T^2 + 4 x^2 y2 T + y2 (2 z1 + 1), z1 = z + x^2 T
    expected = NF(
        w.spec2,
        "-4*x^3*T^3 + 3*x*(2*(z + x^2*T) + 1)*T^2 + 4*x^2*y*T + y*(2*(z + x^2*T) + 1)",
    )
    assert w.s == expected
    assert w.z1 == NF(w.spec2, "z + x^2*T")


def test_embedding_images_24():
    w = build_witness(Q, 2, 4)
    # 2*n1 - n2 = 0: the T^2 coefficient of s carries no power of x
    expected = NF(
        w.spec2,
        "-4*x^2*T^3 + 3*(2*(z + x^2*T) + 1)*T^2 + 4*x^2*y*T + y*(2*(z + x^2*T) + 1)",
    )
    assert w.s == expected


def test_slice_degenerates_in_char_2():
    w = build_witness(F2, 2, 3)
    assert w.s == NF(w.spec2, "x*T^2 + y")
    assert verify_witness(w).passed


def test_slice_properties():
    w = build_witness(Q, 2, 3)
    t_elem = RElem.var(w.spec2, "T")
    assert degree(w.phi, w.s) == 1
    assert degree(w.phi, t_elem) == 1
    assert derivation(w.phi, 1, w.s) == RElem.one(w.spec2)


def test_phi_moves_t_and_fixes_embedded_ring():
    w = build_witness(Q, 3, 4)
    assert is_invariant(w.phi, w.x1)
    assert is_invariant(w.phi, w.y1)
    assert is_invariant(w.phi, w.z1)
    assert not is_invariant(w.phi, RElem.var(w.spec2, "T"))
    assert not is_invariant(w.phi, RElem.var(w.spec2, "y"))


def test_expand_in_slice_collects_invariant_coefficients():
    w = build_witness(Q, 2, 3)
    spec = w.spec2
    for a in (RElem.var(spec, "T"), RElem.var(spec, "y"), RElem.var(spec, "z")):
        parts = expand_in_slice(w.phi, w.s, a)
        rebuilt = RElem.zero(spec)
        for coeff, power in parts:
            assert is_invariant(w.phi, coeff)
            rebuilt = rebuilt + coeff * w.s**power
        assert rebuilt == a


def test_expand_z1_times_slice():
    w = build_witness(Q, 2, 3)
    a = w.z1 * w.s
    parts = dict((power, coeff) for coeff, power in expand_in_slice(w.phi, w.s, a))
    assert parts[1] == w.z1


def test_expand_slice_itself():
    # s = 0 + 1*s
    w = build_witness(Q, 2, 3)
    parts = expand_in_slice(w.phi, w.s, w.s)
    assert parts == [(RElem.one(w.spec2), 1)]


def test_expand_step_limit_guard():
    from dansurf import StepLimit

    w = build_witness(Q, 2, 3)
    t = RElem.var(w.spec2, "T")
    with pytest.raises(StepLimit):
        expand_in_slice(w.phi, w.s, t * t, max_steps=1)


def test_tampered_witness_fails_invariance():
    w = build_witness(Q, 2, 3)
    x = RElem.var(w.spec2, "x")
    u = RElem.var(w.spec2, "U")
    t = RElem.var(w.spec2, "T")
    bad_images = dict(w.phi.images)
    bad_images["T"] = t + x ** (w.n2 - w.n1) * u  # sign flipped
    bad_phi = ExponentialMap(w.spec2, bad_images)
    tampered = CancellationWitness(
        w.spec2, w.n1, w.n2, w.x1, w.z1, w.y1, bad_phi, w.s
    )
    report = verify_witness(tampered)
    assert not report.passed
    inv = report.entry("invariance")
    assert not inv.passed and "z1" in inv.detail
    assert not report.entry("slice_action").passed


@pytest.mark.parametrize("pair", [(2, 3), (3, 4), (3, 6)])
def test_restriction_matches_family_map(pair):
    w = build_witness(Q, *pair)
    restricted = restrict_to_surface(w)
    assert restricted == build_exponential(w.spec2, [(1, 1)])
    for v, img in restricted.images.items():
        assert img.substitute_params({"U": 0}) == RElem.var(w.spec2, v)


@pytest.mark.parametrize("field", [Q, F2, F3, F5])
def test_full_suite_34(field):
    assert verify_witness(build_witness(field, 3, 4)).passed
