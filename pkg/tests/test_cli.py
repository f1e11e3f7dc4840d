import json

from dansurf.cli import dispatch


def test_normal_form_documented_output():
    code, out = dispatch(
        ["normal-form", "--ring", "R(n=2,h=1,field=F2)", "--expr", "z^2+z"]
    )
    assert code == 0
    assert out == "x^2*y"


def test_exp_verify_documented_output():
    code, out = dispatch(
        [
            "exp-verify",
            "--ring",
            "R(n=2,h=1,field=Q)",
            "--map",
            "x->x; z->z+x^2*U; y->y+(2*z+1)*U+x^2*U^2",
        ]
    )
    assert code == 0
    assert out == "relation: PASS\naxiom_i: PASS\naxiom_ii: PASS\nverified"


def test_iso_check_documented_output():
    code, out = dispatch(
        [
            "iso-check",
            "--left",
            "R(n=2,h=1,field=Q)",
            "--right",
            "R(n=3,h=1,field=Q)",
        ]
    )
    assert code == 0
    assert out == '{"isomorphic": false, "eta": null, "mu": null, "reason": "n_mismatch"}'


def test_outputs_are_deterministic():
    argv = ["iso-check", "--left", "R(n=2,h=1+x,field=Q)", "--right",
            "R(n=2,h=2+4*x,field=Q)"]
    first = dispatch(argv)
    second = dispatch(argv)
    assert first == second
    assert json.loads(first[1]) == {
        "isomorphic": True, "eta": "2", "mu": "2", "reason": "ok",
    }


def test_exp_verify_failure_exit_code():
    code, out = dispatch(
        [
            "exp-verify",
            "--ring",
            "R(n=2,h=1,field=Q)",
            "--map",
            "x->x; z->z+x*U; y->y",
        ]
    )
    assert code == 1
    assert "relation: FAIL" in out


def test_usage_errors_exit_2():
    code, _ = dispatch(["no-such-command"])
    assert code == 2
    code, _ = dispatch(["normal-form", "--ring", "R(n=2,h=1,field=Q)"])
    assert code == 2
    code, out = dispatch(
        ["normal-form", "--ring", "R(n=2,h=1,field=Q)", "--expr", "2x"]
    )
    assert code == 2
    assert "offset 1" in out


def test_exp_build_and_degree_and_derive():
    ring = "R(n=2,h=1,field=Q)"
    code, out = dispatch(["exp-build", "--ring", ring, "--coeff", "1:1"])
    assert code == 0
    assert out == "x -> x; y -> x^2*U^2 + 2*z*U + y + U; z -> x^2*U + z"
    mapping = "x->x; z->z+x^2*U; y->y+(2*z+1)*U+x^2*U^2"
    code, out = dispatch(
        ["exp-degree", "--ring", ring, "--map", mapping, "--expr", "y"]
    )
    assert (code, out) == (0, "2")
    code, out = dispatch(
        ["derive", "--ring", ring, "--map", mapping, "--expr", "y", "--order", "2"]
    )
    assert (code, out) == (0, "x^2")


def test_homogenize_command():
    ring = "R(n=2,h=1,field=Q)"
    mapping = "x->x; z->z+x^2*U; y->y+(2*z+1)*U+x^2*U^2"
    code, out = dispatch(
        ["homogenize", "--ring", ring, "--map", mapping, "--weights", "w{x:0, y:2, z:1}"]
    )
    assert code == 0
    assert "grdeg(U) = 1" in out
    assert "bar map: x -> x; y -> x^2*U^2 + 2*z*U + y; z -> x^2*U + z" in out
    assert "S(y) = {0, 1, 2}" in out


def test_aut_commands():
    ring = "R(n=2,h=1,field=Q)"
    code, out = dispatch(["aut-compose", "--ring", ring, "--word", "T * T"])
    assert (code, out) == (0, "(mu=1, sigma=+1, f=0)")
    code, out = dispatch(["aut-decompose", "--ring", ring, "--word", "T * E(1)"])
    assert code == 0
    assert out == "L(1) * T * E(1)"
    # conjugating a shear through T negates it
    code, out = dispatch(["aut-decompose", "--ring", ring, "--word", "E(1) * T"])
    assert code == 0
    assert out == "L(1) * T * E(-1)"
    code, out = dispatch(
        ["aut-apply", "--ring", ring, "--word", "E(1)", "--expr", "z"]
    )
    assert (code, out) == (0, "x^2 + z")
    code, out = dispatch(["aut-structure", "--ring", "R(n=2,h=1+x,field=Q)"])
    assert code == 0
    assert "m = 1" in out and "H = C2" in out


def test_cancel_verify_command():
    code, out = dispatch(["cancel-verify", "--n1", "2", "--n2", "3", "--field", "F2"])
    assert code == 0
    for name in ("exponential", "embedded_relation", "slice_action", "linear_form"):
        assert f"{name}: PASS" in out
    assert "s = x*T^2 + y" in out


def test_json_envelopes():
    code, out = dispatch(
        ["iso-check", "--left", "R(n=2,h=1,field=Q)", "--right",
         "R(n=2,h=2,field=Q)", "--json"]
    )
    assert code == 0
    data = json.loads(out)
    assert data["command"] == "iso-check"
    assert data["result"]["isomorphic"] is True
    assert data["result"]["eta"] == "2"
    code, out = dispatch(
        ["cancel-verify", "--n1", "2", "--n2", "3", "--field", "Q", "--json"]
    )
    assert code == 0
    data = json.loads(out)
    assert data["result"]["passed"] is True
    assert len(data["checks"]) == 7
    assert all(c["pass"] for c in data["checks"])


def test_word_decompose_roundtrip_via_cli():
    ring = "R(n=2,h=1,field=Q)"
    word = "L(3) * E(x) * T * E(1+x)"
    code, out = dispatch(["aut-decompose", "--ring", ring, "--word", word])
    assert code == 0
    code2, out2 = dispatch(["aut-compose", "--ring", ring, "--word", out])
    code3, out3 = dispatch(["aut-compose", "--ring", ring, "--word", word])
    assert code2 == code3 == 0
    assert out2 == out3
