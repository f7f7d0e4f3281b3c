"""Smoke test for the pygrovelab extension.

Build and install first:
    pip install --no-build-isolation -e crates/grovelab-py
"""

import json

import pygrovelab as g


def main():
    assert len(g.enumerate(4, "dyck")) == 14
    assert len(g.enumerate(3, "tc")) == 14
    assert g.convert("UUDD", "dyck", "ncp") == "12"

    assert g.grove_measurement("y3", "1|2|3") == "a + b + c"
    assert g.alpha("y3") == "1·(12|35|46) + 1·(13|24|56) + 1·(15|26|34)"
    assert g.bush_value("y3", "15|26|34") == "a^2*c + a*b*c + a*c^2"
    assert g.medial_pairing("fig3") == "1,2|3,11|4,13|5,12|6,8|7,9|10,14"
    dual = json.loads(g.dual_network("y3"))
    assert dual["n"] == 3

    assert g.a_coeff("13|24|56", "12|3", "1|2|3") == 1
    assert g.a_coeff("13|24|56", "12|3", "1|23") == 0
    assert g.beta("12|34|56", rule="single") == "1·(tau=;T=2,4) + 1·(tau=;T=2,6) + 1·(tau=;T=4,6)"
    assert g.verify_delta_product(3, [2, 4], [2, 6])
    assert g.delta(2, [1]) != "0"

    assert g.dim_formula(4, 2) == "84"
    assert g.count_standard(3, 2) == 14
    assert g.straighten_monomial("12|3;1|23") == "-1·(12|3;13|2) + -1·(1|23;13|2) + 1·(1|2|3;123)"

    code, out = g.run(["verify", "product", "--n", "3", "--all"])
    assert code == 0 and out.strip() == "ok (25 pairs × all TC_3)", (code, out)
    code, _ = g.run(["measure"])
    assert code == 2

    try:
        g.bush_value("y3", "14|25|36")
    except ValueError:
        pass
    else:
        raise AssertionError("a 3-crossing matching must be rejected")

    print("pygrovelab smoke test passed")


if __name__ == "__main__":
    main()
