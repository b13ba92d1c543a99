"""Smoke test for the kissing_py extension.

Build and install first, e.g.

    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/kissing_py-*.whl
"""

import json
import math
from fractions import Fraction

import kissing_py as k


def main():
    p = k.gegenbauer(8, 2)
    assert p.degree == 2
    assert abs(p(1.0) - 1.0) < 1e-12

    lev = k.levenshtein_bound(8, 0.5)
    assert lev.floor_value == 240 and lev.rigorous
    lev24 = k.levenshtein_bound(24, 0.5)
    assert lev24.floor_value == 196560

    f = k.levenshtein_polynomial(4, 0.5)
    check = k.verify_theorem1(4, 0.5, f)
    assert abs(check.value - 26.0) < 1e-6
    assert all(c > -1e-12 for c in f.gegenbauer_coeffs(4))

    coeffs = [Fraction(1)]
    for root in [-1, Fraction(-1, 2), Fraction(-1, 2), 0, 0, Fraction(1, 2)]:
        shifted = [Fraction(0)] + coeffs
        coeffs = [a - root * b for a, b in zip(shifted, coeffs + [Fraction(0)])]
    exact = k.verify_theorem1_exact(8, "1/2", [str(c) for c in coeffs])
    assert exact.floor_value == 240 and exact.rigorous

    lp = k.lp_search(4, 0.5)
    assert 25.0 < lp.value < 26.0 and lp.method == "lp"
    replay = k.verify_theorem1(4, 0.5, k.Polynomial(lp.certificate["monomial_coeffs"]))
    assert abs(replay.value - lp.value) < 1e-9 * lp.value

    cb = k.coxeter_boroczky_bound(4, math.cos(math.pi / 5))
    assert abs(cb.value - 120.0) < 0.5

    ft = k.fejes_toth_bound(0.5)
    assert ft.floor_value == 13

    golay = k.construction_bound("golay24", "b")
    assert golay.floor_value == 98256

    leech = k.SphericalCode.builtin("e8_roots")
    assert len(leech) == 240 and leech.dim == 8
    assert abs(leech.max_inner_product() - 0.5) < 1e-12
    assert leech.check_pfender(0.5)["holds"]

    table = k.known_table()
    assert len(table) == 22 and table[0]["dimension"] == 3
    rec = k.reconcile(8, [lev, leech.report("e8_roots")])
    assert rec["upper_delta"] == 0 and rec["lower_delta"] == 0

    json.loads(lev.to_json())
    try:
        k.levenshtein_bound(2, 0.5)
    except k.KissingError:
        pass
    else:
        raise AssertionError("dimension 2 accepted")

    print("kissing_py smoke test passed")


if __name__ == "__main__":
    main()
