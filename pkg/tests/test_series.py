"""Series module: expansion, zeta constructors, decoders, serialization.

Derived expected values are frozen from an independent long-division oracle
(below), which divides by the fully expanded denominator instead of
inverting factors one at a time.
"""

import json
from fractions import Fraction

import pytest

from conftorus.series import (
    DecodeError,
    FactoredRatFun,
    MultiPoly,
    PUNCTURED_TORUS_HC,
    PUNCTURED_TORUS_HODGE,
    POINT_HC,
    POINT_HODGE,
    TORUS_HC,
    cheah_zeta,
    coefficient_from_json,
    coefficient_json,
    conf_gf_betti,
    conf_gf_hodge,
    decode_betti,
    decode_hodge,
    expand,
    genus0_gf,
    genus0_weight_inverse,
    macdonald_zeta,
    multiply_series,
    property_checks,
    sym_gf_betti,
    sym_gf_hodge,
    vakil_wood_conf,
    w,
    w_inverse,
)


def u_poly(**coeffs):
    """Shorthand: u_poly(u0=1, u2=-1) -> 1 - u^2."""
    terms = {}
    for key, c in coeffs.items():
        terms[(int(key[1:]), 0, 0, 0)] = c
    return MultiPoly(terms)


def long_division_oracle(f: FactoredRatFun, order):
    """Independent expansion: one polynomial division by the expanded
    denominator, coefficient by coefficient in t."""
    num = f.numerator.t_coefficients(order)
    den = f.denominator_poly().t_coefficients(order)
    assert den[0].is_one()
    out = []
    for k in range(order + 1):
        acc = num[k]
        for m in range(k):
            acc = acc - out[m] * den[k - m]
        out.append(acc)
    return out


# -- expand ------------------------------------------------------------------


def test_expand_genus0_matches_printed_series():
    got = expand(genus0_gf(), 3)
    assert got == [
        u_poly(u0=1),
        u_poly(u2=1),
        u_poly(u4=1, u2=-1),
        u_poly(u6=1, u4=-1),
    ]


def test_expand_order_zero_is_constant_term():
    for f in (sym_gf_betti(), sym_gf_hodge(), conf_gf_betti(),
              conf_gf_hodge(), genus0_gf()):
        assert expand(f, 0) == [MultiPoly.one()]


def test_expand_conf_matches_long_division_oracle():
    f = conf_gf_betti()
    got = expand(f, 8)
    assert got == long_division_oracle(f, 8)
    # frozen values computed with the oracle
    assert got[1] == u_poly(u2=1, u1=-2)
    assert got[2] == u_poly(u4=1, u3=-2, u1=2)
    assert got[3] == u_poly(u6=1, u5=-2, u3=4, u2=-4)


def test_expand_four_variable_matches_long_division_oracle():
    f = conf_gf_hodge()
    assert expand(f, 6) == long_division_oracle(f, 6)


def test_expand_rejects_non_unit_factor():
    with pytest.raises(ValueError):
        FactoredRatFun(MultiPoly.one(), [(MultiPoly.monomial(u=1), 1)])
    with pytest.raises(ValueError):
        FactoredRatFun(
            MultiPoly.one(), [(MultiPoly.one() - MultiPoly.monomial(t=1), 1)]
        )


def test_expand_round_trip_property():
    for f in (sym_gf_betti(), conf_gf_betti(), conf_gf_hodge(), genus0_gf()):
        coeffs = expand(f, 9)
        den = f.denominator_poly().t_coefficients(9)
        assert multiply_series(coeffs, den, 9) == f.numerator.t_coefficients(9)


# -- macdonald ---------------------------------------------------------------


def test_macdonald_punctured_torus_closed_form():
    assert macdonald_zeta(PUNCTURED_TORUS_HC, 8) == expand(sym_gf_betti(), 8)


def test_macdonald_point():
    assert macdonald_zeta(POINT_HC, 5) == [MultiPoly.one()] * 6


def symmetric_power_invariants_oracle(n):
    """Signed S_n-invariant dimensions of the n-th tensor power of the
    four-dimensional algebra {1, x, y, xy} (degrees 0,1,1,2), via the
    averaging projector.  Returns dims per total degree."""
    letters = [(0, "1"), (1, "x"), (1, "y"), (2, "xy")]
    words = [()]
    for _ in range(n):
        words = [wd + (l,) for wd in words for l in letters]
    index = {wd: k for k, wd in enumerate(words)}

    def permute(word, sigma):
        # permuting graded tensor factors, with the Koszul sign of the
        # induced reordering of odd slots
        arranged = [None] * n
        for src, dst in enumerate(sigma):
            arranged[dst - 1] = word[src]
        odd_positions = [i for i, l in enumerate(word) if l[0] % 2 == 1]
        moved = [sigma[i] - 1 for i in odd_positions]
        inv = sum(
            1
            for s in range(len(moved))
            for t in range(s + 1, len(moved))
            if moved[s] > moved[t]
        )
        return tuple(arranged), (-1) ** inv

    from itertools import permutations as perms

    sigmas = list(perms(range(1, n + 1)))
    dims = {}
    seen = set()
    for wd in words:
        if wd in seen:
            continue
        orbit = {}
        dead = False
        for sigma in sigmas:
            img, s = permute(wd, sigma)
            if img in orbit and orbit[img] != s:
                dead = True
            orbit[img] = s
        seen.update(orbit)
        if not dead:
            deg = sum(l[0] for l in wd)
            dims[deg] = dims.get(deg, 0) + 1
    return dims


def test_macdonald_full_torus_against_invariant_count():
    got = macdonald_zeta(TORUS_HC, 3)
    for n in range(4):
        dims = symmetric_power_invariants_oracle(n)
        expected = MultiPoly(
            {(i, 0, 0, 0): (-1) ** i * d for i, d in dims.items()}
        )
        assert got[n] == expected, f"n={n}"


# -- cheah -------------------------------------------------------------------


def test_cheah_punctured_torus_closed_form():
    assert cheah_zeta(PUNCTURED_TORUS_HODGE, 8) == expand(sym_gf_hodge(), 8)


def test_cheah_point():
    assert cheah_zeta(POINT_HODGE, 4) == [MultiPoly.one()] * 5


def test_cheah_specializes_to_macdonald():
    z4 = cheah_zeta(PUNCTURED_TORUS_HODGE, 7)
    z = macdonald_zeta(PUNCTURED_TORUS_HC, 7)
    assert [c.substitute_one("x").substitute_one("y") for c in z4] == z


# -- vakil-wood --------------------------------------------------------------


def test_vakil_wood_punctured_torus():
    z = macdonald_zeta(PUNCTURED_TORUS_HC, 10)
    assert vakil_wood_conf(z, 10) == expand(conf_gf_betti(), 10)


def test_vakil_wood_trivial():
    z = [MultiPoly.one()] + [MultiPoly.zero()] * 5
    k = vakil_wood_conf(z, 5)
    assert k == [MultiPoly.one()] + [MultiPoly.zero()] * 5


def test_vakil_wood_rejects_bad_constant_term():
    z = [MultiPoly.monomial(2)] + [MultiPoly.zero()] * 3
    with pytest.raises(ValueError):
        vakil_wood_conf(z, 3)


def test_vakil_wood_u_equal_one_gives_alternating_signs():
    # oracle: (1-t)/(1-t^2) = 1/(1+t)
    oracle = expand(
        FactoredRatFun(
            MultiPoly.one() - MultiPoly.monomial(t=1),
            [(MultiPoly.monomial(t=2), 1)],
        ),
        10,
    )
    k = vakil_wood_conf(macdonald_zeta(PUNCTURED_TORUS_HC, 10), 10)
    for n in range(11):
        val = k[n].substitute_one("u")
        assert val == oracle[n]
        assert val == MultiPoly.monomial((-1) ** n)


# -- weight function ---------------------------------------------------------


def test_w_small_values():
    assert [w(i) for i in range(5)] == [0, 1, 3, 4, 6]


def test_w_inverse_gaps():
    assert w_inverse(2) is None
    assert w_inverse(5) is None
    for i in range(40):
        assert w_inverse(w(i)) == i


def test_w_image_scan():
    image = {w(i) for i in range(10)}
    for v in range(15):
        assert (w_inverse(v) is not None) == (v in image)


# -- decoders ----------------------------------------------------------------


def test_decode_betti_small_n():
    assert decode_betti(u_poly(u2=1, u1=-2), 1) == [1, 2]
    assert decode_betti(u_poly(u4=1, u3=-2, u1=2), 2) == [1, 2, 2]
    assert decode_betti(u_poly(u0=1), 0) == [1]


def test_decode_betti_rejects_bad_exponent():
    with pytest.raises(DecodeError):
        decode_betti(u_poly(u1=1), 0)  # 2n - e = -1 has no preimage


def test_decode_betti_rejects_negative():
    with pytest.raises(DecodeError):
        decode_betti(u_poly(u5=1), 3)  # i = 1 odd, +1 would decode to -1


def test_decode_hodge_small_n():
    k4 = vakil_wood_conf(cheah_zeta(PUNCTURED_TORUS_HODGE, 3), 3)
    assert decode_hodge(k4[0], 0) == {(0, 0, 0): 1}
    assert decode_hodge(k4[1], 1) == {
        (0, 0, 0): 1,
        (1, 1, 0): 1,
        (1, 0, 1): 1,
    }
    table2 = decode_hodge(k4[2], 2)
    assert table2[(2, 2, 1)] == 1 and table2[(2, 1, 2)] == 1
    # row sums reproduce the Betti numbers
    k = vakil_wood_conf(macdonald_zeta(PUNCTURED_TORUS_HC, 3), 3)
    for n in range(4):
        betti = decode_betti(k[n], n)
        table = decode_hodge(k4[n], n)
        sums = {}
        for (i, _, _), d in table.items():
            sums[i] = sums.get(i, 0) + d
        assert [sums.get(i, 0) for i in range(len(betti))] == betti


def test_genus0_decode_reproduces_classical_table():
    for n, c in enumerate(expand(genus0_gf(), 8)):
        got = decode_betti(c, n, weight_inverse=genus0_weight_inverse)
        assert got == ([1] if n < 2 else [1, 1])


# -- serialization ------------------------------------------------------------


def test_coefficient_json_round_trip_and_sorting():
    poly = MultiPoly(
        {(4, 0, 0, 0): 1, (3, 0, 0, 0): -2, (1, 0, 0, 0): 2}
    )
    doc = coefficient_json(poly, 2)
    assert doc["n"] == 2
    assert [c["u"] for c in doc["coefficients"]] == [1, 3, 4]
    assert all(isinstance(c["value"], str) for c in doc["coefficients"])
    n, back = coefficient_from_json(json.loads(json.dumps(doc)))
    assert n == 2 and back == poly


def test_coefficient_json_rejects_non_integer():
    poly = MultiPoly({(0, 0, 0, 0): Fraction(1, 2)})
    with pytest.raises(ValueError):
        coefficient_json(poly, 0)


def test_property_checks_all_pass():
    results = property_checks()
    assert results and all(r["passed"] for r in results)
