"""Oracle structures: the genus-zero algebra, V(n), phi/psi and the suite."""

import random
from fractions import Fraction

import pytest

from conftorus.gcalg import Element, G, Monomial, X, Y, multiply, normalize
from conftorus.oracle import (
    ArnoldAlgebra,
    arnold_conf_betti,
    check_left_inverse,
    make_v_monomial,
    phi,
    psi,
    psi_element,
    run_selftest,
    v_basis,
)


# -- genus-zero algebra ---------------------------------------------------------


def test_arnold_betti_small():
    assert arnold_conf_betti(1) == [1]
    assert arnold_conf_betti(2) == [1, 1]
    assert arnold_conf_betti(5) == [1, 1, 0, 0, 0]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_arnold_table(n):
    dims = arnold_conf_betti(n)
    assert dims == [1, 1] + [0] * (len(dims) - 2)


def test_arnold_quotient_dims_are_falling_factorial_coefficients():
    # dimensions of ordered-configuration cohomology of the line:
    # coefficients of (1+t)(1+2t)...(1+(n-1)t)
    for n in range(1, 6):
        poly = [1]
        for k in range(1, n):
            poly = [
                a + k * b
                for a, b in zip(poly + [0], [0] + poly)
            ]
        alg = ArnoldAlgebra(n)
        got = [alg.quotient_dim(q) for q in range(len(poly))]
        assert got == poly, n


def test_arnold_dies_at_degree_n():
    alg = ArnoldAlgebra(4)
    assert alg.quotient_dim(3) > 0
    assert alg.quotient_dim(4) == 0


# -- V(n) -------------------------------------------------------------------------


def test_v_basis_counts():
    # n=2: 9 pair-free assignments + 2 labelled pairs
    assert len(v_basis(2)) == 11
    assert len(v_basis(3)) == 45
    assert len(v_basis(0)) == 1


def test_v_monomial_rejects_repeated_index():
    with pytest.raises(ValueError):
        make_v_monomial(xs=(1,), ypairs=((1, 2),))


# -- phi ---------------------------------------------------------------------------


def test_phi_examples():
    vm = make_v_monomial(xpairs=((1, 2),))
    assert phi(vm) == Element.from_generators(G(1, 2), X(1))
    assert phi(make_v_monomial()) == Element({(): Fraction(1)})
    vm = make_v_monomial(xs=(1,), ys=(2,), xpairs=((3, 4),))
    want = Element.from_monomial(
        normalize((X(1), Y(2), G(3, 4), X(3)))
    )
    assert phi(vm) == want


# -- psi ---------------------------------------------------------------------------


def test_psi_adjacent_gs_die():
    m = normalize((G(1, 2), G(2, 3)))
    assert psi(m) is None
    m = normalize((G(1, 2), G(2, 3), X(4), Y(5)))
    assert psi(m) is None


def test_psi_pair_class():
    vm, sign = psi(normalize((G(1, 2), X(1))))
    assert vm == make_v_monomial(xpairs=((1, 2),)) and sign == 1
    # either endpoint letter produces the same image
    vm2, sign2 = psi(normalize((G(1, 2), X(2))))
    assert (vm2, sign2) == (vm, sign)


def test_psi_bare_g_dies():
    assert psi(normalize((G(1, 2), X(3)))) is None
    assert psi(normalize((G(1, 2),))) is None


def test_psi_well_defined_on_transport():
    rng = random.Random(5)
    n = 5
    pool = [G(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]
    pool += [X(i) for i in range(1, n + 1)] + [Y(i) for i in range(1, n + 1)]
    for _ in range(200):
        mu = normalize(tuple(rng.sample(pool, rng.randint(0, 4))))
        if mu is None:
            continue
        i, j = sorted(rng.sample(range(1, n + 1), 2))
        left = multiply(Monomial((G(i, j), X(i)), 1), Element.from_monomial(mu))
        right = multiply(Monomial((G(i, j), X(j)), 1), Element.from_monomial(mu))
        assert psi_element(left) == psi_element(right)


def test_psi_annihilates_relation_multiples():
    rng = random.Random(13)
    n = 5
    pool = [G(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]
    pool += [X(i) for i in range(1, n + 1)] + [Y(i) for i in range(1, n + 1)]
    for _ in range(150):
        mu = normalize(tuple(rng.sample(pool, rng.randint(0, 4))))
        if mu in (None,):
            continue
        mu_el = Element.from_monomial(mu)
        i, j, k = rng.sample(range(1, n + 1), 3)
        assert not psi_element(
            multiply(Monomial((G(i, j),)), multiply(Monomial((G(j, k),)), mu_el))
        )
        assert not psi_element(
            multiply(Monomial((X(i),)), multiply(Monomial((Y(i),)), mu_el))
        )


def test_left_inverse():
    for n in (0, 2, 4):
        ok, cex = check_left_inverse(n)
        assert ok, cex


# -- suite -------------------------------------------------------------------------


def test_run_selftest_n3_all_pass():
    results = run_selftest(3, include_arnold=False)
    names = {r["name"] for r in results}
    assert "cycle_vanishing" in names and "boundary_property" in names
    failed = [r for r in results if not r["passed"]]
    assert not failed, failed
