"""Spectral engine: invariant bases, surviving dimensions, purity, decoded
Betti/Hodge tables, and the cross-check against the series module."""

from fractions import Fraction

import pytest

from conftorus.gcalg import Element, X, Y, symmetrize
from conftorus.series import w
from conftorus.specseq import (
    SpectralEngine,
    betti_and_hodge,
    e3_dims,
    invariant_basis,
    purity_check,
    verify_against_series,
)


@pytest.fixture(scope="module")
def reports():
    return {n: e3_dims(n) for n in range(5)}


# -- invariant bases -----------------------------------------------------------


def test_invariant_dims_n2():
    assert invariant_basis(2, 1, 0).dim == 2
    assert invariant_basis(2, 2, 0).dim == 1
    assert invariant_basis(2, 1, 1).dim == 2


def test_invariant_vectors_are_fixed_n2():
    inv = invariant_basis(2, 2, 0)
    space = inv.space
    # the lone invariant is x1 y2 - y1 x2 up to scale
    want = space.reduce(
        Element.from_generators(X(1), Y(2))
        - Element.from_generators(Y(1), X(2))
    )
    (vec,) = list(inv.vectors())
    dense = [vec.get(i, Fraction(0)) for i in range(space.dim)]
    ratio = None
    for a, b in zip(dense, want):
        if bool(a) != bool(b):
            pytest.fail("different support")
        if a:
            r = a / b
            assert ratio is None or r == ratio
            ratio = r
    assert ratio is not None


def test_invariants_agree_with_symmetrizer_image_n3():
    eng = SpectralEngine(3)
    for q in range(eng.layout.npairs + 1):
        for p in range(7):
            inv = eng.invariants(p, q)
            if inv is None or inv.space.dim == 0:
                continue
            space = inv.space
            rows = []
            for mask in space.quotient_basis:
                e = symmetrize(
                    Element.from_monomial(space.layout.decode(mask)), 3
                )
                vec = space.reduce(e)
                row = {i: v for i, v in enumerate(vec) if v}
                if row:
                    rows.append(row)
            from conftorus.linalg import rank_of_rows

            int_rows = []
            for row in rows:
                denom = 1
                for v in row.values():
                    denom *= v.denominator
                int_rows.append({k: int(v * denom) for k, v in row.items()})
            assert rank_of_rows(int_rows) == inv.dim, (p, q)


# -- E3 dimensions -----------------------------------------------------------


def test_e3_dims_n2(reports):
    rep = reports[2]
    assert rep.e3_inv == {(0, 0): 1, (1, 0): 2, (1, 1): 2}
    # d(g12) spans the (2,0) invariants, so nothing survives there
    assert rep.e2_inv[(2, 0)] == 1
    assert (2, 0) not in rep.e3_inv


def test_e3_dims_n1(reports):
    assert reports[1].e3_inv == {(0, 0): 1, (1, 0): 2}


def test_e3_dims_n0(reports):
    assert reports[0].e3_inv == {(0, 0): 1}


# -- purity --------------------------------------------------------------------


def test_purity_small_n(reports):
    for n in range(5):
        ok, violations = purity_check(reports[n])
        assert ok and violations == []


def test_purity_negative_control(reports):
    import copy

    doctored = copy.deepcopy(reports[2])
    doctored.e3_inv[(0, 1)] = 1
    ok, violations = purity_check(doctored)
    assert not ok and violations == [(0, 1)]


def test_weight_identity_on_survivors(reports):
    for n in range(5):
        for (p, q), d in reports[n].e3_inv.items():
            assert d > 0
            assert p + 2 * q == w(p + q)


# -- betti and hodge --------------------------------------------------------------


def test_betti_tables(reports):
    assert reports[0].betti == [1]
    assert reports[1].betti == [1, 2]
    assert reports[2].betti == [1, 2, 2]
    assert reports[3].betti == [1, 2, 4, 4]


def test_betti_positivity_and_top_degree(reports):
    for n in range(5):
        betti = reports[n].betti
        assert betti[0] == 1
        assert len(betti) <= 2 * n + 1
        assert all(h >= 0 for h in betti)


def test_hodge_tables_small(reports):
    assert reports[1].hodge == {
        (0, 0, 0): 1,
        (1, 1, 0): 1,
        (1, 0, 1): 1,
    }
    rep2 = reports[2].hodge
    assert rep2[(2, 2, 1)] == 1 and rep2[(2, 1, 2)] == 1


def test_hodge_sits_on_weight_line(reports):
    for n in range(5):
        for (i, a, b), d in reports[n].hodge.items():
            assert d > 0 and a + b == w(i)


def test_betti_and_hodge_consistency(reports):
    for n in range(5):
        betti, hodge = betti_and_hodge(reports[n])
        assert betti == reports[n].betti
        sums = {}
        for (i, _, _), d in hodge.items():
            sums[i] = sums.get(i, 0) + d
        assert [sums.get(i, 0) for i in range(len(betti))] == betti


# -- series cross-check --------------------------------------------------------------


def test_verify_against_series(reports):
    for n in range(5):
        verdict = verify_against_series(n, reports[n])
        assert verdict["match"], verdict["mismatches"]


def test_euler_characteristic(reports):
    for n in range(5):
        chi = sum((-1) ** i * h for i, h in enumerate(reports[n].betti))
        assert chi == (-1) ** n


# -- report serialization ----------------------------------------------------------


def test_report_json_schema(reports):
    import json

    doc = json.loads(reports[2].to_json())
    assert set(doc) == {
        "n",
        "e2_inv",
        "e3_inv",
        "betti",
        "hodge",
        "purity",
        "violations",
        "series_match",
    }
    assert doc["betti"] == [1, 2, 2]
    assert doc["purity"] is True
    assert doc["violations"] == []
    assert {"i": 2, "a": 2, "b": 1, "dim": 1} in doc["hodge"]
    assert doc["e3_inv"]["1,1"] == 2
