"""Exact expansion of the rational generating functions and coefficient
decoders for Betti and mixed Hodge numbers.

Everything lives in the polynomial ring Q[u, x, y] with an outer formal
variable t.  A truncated series is a plain list of :class:`MultiPoly`,
entry ``k`` being the coefficient of ``t^k``.  Rational functions are kept
in factored form: a polynomial numerator over a product of binomial factors
``(1 - c * monomial)`` with positive t-degree, each inverted order by order
as a geometric series.

The two closed forms driving the whole artifact:

* symmetric-power side
    ``Z  = (1 - u t)^2 / (1 - u^2 t)``
    ``Z4 = (1 - x u t)(1 - y u t) / (1 - x y u^2 t)``
* configuration side, via ``K(t) = Z(t) / Z(t^2)``
    ``K  = (1 - u t)^2 (1 - u^2 t^2) / ((1 - u^2 t)(1 - u t^2)^2)``
    ``K4 = (1 - x u t)(1 - y u t)(1 - x y u^2 t^2)
           / ((1 - x y u^2 t)(1 - x u t^2)(1 - y u t^2))``

The coefficient of ``t^n`` in ``K`` encodes the Betti numbers of the space
of n unordered distinct points on a punctured torus through the weight
function :func:`w`; the four-variable ``K4`` refines this to the mixed
Hodge numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "MultiPoly",
    "FactoredRatFun",
    "DecodeError",
    "expand",
    "macdonald_zeta",
    "cheah_zeta",
    "vakil_wood_conf",
    "w",
    "w_inverse",
    "decode_betti",
    "decode_hodge",
    "coefficient_json",
    "coefficient_from_json",
    "PUNCTURED_TORUS_HC",
    "TORUS_HC",
    "POINT_HC",
    "PUNCTURED_TORUS_HODGE",
    "POINT_HODGE",
    "sym_gf_betti",
    "sym_gf_hodge",
    "conf_gf_betti",
    "conf_gf_hodge",
    "genus0_gf",
    "genus0_weight_inverse",
    "multiply_series",
    "property_checks",
]


class DecodeError(ValueError):
    """A series coefficient that cannot be a valid Betti/Hodge encoding."""


# exponent keys are (u, x, y, t)
_U, _X, _Y, _T = range(4)


def _key(u=0, x=0, y=0, t=0):
    return (u, x, y, t)


class MultiPoly:
    """Polynomial in u, x, y, t with exact rational coefficients.

    Terms are held sparsely as exponent-tuple -> Fraction; zero coefficients
    are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, v in terms.items():
                v = Fraction(v)
                if v:
                    if min(k) < 0:
                        raise ValueError(f"negative exponent in {k}")
                    self.terms[tuple(k)] = v

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({_key(): 1})

    @classmethod
    def monomial(cls, coeff=1, u=0, x=0, y=0, t=0):
        return cls({_key(u, x, y, t): coeff})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            elif k in out:
                del out[k]
        res = MultiPoly()
        res.terms = out
        return res

    def __neg__(self):
        res = MultiPoly()
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                w = out.get(k, 0) + v1 * v2
                if w:
                    out[k] = w
                elif k in out:
                    del out[k]
        res = MultiPoly()
        res.terms = out
        return res

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        res = MultiPoly()
        if c:
            res.terms = {k: v * c for k, v in self.terms.items()}
        return res

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self.as_string()})"

    # -- structure ---------------------------------------------------------

    def is_one(self):
        return self.terms == {_key(): Fraction(1)}

    def t_degree(self):
        return max((k[_T] for k in self.terms), default=0)

    def t_coefficients(self, order):
        """Split into coefficients of t^0 .. t^order (t-exponent zeroed)."""
        out = [MultiPoly() for _ in range(order + 1)]
        for k, v in self.terms.items():
            if k[_T] <= order:
                out[k[_T]].terms[(k[_U], k[_X], k[_Y], 0)] = v
        return out

    def substitute_one(self, var):
        """Set the named variable ('u', 'x' or 'y') to 1."""
        pos = {"u": _U, "x": _X, "y": _Y}[var]
        out = MultiPoly()
        for k, v in self.terms.items():
            kk = list(k)
            kk[pos] = 0
            kk = tuple(kk)
            w = out.terms.get(kk, 0) + v
            if w:
                out.terms[kk] = w
            elif kk in out.terms:
                del out.terms[kk]
        return out

    def as_string(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms):
            v = self.terms[k]
            names = "uxyt"
            mono = ".".join(
                f"{names[i]}^{e}" if e > 1 else names[i]
                for i, e in enumerate(k) if e
            )
            if not mono:
                bits.append(str(v))
            elif v == 1:
                bits.append(mono)
            elif v == -1:
                bits.append("-" + mono)
            else:
                bits.append(f"{v}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")


@dataclass
class FactoredRatFun:
    """Rational function ``numerator / prod (1 - m_i)^{e_i}``.

    Every ``m_i`` must be a single monomial term of positive t-degree, so
    each factor is a unit in the ring of power series in t.
    """

    numerator: MultiPoly
    denominator_factors: list = field(default_factory=list)

    def __post_init__(self):
        for m, mult in self.denominator_factors:
            if len(m.terms) != 1:
                raise ValueError("denominator factor is not a monomial")
            ((k, _),) = m.terms.items()
            if k[_T] < 1:
                raise ValueError(
                    "factor (1 - %s) has constant term != 1 as a t-series"
                    % m.as_string()
                )
            if mult < 1:
                raise ValueError("factor multiplicity must be positive")

    def denominator_poly(self):
        """The expanded denominator polynomial (for round-trip checks)."""
        den = MultiPoly.one()
        for m, mult in self.denominator_factors:
            factor = MultiPoly.one() - m
            for _ in range(mult):
                den = den * factor
        return den


def expand(f: FactoredRatFun, t_order: int):
    """Coefficients of t^0 .. t^{t_order} of ``f`` as exact polynomials.

    Each factor ``1/(1 - c*m*t^d)`` is applied through the recurrence
    ``s'_k = s_k + c*m * s'_{k-d}``.
    """
    if t_order < 0:
        raise ValueError("t_order must be >= 0")
    series = f.numerator.t_coefficients(t_order)
    for m, mult in f.denominator_factors:
        ((k, c),) = m.terms.items()
        d = k[_T]
        step = MultiPoly({(k[_U], k[_X], k[_Y], 0): c})
        for _ in range(mult):
            for j in range(d, t_order + 1):
                series[j] = series[j] + step * series[j - d]
    return series


def multiply_series(a, b, t_order):
    """Truncated product of two coefficient lists."""
    out = [MultiPoly() for _ in range(t_order + 1)]
    for i, ai in enumerate(a[: t_order + 1]):
        if not ai:
            continue
        for j, bj in enumerate(b[: t_order + 1 - i]):
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def macdonald_zeta(h_c, t_order):
    """Symmetric-power zeta series from compact-support Betti numbers.

    ``h_c`` lists pairs ``(i, dim)``; the series is
    ``prod_i (1 - u^i t)^{(-1)^{i+1} dim}``.
    """
    num = MultiPoly.one()
    dens = []
    for i, dim in h_c:
        if dim < 0:
            raise ValueError("negative Betti number")
        if dim == 0:
            continue
        m = MultiPoly.monomial(u=i, t=1)
        if i % 2 == 1:
            factor = MultiPoly.one() - m
            for _ in range(dim):
                num = num * factor
        else:
            dens.append((m, dim))
    return expand(FactoredRatFun(num, dens), t_order)


def cheah_zeta(h, t_order):
    """Four-variable refinement of :func:`macdonald_zeta`.

    ``h`` lists compact-support mixed Hodge data ``(i, a, b, dim)``; the
    series is ``prod (1 - x^a y^b u^i t)^{(-1)^{i+1} dim}``.
    """
    num = MultiPoly.one()
    dens = []
    for i, a, b, dim in h:
        if dim < 0:
            raise ValueError("negative Hodge number")
        if dim == 0:
            continue
        m = MultiPoly.monomial(u=i, x=a, y=b, t=1)
        if i % 2 == 1:
            factor = MultiPoly.one() - m
            for _ in range(dim):
                num = num * factor
        else:
            dens.append((m, dim))
    return expand(FactoredRatFun(num, dens), t_order)


def vakil_wood_conf(z, t_order):
    """Configuration series K with ``K(t) * Z(t^2) = Z(t)``."""
    if len(z) <= t_order:
        raise ValueError("input series too short for requested order")
    if not z[0].is_one():
        raise ValueError("series must have constant term 1")
    k = [MultiPoly() for _ in range(t_order + 1)]
    k[0] = MultiPoly.one()
    for j in range(1, t_order + 1):
        acc = z[j]
        # subtract sum_{m<j} K_m * Z2_{j-m}; Z2 has z_r at t^{2r}
        for m in range(j):
            if (j - m) % 2 == 0:
                acc = acc - k[m] * z[(j - m) // 2]
        k[j] = acc
    return k


# -- weight function -------------------------------------------------------


def w(i):
    """Weight of the i-th cohomology: 3i/2 for even i, (3i-1)/2 for odd."""
    if i < 0:
        raise ValueError("negative degree")
    return 3 * i // 2 if i % 2 == 0 else (3 * i - 1) // 2


def w_inverse(v):
    """The unique i with w(i) == v, or None."""
    if v < 0:
        return None
    for i in ((2 * v) // 3, (2 * v + 1) // 3):
        if i >= 0 and w(i) == v:
            return i
    return None


# -- decoders --------------------------------------------------------------


def decode_betti(coeff_n, n, weight_inverse=None):
    """Betti numbers hidden in the t^n coefficient of the K series.

    The u-exponent e of each term must satisfy ``e = 2n - w(i)`` for some i,
    and then ``h^i = (-1)^i * coefficient``.  Any unmatched exponent or a
    negative decoded value is a hard error: it means the purity encoding was
    violated somewhere upstream.

    ``weight_inverse`` defaults to the punctured-torus weight; the genus-zero
    sanity series decodes with the pure weight 2i instead.
    """
    if weight_inverse is None:
        weight_inverse = w_inverse
    h = {}
    for k, v in coeff_n.terms.items():
        if k[_X] or k[_Y] or k[_T]:
            raise DecodeError("coefficient involves variables other than u")
        i = weight_inverse(2 * n - k[_U])
        if i is None:
            raise DecodeError(
                f"u-exponent {k[_U]} at t^{n} has no weight preimage"
            )
        val = v if i % 2 == 0 else -v
        if val < 0 or val.denominator != 1:
            raise DecodeError(f"decoded h^{i} = {val} is not a Betti number")
        if val:
            h[i] = int(val)
    top = max(h, default=0)
    return [h.get(i, 0) for i in range(top + 1)]


def decode_hodge(coeff_n, n):
    """Mixed Hodge table {(i, a, b): dim} from the t^n coefficient of K4.

    A term ``c * x^p y^q u^e`` contributes ``(-1)^i c`` to
    ``h^{n-p, n-q}`` of the i-th cohomology, where ``e = 2n - w(i)``;
    every entry must sit on the weight line a + b = w(i).
    """
    table = {}
    for k, v in coeff_n.terms.items():
        if k[_T]:
            raise DecodeError("coefficient still involves t")
        i = w_inverse(2 * n - k[_U])
        if i is None:
            raise DecodeError(
                f"u-exponent {k[_U]} at t^{n} has no weight preimage"
            )
        a, b = n - k[_X], n - k[_Y]
        if a < 0 or b < 0:
            raise DecodeError(f"x/y exponent exceeds n at t^{n}")
        val = v if i % 2 == 0 else -v
        if val < 0 or val.denominator != 1:
            raise DecodeError(
                f"decoded h^{{{a},{b}}}(H^{i}) = {val} is not a dimension"
            )
        if val:
            if a + b != w(i):
                raise DecodeError(
                    f"entry ({i},{a},{b}) off the weight line a+b=w(i)"
                )
            table[(i, a, b)] = int(val)
    return table


# -- JSON interface --------------------------------------------------------


def coefficient_json(poly, n):
    """Serialize one series coefficient; exact integer strings only."""
    coeffs = []
    for k in sorted(poly.terms, key=lambda k: (k[_U], k[_X], k[_Y])):
        v = poly.terms[k]
        if v.denominator != 1:
            raise ValueError("non-integer coefficient cannot be serialized")
        coeffs.append(
            {"x": k[_X], "y": k[_Y], "u": k[_U], "value": str(v.numerator)}
        )
    return {"n": n, "coefficients": coeffs}


def coefficient_from_json(doc):
    poly = MultiPoly()
    for c in doc["coefficients"]:
        poly.terms[(c["u"], c["x"], c["y"], 0)] = Fraction(int(c["value"]))
    return doc["n"], poly


# -- the concrete varieties ------------------------------------------------

# compact-support Betti numbers, as (degree, dimension) pairs
PUNCTURED_TORUS_HC = ((1, 2), (2, 1))
TORUS_HC = ((0, 1), (1, 2), (2, 1))
POINT_HC = ((0, 1),)

# compact-support mixed Hodge data, as (degree, a, b, dimension)
PUNCTURED_TORUS_HODGE = ((1, 1, 0, 1), (1, 0, 1, 1), (2, 1, 1, 1))
POINT_HODGE = ((0, 0, 0, 1),)


def _one_minus(coeff=1, **exps):
    return MultiPoly.one() - MultiPoly.monomial(coeff, **exps)


def sym_gf_betti():
    """(1 - u t)^2 / (1 - u^2 t): symmetric powers of the punctured torus."""
    num = _one_minus(u=1, t=1) * _one_minus(u=1, t=1)
    return FactoredRatFun(num, [(MultiPoly.monomial(u=2, t=1), 1)])


def sym_gf_hodge():
    """(1 - x u t)(1 - y u t) / (1 - x y u^2 t)."""
    num = _one_minus(x=1, u=1, t=1) * _one_minus(y=1, u=1, t=1)
    return FactoredRatFun(num, [(MultiPoly.monomial(x=1, y=1, u=2, t=1), 1)])


def conf_gf_betti():
    """(1-ut)^2 (1-u^2 t^2) / ((1-u^2 t)(1-u t^2)^2): Betti generating fn."""
    num = (
        _one_minus(u=1, t=1)
        * _one_minus(u=1, t=1)
        * _one_minus(u=2, t=2)
    )
    return FactoredRatFun(
        num,
        [(MultiPoly.monomial(u=2, t=1), 1), (MultiPoly.monomial(u=1, t=2), 2)],
    )


def conf_gf_hodge():
    """Four-variable configuration generating function."""
    num = (
        _one_minus(x=1, u=1, t=1)
        * _one_minus(y=1, u=1, t=1)
        * _one_minus(x=1, y=1, u=2, t=2)
    )
    return FactoredRatFun(
        num,
        [
            (MultiPoly.monomial(x=1, y=1, u=2, t=1), 1),
            (MultiPoly.monomial(x=1, u=1, t=2), 1),
            (MultiPoly.monomial(y=1, u=1, t=2), 1),
        ],
    )


def genus0_gf():
    """(1 - u^2 t^2) / (1 - u^2 t): the affine-line analogue."""
    return FactoredRatFun(
        _one_minus(u=2, t=2), [(MultiPoly.monomial(u=2, t=1), 1)]
    )


def genus0_weight_inverse(v):
    """Inverse of the genus-zero weight i -> 2i."""
    return v // 2 if v >= 0 and v % 2 == 0 else None


# -- module-level property checks ------------------------------------------


def property_checks(t_order=10):
    """The series-side invariants, as (name, passed, detail) result dicts."""
    results = []

    def record(name, passed, detail=None):
        entry = {"name": name, "n_range": f"t<={t_order}", "passed": passed}
        if detail and not passed:
            entry["counterexample"] = str(detail)
        results.append(entry)

    # round trip: expansion times denominator reproduces the numerator
    bad = None
    for name, f in (
        ("sym", sym_gf_betti()),
        ("sym4", sym_gf_hodge()),
        ("conf", conf_gf_betti()),
        ("conf4", conf_gf_hodge()),
        ("genus0", genus0_gf()),
    ):
        coeffs = expand(f, t_order)
        den = f.denominator_poly().t_coefficients(t_order)
        num = f.numerator.t_coefficients(t_order)
        if multiply_series(coeffs, den, t_order) != num:
            bad = name
    record("expand_round_trip", bad is None, bad)

    # the quotient identity: K built from Z equals its closed form
    z = macdonald_zeta(PUNCTURED_TORUS_HC, t_order)
    k = vakil_wood_conf(z, t_order)
    record("vakil_wood_identity", k == expand(conf_gf_betti(), t_order))
    z4 = cheah_zeta(PUNCTURED_TORUS_HODGE, t_order)
    k4 = vakil_wood_conf(z4, t_order)
    record("vakil_wood_identity_4var", k4 == expand(conf_gf_hodge(), t_order))

    # specialization x = y = 1 collapses the refined series
    collapsed = [c.substitute_one("x").substitute_one("y") for c in z4]
    record("specialization_coherence", collapsed == z)

    # u = 1 turns the configuration series into (-1)^n
    bad = None
    for n, c in enumerate(k):
        val = c.substitute_one("u").substitute_one("x").substitute_one("y")
        want = MultiPoly.monomial(coeff=(-1) ** n)
        if val != want:
            bad = f"t^{n}: {val.as_string()}"
    record("euler_characteristic_law", bad is None, bad)

    # the genus-zero series decodes to the classical table
    bad = None
    for n, c in enumerate(expand(genus0_gf(), t_order)):
        got = decode_betti(c, n, weight_inverse=genus0_weight_inverse)
        want = [1] if n < 2 else [1, 1]
        if got != want:
            bad = f"n={n}: {got}"
    record("genus_zero_table_decode", bad is None, bad)
    return results
