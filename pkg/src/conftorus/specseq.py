"""Invariant spectral-sequence computation on top of :mod:`gcalg`.

For each bidegree (p, q) the engine takes the subspace of the quotient fixed
by the whole symmetric group (kernel of the two generating permutations on
quotient coordinates), applies the differential inside the invariants, and
reads off the surviving dimensions

    e3(p, q) = dim ker(d: (p,q) -> (p+2,q-1)) - dim im(d: (p-2,q+1) -> (p,q)).

Taking invariants commutes with cohomology in characteristic zero, so these
are the invariant E3 dimensions, which assemble into the Betti numbers of
the unordered configuration space and, through the Hodge bigrading carried
by every basis vector, into its mixed Hodge table.

Everything splits along the Hodge bidegree (a, b) = (#x + #g, #y + #g): the
relations, the group action and the differential all preserve it, so the
whole computation runs blockwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import series as series_mod
from .gcalg import BidegreeSpace, Layout
from .linalg import kernel_of_columns, rank_of_rows

__all__ = [
    "InvariantSpace",
    "SpectralReport",
    "SpectralEngine",
    "invariant_basis",
    "e3_dims",
    "purity_check",
    "betti_and_hodge",
    "verify_against_series",
]


@dataclass
class InvariantSpace:
    """Fixed vectors of one bidegree, in quotient coordinates.

    ``blocks`` maps a Hodge bidegree (a, b) to a list of basis vectors, each
    a dict {quotient coordinate index: Fraction}.
    """

    n: int
    p: int
    q: int
    space: BidegreeSpace
    blocks: dict

    @property
    def dim(self):
        return sum(len(v) for v in self.blocks.values())

    def vectors(self):
        for block in self.blocks.values():
            yield from block


@dataclass
class SpectralReport:
    n: int
    e2_inv: dict = field(default_factory=dict)
    ker: dict = field(default_factory=dict)
    im_in: dict = field(default_factory=dict)
    e3_inv: dict = field(default_factory=dict)
    e3_hodge: dict = field(default_factory=dict)  # (p,q,a,b) -> dim
    betti: list = field(default_factory=list)
    hodge: dict = field(default_factory=dict)  # (i,a,b) -> dim
    purity_ok: bool = True
    violations: list = field(default_factory=list)
    series_match: bool | None = None

    def to_json_dict(self):
        doc = {
            "n": self.n,
            "e2_inv": {f"{p},{q}": d for (p, q), d in sorted(self.e2_inv.items()) if d},
            "e3_inv": {f"{p},{q}": d for (p, q), d in sorted(self.e3_inv.items()) if d},
            "betti": list(self.betti),
            "hodge": [
                {"i": i, "a": a, "b": b, "dim": d}
                for (i, a, b), d in sorted(self.hodge.items())
            ],
            "purity": self.purity_ok,
            "violations": [list(v) for v in self.violations],
            "series_match": self.series_match,
        }
        return doc

    def to_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True)


class SpectralEngine:
    """Caches bidegree spaces and invariant data for one n."""

    def __init__(self, n, modular_prescreen=False):
        self.n = n
        self.layout = Layout(n)
        self.modular_prescreen = modular_prescreen
        self.prescreen_agreed = True
        self._spaces = {}
        self._invariants = {}
        self._perm_tables = None

    # -- spaces --------------------------------------------------------------

    def space(self, p, q):
        key = (p, q)
        if key not in self._spaces:
            lay = self.layout
            if p < 0 or q < 0 or p > 2 * self.n or q > lay.npairs:
                self._spaces[key] = None
            else:
                self._spaces[key] = BidegreeSpace(self.n, p, q, layout=lay)
        return self._spaces[key]

    def _generators(self):
        """Bit tables for (1 2) and the n-cycle, which generate S_n."""
        if self._perm_tables is None:
            n = self.n
            tables = []
            if n >= 2:
                swap = tuple([2, 1] + list(range(3, n + 1)))
                cycle = tuple(list(range(2, n + 1)) + [1])
                tables.append(self.layout.perm_table(swap))
                if n > 2:
                    tables.append(self.layout.perm_table(cycle))
            self._perm_tables = tables
        return self._perm_tables

    # -- invariants ------------------------------------------------------------

    def invariants(self, p, q) -> InvariantSpace | None:
        key = (p, q)
        if key in self._invariants:
            return self._invariants[key]
        space = self.space(p, q)
        if space is None or space.free_dim == 0:
            self._invariants[key] = None
            return None
        lay = self.layout
        blocks_cols = {}
        for idx, mask in enumerate(space.quotient_basis):
            blocks_cols.setdefault(lay.hodge_bidegree(mask), []).append(idx)
        blocks = {}
        tables = self._generators()
        for ab, cols in sorted(blocks_cols.items()):
            local = {g: l for l, g in enumerate(cols)}
            if not tables:
                blocks[ab] = [{g: Fraction(1)} for g in cols]
                continue
            constraint_cols = []
            for g in cols:
                col = {}
                for tno, table in enumerate(tables):
                    s, img = lay.apply_perm(table, space.quotient_basis[g])
                    vec = space.reduce_mask(img, s)
                    vec[space.quotient_basis[g]] = vec.get(
                        space.quotient_basis[g], Fraction(0)
                    ) - 1
                    for m, v in vec.items():
                        if v:
                            col[(tno, m)] = v
                constraint_cols.append(col)
            kernel = kernel_of_columns(constraint_cols, len(cols))
            blocks[ab] = [
                {cols[j]: v for j, v in vec.items()} for vec in kernel
            ]
        inv = InvariantSpace(self.n, p, q, space, blocks)
        self._invariants[key] = inv
        return inv

    # -- differential ranks -----------------------------------------------------

    def _d_image_rows(self, inv: InvariantSpace, ab):
        """Images of the (a,b)-block basis under d, as integer rows over the
        target quotient coordinates."""
        target = self.space(inv.p + 2, inv.q - 1)
        rows = []
        if target is None or target.free_dim == 0 or inv.q == 0:
            return rows
        space = inv.space
        dcache = {}
        for vec in inv.blocks.get(ab, []):
            img = {}
            for idx, c in vec.items():
                mask = space.quotient_basis[idx]
                if mask not in dcache:
                    acc = {}
                    for m2, c2 in self.layout.differential_mask(mask):
                        for m3, v in target.reduce_mask(m2, c2).items():
                            w = acc.get(m3, 0) + v
                            if w:
                                acc[m3] = w
                            elif m3 in acc:
                                del acc[m3]
                    dcache[mask] = acc
                for m3, v in dcache[mask].items():
                    w = img.get(m3, 0) + c * v
                    if w:
                        img[m3] = w
                    elif m3 in img:
                        del img[m3]
            if img:
                rows.append(_integer_row(img))
        return rows

    def d_rank(self, p, q, ab):
        inv = self.invariants(p, q)
        if inv is None:
            return 0
        rows = self._d_image_rows(inv, ab)
        if not rows:
            return 0
        rank = rank_of_rows(rows)
        if self.modular_prescreen:
            if _rank_mod_p(rows) != rank:
                self.prescreen_agreed = False
        return rank

    # -- the report ---------------------------------------------------------------

    def report(self) -> SpectralReport:
        n = self.n
        lay = self.layout
        rep = SpectralReport(n=n)
        bidegrees = [
            (p, q)
            for q in range(lay.npairs + 1)
            for p in range(2 * n + 1)
        ]
        rank_out = {}
        for p, q in bidegrees:
            inv = self.invariants(p, q)
            if inv is None:
                continue
            for ab, vecs in inv.blocks.items():
                if vecs:
                    rank_out[(p, q, ab)] = self.d_rank(p, q, ab)
        e2_inv, ker, im_in, e3_inv, e3_hodge = {}, {}, {}, {}, {}
        for p, q in bidegrees:
            inv = self.invariants(p, q)
            if inv is None or inv.dim == 0:
                continue
            e2_inv[(p, q)] = inv.dim
            for ab, vecs in inv.blocks.items():
                if not vecs:
                    continue
                out = rank_out.get((p, q, ab), 0)
                into = rank_out.get((p - 2, q + 1, ab), 0)
                k = len(vecs) - out
                e3 = k - into
                if e3 < 0:
                    raise AssertionError(
                        f"negative E3 dimension at n={n} ({p},{q}) {ab}"
                    )
                ker[(p, q)] = ker.get((p, q), 0) + k
                im_in[(p, q)] = im_in.get((p, q), 0) + into
                if e3:
                    e3_inv[(p, q)] = e3_inv.get((p, q), 0) + e3
                    e3_hodge[(p, q, ab)] = e3
        rep.e2_inv, rep.ker, rep.im_in = e2_inv, ker, im_in
        rep.e3_inv, rep.e3_hodge = e3_inv, e3_hodge

        # later pages cannot move anything: no d_r (r >= 3) connects two
        # surviving entries
        for (p, q), d in e3_inv.items():
            for r in range(3, q + 2):
                if e3_inv.get((p + r, q - r + 1), 0) and d:
                    raise AssertionError(
                        f"E3 entries reachable by a d_{r} arrow at n={n}"
                    )

        rep.purity_ok, rep.violations = purity_check(rep)
        rep.betti, rep.hodge = betti_and_hodge(rep)
        return rep


def _integer_row(vec):
    denom = 1
    for v in vec.values():
        denom = denom * v.denominator // gcd(denom, v.denominator)
    return {k: int(v * denom) for k, v in vec.items()}


def _rank_mod_p(rows, p=2147483647):
    """Word-size modular rank, used only as a cross-check."""
    pivots = {}
    rank = 0
    for row0 in rows:
        row = {c: v % p for c, v in row0.items() if v % p}
        while row:
            c = max(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: (v * inv) % p for k, v in row.items()}
                rank += 1
                break
            f = row[c]
            for k, v in piv.items():
                w = (row.get(k, 0) - f * v) % p
                if w:
                    row[k] = w
                elif k in row:
                    del row[k]
    return rank


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def invariant_basis(n, p, q) -> InvariantSpace:
    """Fixed space of the two generating permutations in bidegree (p, q)."""
    return SpectralEngine(n).invariants(p, q)


def e3_dims(n, modular_prescreen=False) -> SpectralReport:
    """Full invariant spectral report for one n."""
    return SpectralEngine(n, modular_prescreen=modular_prescreen).report()


def purity_check(report: SpectralReport):
    """True iff all surviving invariant dimensions sit at p - q in {0, 1}."""
    violations = sorted(
        (p, q) for (p, q), d in report.e3_inv.items() if d and p - q not in (0, 1)
    )
    return (not violations, violations)


def betti_and_hodge(report: SpectralReport):
    """Aggregate E3 dimensions into Betti numbers and the Hodge table.

    Raises when a surviving bidegree violates the weight identity
    p + 2q = w(p + q), or a Hodge block sits off the line a + b = w(i).
    """
    betti_map = {}
    for (p, q), d in report.e3_inv.items():
        i = p + q
        if p + 2 * q != series_mod.w(i):
            raise AssertionError(
                f"weight check failed at ({p},{q}): p+2q != w({i})"
            )
        betti_map[i] = betti_map.get(i, 0) + d
    hodge = {}
    for (p, q, (a, b)), d in report.e3_hodge.items():
        i = p + q
        if a + b != series_mod.w(i):
            raise AssertionError(
                f"Hodge block ({a},{b}) of H^{i} off the weight line"
            )
        hodge[(i, a, b)] = hodge.get((i, a, b), 0) + d
    top = max(betti_map, default=0)
    betti = [betti_map.get(i, 0) for i in range(top + 1)]
    return betti, hodge


def verify_against_series(n, report: SpectralReport | None = None):
    """Exact comparison of the engine output with the series decoders.

    Returns a dict with ``match`` plus both sides; every mismatch is listed.
    """
    if report is None:
        report = e3_dims(n)
    z = series_mod.macdonald_zeta(series_mod.PUNCTURED_TORUS_HC, n)
    k = series_mod.vakil_wood_conf(z, n)
    series_betti = series_mod.decode_betti(k[n], n)
    z4 = series_mod.cheah_zeta(series_mod.PUNCTURED_TORUS_HODGE, n)
    k4 = series_mod.vakil_wood_conf(z4, n)
    series_hodge = series_mod.decode_hodge(k4[n], n)
    mismatches = []
    if list(report.betti) != series_betti:
        mismatches.append(
            {"what": "betti", "engine": list(report.betti), "series": series_betti}
        )
    keys = set(report.hodge) | set(series_hodge)
    for key in sorted(keys):
        a, b = report.hodge.get(key, 0), series_hodge.get(key, 0)
        if a != b:
            i, pa, qb = key
            mismatches.append(
                {"what": f"hodge i={i} a={pa} b={qb}", "engine": a, "series": b}
            )
    return {
        "n": n,
        "match": not mismatches,
        "mismatches": mismatches,
        "engine_betti": list(report.betti),
        "series_betti": series_betti,
    }
