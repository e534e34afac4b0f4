"""The bigraded-commutative algebra of n labelled points on a punctured
torus, realized by exact quotient linear algebra per bidegree.

Generators, all odd of total degree 1:

    x_i, y_i  (1 <= i <= n)      bidegree (1, 0), Hodge type (1,0) / (0,1)
    g_ij      (1 <= i < j <= n)  bidegree (0, 1), Hodge type (1, 1)

A monomial is a squarefree product; its normal form lists generators in the
order g-block < x-block < y-block (lex inside blocks) with a Koszul sign.
The defining relations, imposed per bidegree as a linear subspace of the
free span:

    (R1)  g_ij g_ik - g_ij g_jk + g_ik g_jk = 0        for i < j < k
    (R2)  g_ij x_i = g_ij x_j   and   g_ij y_i = g_ij y_j
    (R3)  x_i y_i = 0

The sign pattern of (R1) is the unique one whose span is stable under
relabelling indices; it pins down the circuit relation of the braid
arrangement once products are Koszul-normalized.

The differential is the graded derivation with d(x_i) = d(y_i) = 0 and

    d(g_ij) = y_i x_j - x_i y_j = -(x_j y_i) - (x_i y_j)   in normal form,

of bidegree (+2, -1); the symmetric group acts by relabelling indices.

Monomials are encoded as bitmasks inside a :class:`BidegreeSpace`: pair bits
first (lex), then x bits, then y bits, matching the normal-form order, so
Koszul signs are popcount computations.  Quotients are computed by exact
sparse elimination: structural zero columns plus a signed union-find for the
binomial rows, then an integer echelon form for the three-term remainders.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import NamedTuple, Optional

from .linalg import SignedUnionFind, SparseEchelon

__all__ = [
    "Generator",
    "G",
    "X",
    "Y",
    "Monomial",
    "Element",
    "normalize",
    "free_basis",
    "relation_span",
    "BidegreeSpace",
    "reduce_element",
    "differential",
    "sn_act",
    "symmetrize",
    "multiply",
    "Layout",
]


class Generator(NamedTuple):
    """One odd generator; kind is 'g', 'x' or 'y' (their sort order)."""

    kind: str
    i: int
    j: int = 0

    def __str__(self):
        if self.kind == "g":
            sep = "_" if self.j > 9 else ""
            return f"g{self.i}{sep}{self.j}"
        return f"{self.kind}{self.i}"


def G(i, j):
    if i == j:
        raise ValueError("g_ii is not a generator")
    if i > j:
        i, j = j, i
    return Generator("g", i, j)


def X(i):
    return Generator("x", i)


def Y(i):
    return Generator("y", i)


@dataclass(frozen=True)
class Monomial:
    """Normal-form squarefree product of generators with a sign."""

    gens: tuple
    sign: int = 1

    @property
    def bidegree(self):
        q = sum(1 for g in self.gens if g.kind == "g")
        return (len(self.gens) - q, q)

    @property
    def hodge_bidegree(self):
        a = sum(1 for g in self.gens if g.kind in ("g", "x"))
        b = sum(1 for g in self.gens if g.kind in ("g", "y"))
        return (a, b)

    def __str__(self):
        body = ".".join(str(g) for g in self.gens) if self.gens else "1"
        return ("-" if self.sign < 0 else "") + body

    def __mul__(self, other):
        return normalize(self.gens + other.gens, self.sign * other.sign)


def normalize(gens, sign=1) -> Optional[Monomial]:
    """Sort a generator sequence, tracking the Koszul sign.

    Returns None when a generator repeats (odd squares vanish).
    """
    seq = list(gens)
    for i in range(1, len(seq)):
        item = seq[i]
        j = i
        while j > 0 and seq[j - 1] > item:
            seq[j] = seq[j - 1]
            j -= 1
            sign = -sign
        seq[j] = item
    for a, b in zip(seq, seq[1:]):
        if a == b:
            return None
    return Monomial(tuple(seq), sign)


class Element:
    """Sparse rational combination of normal-form monomials."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v:
                    self.coeffs[k] = v

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def from_monomial(cls, m: Optional[Monomial], coeff=1):
        e = cls()
        if m is not None:
            c = Fraction(coeff) * m.sign
            if c:
                e.coeffs[m.gens] = c
        return e

    @classmethod
    def from_generators(cls, *gens):
        return cls.from_monomial(normalize(gens))

    def terms(self):
        """Iterate (Monomial, coefficient) with positive monomial signs."""
        for gens, c in sorted(self.coeffs.items()):
            yield Monomial(gens), c

    def __add__(self, other):
        out = Element()
        out.coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            w = out.coeffs.get(k, 0) + v
            if w:
                out.coeffs[k] = w
            elif k in out.coeffs:
                del out.coeffs[k]
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        out = Element()
        if c:
            out.coeffs = {k: v * c for k, v in self.coeffs.items()}
        return out

    def __eq__(self, other):
        return isinstance(other, Element) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_homogeneous(self):
        degs = {Monomial(g).bidegree for g in self.coeffs}
        return len(degs) <= 1

    def bidegree(self):
        degs = {Monomial(g).bidegree for g in self.coeffs}
        if len(degs) != 1:
            raise ValueError("element is zero or not homogeneous")
        return degs.pop()

    def __str__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for m, c in self.terms():
            if c == 1:
                bits.append(str(m))
            elif c == -1:
                bits.append("-" + str(m))
            else:
                bits.append(f"{c}*{m}")
        return " + ".join(bits).replace("+ -", "- ")

    __repr__ = __str__


def multiply(m: Monomial, e: Element) -> Element:
    """Left product of a monomial with an element."""
    out = Element()
    for gens, c in e.coeffs.items():
        prod = normalize(m.gens + gens, m.sign)
        if prod is not None:
            k, s = prod.gens, prod.sign
            w = out.coeffs.get(k, 0) + c * s
            if w:
                out.coeffs[k] = w
            elif k in out.coeffs:
                del out.coeffs[k]
    return out


def differential(e: Element) -> Element:
    """Graded derivation: d(g_ij) = y_i x_j - x_i y_j, d(x)=d(y)=0.

    Leibniz is applied left to right: d(ab) = d(a) b + (-1)^{deg a} a d(b).
    """
    out = Element()
    for gens, c in e.coeffs.items():
        for pos, gen in enumerate(gens):
            if gen.kind != "g":
                continue
            rest = gens[:pos] + gens[pos + 1 :]
            prefix_sign = -1 if pos % 2 else 1
            for repl, s in (
                ((X(gen.j), Y(gen.i)), -1),
                ((X(gen.i), Y(gen.j)), -1),
            ):
                prod = normalize(rest + repl)
                if prod is None:
                    continue
                k = prod.gens
                w = out.coeffs.get(k, 0) + c * s * prefix_sign * prod.sign
                if w:
                    out.coeffs[k] = w
                elif k in out.coeffs:
                    del out.coeffs[k]
    return out


def sn_act(sigma, e: Element) -> Element:
    """Relabel indices by the permutation ``sigma`` (tuple, sigma[i-1] image
    of i) and renormalize."""

    def relabel(gen):
        if gen.kind == "g":
            return G(sigma[gen.i - 1], sigma[gen.j - 1])
        return Generator(gen.kind, sigma[gen.i - 1])

    out = Element()
    for gens, c in e.coeffs.items():
        m = normalize(tuple(relabel(g) for g in gens))
        k, s = m.gens, m.sign
        w = out.coeffs.get(k, 0) + c * s
        if w:
            out.coeffs[k] = w
        elif k in out.coeffs:
            del out.coeffs[k]
    return out


def symmetrize(e: Element, n: int) -> Element:
    """Averaging operator (1/n!) sum over all permutations of 1..n."""
    total = Element()
    count = 0
    for perm in permutations(range(1, n + 1)):
        total = total + sn_act(perm, e)
        count += 1
    return total.scale(Fraction(1, count))


# ---------------------------------------------------------------------------
# bitmask layout and the bidegree quotient spaces
# ---------------------------------------------------------------------------


class Layout:
    """Bit layout for monomial masks at a fixed n.

    Bits 0..G-1: pairs (i<j) in lex order; then n x-bits; then n y-bits.
    Bit order coincides with monomial normal form, so Koszul signs of
    products are popcount parities of bit interleavings.
    """

    def __init__(self, n):
        self.n = n
        self.pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        self.npairs = len(self.pairs)
        self.pair_bit = {p: b for b, p in enumerate(self.pairs)}
        self.xbit0 = self.npairs
        self.ybit0 = self.npairs + n
        self.nbits = self.npairs + 2 * n
        # closing edge of two adjacent pair bits: triangle detection
        self.closing = {}
        for b1, p1 in enumerate(self.pairs):
            for b2, p2 in enumerate(self.pairs):
                if b2 <= b1:
                    continue
                shared = set(p1) & set(p2)
                if len(shared) == 1:
                    others = (set(p1) | set(p2)) - shared
                    self.closing[(b1, b2)] = self.pair_bit[tuple(sorted(others))]

    # -- encoding ----------------------------------------------------------

    def gen_bit(self, gen: Generator):
        if gen.kind == "g":
            return self.pair_bit[(gen.i, gen.j)]
        if gen.kind == "x":
            return self.xbit0 + gen.i - 1
        return self.ybit0 + gen.i - 1

    def bit_gen(self, b):
        if b < self.npairs:
            i, j = self.pairs[b]
            return G(i, j)
        if b < self.ybit0:
            return X(b - self.xbit0 + 1)
        return Y(b - self.ybit0 + 1)

    def encode(self, m: Monomial):
        mask = 0
        for gen in m.gens:
            mask |= 1 << self.gen_bit(gen)
        return mask

    def decode(self, mask, sign=1):
        gens = []
        while mask:
            b = (mask & -mask).bit_length() - 1
            gens.append(self.bit_gen(b))
            mask &= mask - 1
        return Monomial(tuple(gens), sign)

    # -- arithmetic on masks -------------------------------------------------

    @staticmethod
    def merge(m1, m2):
        """Product of two normal-form masks: (sign, mask) or (0, None)."""
        if m1 & m2:
            return 0, None
        inv = 0
        m = m2
        while m:
            b = (m & -m).bit_length() - 1
            inv += (m1 >> (b + 1)).bit_count()
            m &= m - 1
        return (-1 if inv & 1 else 1), m1 | m2

    def bidegree(self, mask):
        q = (mask & ((1 << self.npairs) - 1)).bit_count()
        return (mask.bit_count() - q, q)

    def hodge_bidegree(self, mask):
        q = (mask & ((1 << self.npairs) - 1)).bit_count()
        x = (mask >> self.xbit0) & ((1 << self.n) - 1)
        y = mask >> self.ybit0
        return (x.bit_count() + q, y.bit_count() + q)

    def is_structural_zero(self, mask):
        """Monomials annihilated by monomial consequences of the relations:
        an x_i y_i pair, a pair bit with two decorations at its endpoints,
        or a full triangle of pair bits."""
        x = (mask >> self.xbit0) & ((1 << self.n) - 1)
        y = mask >> self.ybit0
        if x & y:
            return True
        gbits = []
        m = mask & ((1 << self.npairs) - 1)
        while m:
            b = (m & -m).bit_length() - 1
            i, j = self.pairs[b]
            deco = (
                ((x >> (i - 1)) & 1)
                + ((x >> (j - 1)) & 1)
                + ((y >> (i - 1)) & 1)
                + ((y >> (j - 1)) & 1)
            )
            if deco >= 2:
                return True
            gbits.append(b)
            m &= m - 1
        gmask = mask & ((1 << self.npairs) - 1)
        for t in range(len(gbits)):
            for s in range(t):
                c = self.closing.get((gbits[s], gbits[t]))
                if c is not None and (gmask >> c) & 1:
                    return True
        return False

    def perm_table(self, sigma):
        """Bit image table of a relabelling permutation."""
        table = [0] * self.nbits
        for b in range(self.nbits):
            gen = self.bit_gen(b)
            if gen.kind == "g":
                pair = tuple(sorted((sigma[gen.i - 1], sigma[gen.j - 1])))
                table[b] = self.pair_bit[pair]
            elif gen.kind == "x":
                table[b] = self.xbit0 + sigma[gen.i - 1] - 1
            else:
                table[b] = self.ybit0 + sigma[gen.i - 1] - 1
        return table

    @staticmethod
    def apply_perm(table, mask):
        """Relabel a mask; returns (sign, mask')."""
        imgs = []
        m = mask
        while m:
            b = (m & -m).bit_length() - 1
            imgs.append(table[b])
            m &= m - 1
        inv = sum(
            1
            for s in range(len(imgs))
            for t in range(s + 1, len(imgs))
            if imgs[s] > imgs[t]
        )
        out = 0
        for b in imgs:
            out |= 1 << b
        return (-1 if inv & 1 else 1), out

    def differential_mask(self, mask):
        """d of a normal-form mask as a list of (mask', int coeff)."""
        out = {}
        gmask = mask & ((1 << self.npairs) - 1)
        m = gmask
        while m:
            b = (m & -m).bit_length() - 1
            m &= m - 1
            pos = (mask & ((1 << b) - 1)).bit_count()
            pre = -1 if pos & 1 else 1
            rest = mask & ~(1 << b)
            i, j = self.pairs[b]
            for xi, yi in ((j, i), (i, j)):
                add = (1 << (self.xbit0 + xi - 1)) | (1 << (self.ybit0 + yi - 1))
                if rest & add:
                    continue
                s, prod = self.merge(rest, add)
                c = out.get(prod, 0) - pre * s
                if c:
                    out[prod] = c
                elif prod in out:
                    del out[prod]
        return list(out.items())

    def enumerate_masks(self, p, q):
        """All free-basis masks of bidegree (p, q) in lex enumeration order."""
        if p < 0 or q < 0 or q > self.npairs or p > 2 * self.n:
            return
        letters = list(range(self.xbit0, self.nbits))
        for gsel in combinations(range(self.npairs), q):
            gmask = 0
            for b in gsel:
                gmask |= 1 << b
            for lsel in combinations(letters, p):
                mask = gmask
                for b in lsel:
                    mask |= 1 << b
                yield mask


# relation generators, as (terms, pair support, letter support, (p_r, q_r))


def _relation_generators(layout: Layout):
    n = layout.n
    rels = []
    # (R1) circuit relation per triple i<j<k
    for i, j, k in combinations(range(1, n + 1), 3):
        eij = 1 << layout.pair_bit[(i, j)]
        eik = 1 << layout.pair_bit[(i, k)]
        ejk = 1 << layout.pair_bit[(j, k)]
        terms = [(eij | eik, 1), (eij | ejk, -1), (eik | ejk, 1)]
        rels.append((terms, eij | eik | ejk, 0, (0, 2)))
    # (R2) letter transport along each pair
    for (i, j), b in layout.pair_bit.items():
        for bit0 in (layout.xbit0, layout.ybit0):
            li = 1 << (bit0 + i - 1)
            lj = 1 << (bit0 + j - 1)
            pair = 1 << b
            terms = [(pair | li, 1), (pair | lj, -1)]
            # letters at both endpoints (x and y alike) are excluded from
            # multipliers; their products are structural zeros
            excl = (
                (1 << (layout.xbit0 + i - 1))
                | (1 << (layout.xbit0 + j - 1))
                | (1 << (layout.ybit0 + i - 1))
                | (1 << (layout.ybit0 + j - 1))
            )
            rels.append((terms, pair, excl, (1, 1)))
    # (R3) x_i y_i is handled entirely by the structural-zero predicate
    return rels


class BidegreeSpace:
    """Quotient of one free bidegree piece by the relation subspace.

    Exposes exact quotient coordinates: ``dim``, ``quotient_basis`` (masks
    of the chosen coset representatives) and :meth:`reduce_mask` /
    :meth:`reduce`.  Construction cost is the exact elimination described in
    the module docstring.
    """

    def __init__(self, n, p, q, layout=None):
        self.n, self.p, self.q = n, p, q
        self.layout = layout or Layout(n)
        lay = self.layout
        self.free_dim = comb(lay.npairs, q) * comb(2 * n, p) if p >= 0 and q >= 0 else 0
        self._uf = SignedUnionFind()
        self._ech = SparseEchelon()
        self._build()

    # -- construction ------------------------------------------------------

    def _build(self):
        lay = self.layout
        p, q = self.p, self.q
        uf, ech = self._uf, self._ech
        residual = []
        n_struct = 0

        for terms, gsupp, lexcl, (pr, qr) in _relation_generators(lay):
            if qr > q or pr > p:
                continue
            mul_pairs = [b for b in range(lay.npairs) if not (gsupp >> b) & 1]
            mul_letters = [
                b for b in range(lay.xbit0, lay.nbits) if not (lexcl >> b) & 1
            ]
            for gsel in combinations(mul_pairs, q - qr):
                gmask = 0
                for b in gsel:
                    gmask |= 1 << b
                for lsel in combinations(mul_letters, p - pr):
                    mu = gmask
                    for b in lsel:
                        mu |= 1 << b
                    row = []
                    for tmask, tc in terms:
                        s, prod = lay.merge(mu, tmask)
                        if s and not lay.is_structural_zero(prod):
                            row.append((prod, tc * s))
                    if not row:
                        continue
                    if len(row) == 1:
                        uf.set_zero(row[0][0])
                    elif len(row) == 2:
                        (m1, c1), (m2, c2) = row
                        # c1*m1 + c2*m2 = 0 with c in {+-1}
                        uf.union(m1, m2, -c1 * c2)
                    else:
                        residual.append(row)

        # residual three-term rows, rewritten over class representatives
        for row in residual:
            acc = {}
            for mask, c in row:
                root, s = uf.find(mask)
                if root in uf.zero:
                    continue
                w = acc.get(root, 0) + c * s
                if w:
                    acc[root] = w
                elif root in acc:
                    del acc[root]
            if acc:
                ech.add_row(acc)

        # final sweep: count structural zeros, collect coset representatives
        reps = []
        for mask in lay.enumerate_masks(p, q):
            if lay.is_structural_zero(mask):
                n_struct += 1
                continue
            root, _ = uf.find(mask)
            if root == mask and root not in uf.zero and root not in ech.rows:
                reps.append(mask)
        reps.sort()
        uf.flatten()  # reads after this point never mutate the space
        self.quotient_basis = reps
        self._rep_index = {m: i for i, m in enumerate(reps)}
        self.relation_rank = n_struct + uf.merges + len(uf.zero) + ech.rank
        self.dim = len(reps)
        if self.free_dim - self.relation_rank != self.dim:
            raise AssertionError(
                f"rank bookkeeping broken at n={self.n} ({self.p},{self.q})"
            )

    # -- quotient coordinates ------------------------------------------------

    def reduce_mask(self, mask, coeff=1):
        """Quotient coordinates {rep mask: coefficient} of one monomial."""
        lay = self.layout
        if lay.is_structural_zero(mask):
            return {}
        root, s = self._uf.find(mask)
        if root in self._uf.zero:
            return {}
        vec = self._ech.reduce_vector({root: Fraction(coeff) * s})
        return vec

    def reduce(self, e: Element):
        """Coordinate vector of a homogeneous element, over quotient_basis."""
        lay = self.layout
        acc = {}
        for gens, c in e.coeffs.items():
            m = Monomial(gens)
            if m.bidegree != (self.p, self.q):
                raise ValueError(
                    f"element of bidegree {m.bidegree} in space "
                    f"({self.p},{self.q})"
                )
            for mask, v in self.reduce_mask(lay.encode(m), c).items():
                w = acc.get(mask, 0) + v
                if w:
                    acc[mask] = w
                elif mask in acc:
                    del acc[mask]
        out = [Fraction(0)] * self.dim
        for mask, v in acc.items():
            out[self._rep_index[mask]] = v
        return out

    def representative(self, idx):
        return self.layout.decode(self.quotient_basis[idx])

    def dump_json(self):
        lay = self.layout
        return json.dumps(
            {
                "n": self.n,
                "p": self.p,
                "q": self.q,
                "free_basis": [
                    str(lay.decode(m)) for m in lay.enumerate_masks(self.p, self.q)
                ],
                "relation_rank": self.relation_rank,
                "quotient_dim": self.dim,
                "quotient_basis": [str(lay.decode(m)) for m in self.quotient_basis],
            },
            sort_keys=True,
        )


# ---------------------------------------------------------------------------
# public per-operation API
# ---------------------------------------------------------------------------


def free_basis(n, p, q):
    """All sign-+1 monomials of bidegree (p, q); size C(#pairs,q)*C(2n,p)."""
    if p < 0 or q < 0:
        raise ValueError("bidegree must be nonnegative")
    lay = Layout(n)
    return [lay.decode(m) for m in lay.enumerate_masks(p, q)]


def relation_span(n, p, q, layout=None):
    """An echelonized basis of the relation subspace in bidegree (p, q).

    Rows are returned as Elements with distinct leading monomials: one row
    per vanishing monomial, one per identified pair, and the reduced
    three-term remainders.
    """
    space = BidegreeSpace(n, p, q, layout=layout)
    lay = space.layout
    rows = []
    for mask in lay.enumerate_masks(p, q):
        if lay.is_structural_zero(mask):
            rows.append(Element.from_monomial(lay.decode(mask)))
            continue
        root, s = space._uf.find(mask)
        if root in space._uf.zero:
            rows.append(Element.from_monomial(lay.decode(mask)))
        elif root != mask:
            rows.append(
                Element.from_monomial(lay.decode(mask))
                - Element.from_monomial(lay.decode(root)).scale(s)
            )
    for pivot, row in sorted(space._ech.rows.items()):
        e = Element()
        for mask, c in row.items():
            e = e + Element.from_monomial(lay.decode(mask), c)
        rows.append(e)
    assert len(rows) == space.relation_rank
    return rows


def reduce_element(e: Element, space: BidegreeSpace):
    """Quotient coordinates of ``e`` in ``space``."""
    return space.reduce(e)
