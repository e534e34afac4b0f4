"""Sparse exact linear algebra over the rationals.

Rows are dicts mapping a column key to a nonzero coefficient.  Columns are
integers (bitmask-encoded monomials) so keys are totally ordered.  Two pieces
of machinery cover everything the quotient construction needs:

* ``SignedUnionFind`` absorbs one- and two-term relation rows (``m = 0`` and
  ``m1 = +-m2``) in near-linear time, keeping a zero flag per class.
* ``SparseEchelon`` is a forward-only integer echelon form for whatever the
  union-find cannot absorb.  Pivot = largest column key of the row, so the
  surviving coset representatives are the small monomials.  Rows are kept
  content-free (gcd 1), which is what keeps the arithmetic fraction-free.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class SignedUnionFind:
    """Union-find on column keys where each union carries a sign.

    ``union(a, b, s)`` records the relation ``a = s * b`` with ``s`` in
    ``{+1, -1}``.  A class may be flagged zero; a sign contradiction
    (``a = a`` and ``a = -a``) zeroes the class.
    """

    def __init__(self):
        self.parent = {}  # key -> (parent, sign) with key == sign * parent
        self.zero = set()  # flagged roots
        self.merges = 0

    def find(self, k):
        """Return ``(root, sign)`` with ``k == sign * root``."""
        path = []
        cur, sign = k, 1
        while cur in self.parent:
            nxt, s = self.parent[cur]
            path.append((cur, sign))
            sign *= s
            cur = nxt
        if len(path) > 1:
            for node, pref in path:
                self.parent[node] = (cur, 1 if pref == sign else -1)
        return cur, sign

    def flatten(self):
        """Point every key directly at its root.  After this, ``find`` no
        longer writes, so the structure is safe to share read-only."""
        for k in list(self.parent):
            self.find(k)

    def union(self, a, b, s):
        """Impose ``a = s * b``."""
        ra, sa = self.find(a)
        rb, sb = self.find(b)
        rel = sa * s * sb  # ra = rel * rb
        if ra == rb:
            if rel != 1:
                self.set_zero_root(ra)
            return
        if rb < ra:
            ra, rb = rb, ra
        # attach the larger root under the smaller one
        self.parent[rb] = (ra, rel)
        if rb in self.zero:
            self.zero.discard(rb)
            self.zero.add(ra)
        self.merges += 1

    def set_zero(self, k):
        root, _ = self.find(k)
        self.set_zero_root(root)

    def set_zero_root(self, root):
        self.zero.add(root)

    def is_zero(self, k):
        root, _ = self.find(k)
        return root in self.zero


class SparseEchelon:
    """Incremental echelon form with integer rows and max-column pivots."""

    def __init__(self):
        self.rows = {}  # pivot column -> normalized row (dict col -> int)

    @property
    def rank(self):
        return len(self.rows)

    @staticmethod
    def _normalize(row):
        g = 0
        for v in row.values():
            g = gcd(g, abs(v))
        p = max(row)
        if row[p] < 0:
            g = -g
        if g not in (0, 1):
            return {c: v // g for c, v in row.items()}
        return row

    def add_row(self, row):
        """Reduce ``row`` against the echelon; install it if independent.

        Returns True when the rank grew.  ``row`` is a dict col -> int and
        may be consumed.
        """
        row = {c: v for c, v in row.items() if v}
        while row:
            p = max(row)
            other = self.rows.get(p)
            if other is None:
                self.rows[p] = self._normalize(row)
                return True
            a, b = other[p], row[p]
            new = {c: v * a for c, v in row.items()}
            for c, v in other.items():
                w = new.get(c, 0) - v * b
                if w:
                    new[c] = w
                elif c in new:
                    del new[c]
            row = self._normalize(new) if new else new
        return False

    def reduce_vector(self, vec):
        """Return the normal form of a Fraction-valued vector mod the rows."""
        vec = {c: Fraction(v) for c, v in vec.items() if v}
        while True:
            hit = None
            for c in vec:
                if c in self.rows and (hit is None or c > hit):
                    hit = c
            if hit is None:
                return vec
            row = self.rows[hit]
            factor = vec[hit] / row[hit]
            for c, v in row.items():
                w = vec.get(c, 0) - factor * v
                if w:
                    vec[c] = w
                elif c in vec:
                    del vec[c]


def rank_of_rows(rows):
    """Rank of an iterable of integer rows."""
    ech = SparseEchelon()
    r = 0
    for row in rows:
        if ech.add_row(dict(row)):
            r += 1
    return r


def kernel_of_columns(columns, dim):
    """Kernel of the linear map sending basis vector ``j`` to ``columns[j]``.

    ``columns`` is a list of dicts (row index -> coefficient); the result is
    a list of Fraction-valued dicts over ``range(dim)`` spanning the kernel.
    """
    # Equations: for every row index r, sum_j columns[j][r] * v_j = 0.
    equations = {}
    for j, col in enumerate(columns):
        for r, v in col.items():
            if v:
                equations.setdefault(r, {})[j] = v
    ech = SparseEchelon()
    for row in equations.values():
        frac_free = _clear_denominators(row)
        if frac_free:
            ech.add_row(frac_free)
    pivots = set(ech.rows)
    basis = []
    for free in range(dim):
        if free in pivots:
            continue
        vec = {free: Fraction(1)}
        for p in sorted(ech.rows):
            row = ech.rows[p]
            s = sum(Fraction(v) * vec.get(c, 0) for c, v in row.items() if c != p)
            if s:
                vec[p] = -s / row[p]
        basis.append(vec)
    return basis


def _clear_denominators(row):
    denom = 1
    for v in row.values():
        f = Fraction(v)
        denom = denom * f.denominator // gcd(denom, f.denominator)
    out = {}
    for c, v in row.items():
        w = Fraction(v) * denom
        if w:
            out[c] = int(w)
    return out
