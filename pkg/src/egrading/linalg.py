"""Sparse exact linear algebra over Q and Q(zeta_24).

Vectors are dicts {index: value} holding only nonzero entries.  Values are
Fractions whenever they happen to be rational; CycNum only appears when an
entry genuinely needs a root of unity, which keeps the common rational case
on the fast path.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .cyclotomic import CycNum

Vec = dict


def clean(x):
    if isinstance(x, CycNum) and x.is_rational():
        return x.c[0]
    return x


def axpy(acc: dict, a, v: Mapping) -> None:
    """acc += a * v, in place, dropping zeros."""
    for k, x in v.items():
        y = acc.get(k)
        y = a * x if y is None else y + a * x
        y = clean(y)
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


def add(u: Mapping, v: Mapping, a=1) -> dict:
    out = dict(u)
    axpy(out, a, v)
    return out


def scale(a, v: Mapping) -> dict:
    if not a:
        return {}
    return {k: clean(a * x) for k, x in v.items()}


def is_zero(v: Mapping) -> bool:
    return not any(v.values())


def equal(u: Mapping, v: Mapping) -> bool:
    return is_zero(add(u, v, -1))


def dense(v: Mapping, n: int) -> list:
    return [v.get(i, Fraction(0)) for i in range(n)]


def sparse(values: Iterable) -> dict:
    return {i: clean(x) for i, x in enumerate(values) if x}


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Each stored row has pivot entry 1 and zeros in every other pivot column,
    so reducing a vector needs a single pass over its pivot columns.
    """

    def __init__(self, rows: Iterable[Mapping] = ()):
        self.rows: dict[int, dict] = {}
        for r in rows:
            self.add(r)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping) -> dict:
        r = {k: x for k, x in v.items() if x}
        for c in [c for c in r if c in self.rows]:
            f = r.get(c)
            if f:
                axpy(r, -f, self.rows[c])
        return r

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        # prefer a rational pivot to keep later entries rational
        col = min(r, key=lambda k: (isinstance(r[k], CycNum), k))
        p = r[col]
        if p != 1:
            inv = p.inverse() if isinstance(p, CycNum) else 1 / Fraction(p)
            r = {k: clean(x * inv) for k, x in r.items()}
        for row in self.rows.values():
            f = row.get(col)
            if f:
                axpy(row, -f, r)
        self.rows[col] = r
        return True

    def nullspace(self, ncols: int) -> list[dict]:
        """Basis of {x : row . x = 0 for every stored row}."""
        basis = []
        for f in range(ncols):
            if f in self.rows:
                continue
            vec = {f: Fraction(1)}
            for c, row in self.rows.items():
                x = row.get(f)
                if x:
                    vec[c] = clean(-x)
            basis.append(vec)
        return basis


def rank(vectors: Iterable[Mapping]) -> int:
    return Echelon(vectors).rank


def nullspace(rows: Iterable[Mapping], ncols: int) -> list[dict]:
    return Echelon(rows).nullspace(ncols)


def transpose(columns: list[Mapping], nrows: int) -> list[dict]:
    rows: list[dict] = [dict() for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, x in col.items():
            rows[i][j] = x
    return rows


def integer_rank(rows: list[list[int]]) -> int:
    """Exact rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk][c]
        prow = m[rk]
        for i in range(rk + 1, len(m)):
            row = m[i]
            a = row[c]
            if a:
                m[i] = [(p * x - a * y) // prev for x, y in zip(row, prow)]
            else:
                m[i] = [(p * x) // prev for x in row]
        prev = p
        rk += 1
        if rk == len(m):
            break
    return rk


def rational_rank(vectors: list[Mapping], ncols: int) -> int:
    """Rank of rational sparse vectors via integer fraction-free elimination."""
    rows = []
    for v in vectors:
        if not v:
            continue
        den = 1
        for x in v.values():
            d = Fraction(x).denominator
            den = den * d // _gcd(den, d)
        rows.append([int(Fraction(v.get(i, 0)) * den) for i in range(ncols)])
    return integer_rank(rows)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def determinant(columns: list[Mapping], n: int):
    """Exact determinant of a sparse square matrix given by columns."""
    rows = [dict(r) for r in transpose(columns, n)]
    det = Fraction(1)
    pivot_of: list[int] = []
    used: set[int] = set()
    for c in range(n):
        cand = [i for i in range(n) if i not in used and rows[i].get(c)]
        if not cand:
            return Fraction(0)
        piv = min(cand, key=lambda i: (len(rows[i]), i))
        used.add(piv)
        pivot_of.append(piv)
        p = rows[piv][c]
        det = clean(det * p)
        for i in cand:
            if i != piv:
                axpy(rows[i], -(rows[i][c] / p), rows[piv])
    return det * permutation_sign(pivot_of)


def permutation_sign(perm: list[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
