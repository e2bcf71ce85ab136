"""Finite-dimensional Lie algebras given by sparse structure constants.

Elements are sparse coordinate dicts over the fixed basis.  Linear maps are
stored column-wise: ``columns[j]`` is the image of basis vector j.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg
from .cyclotomic import CycNum
from .cyclotomic import to_json as cyc_json
from .linalg import Echelon, axpy, clean

DEFAULT_SAMPLES = 5
DEFAULT_SEED = 20240601
COEFF_RANGE = 50


class LieError(ValueError):
    pass


class NonCommutingError(LieError):
    pass


class NotAutomorphismError(LieError):
    pass


class RankSamplingWarning(UserWarning):
    """Random centralizer samples disagreed; the reported rank is their minimum."""


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


class LieAlg:
    """Lie algebra with basis e_0..e_{n-1} and [e_i, e_j] = table[i][j]."""

    def __init__(self, dim: int, constants: Mapping, labels: Optional[Sequence[str]] = None):
        self.dim = dim
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(dim)]
        table: list[list[dict]] = [[{} for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in constants.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise LieError(f"structure constant index ({i}, {j}) out of range")
            table[i][j] = {k: _field(c) for k, c in vec.items() if c}
        self.table = table
        self._rank: Optional[int] = None

    @classmethod
    def from_antisymmetric(cls, dim: int, upper: Mapping, labels=None) -> "LieAlg":
        """Build from constants for i < j only, filling [e_j, e_i] = -[e_i, e_j]."""
        full = {}
        for (i, j), vec in upper.items():
            full[(i, j)] = dict(vec)
            full[(j, i)] = {k: -c for k, c in vec.items()}
        return cls(dim, full, labels)

    def basis_vector(self, i: int) -> dict:
        return {i: Fraction(1)}

    def bracket(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        t = self.table
        for i, a in u.items():
            if not a:
                continue
            row = t[i]
            for j, b in v.items():
                if b and row[j]:
                    axpy(out, a * b, row[j])
        return out

    def ad(self, x: Mapping) -> list[dict]:
        return [self.bracket(x, {j: 1}) for j in range(self.dim)]

    def is_rational(self) -> bool:
        return all(
            not isinstance(c, CycNum) for row in self.table for vec in row for c in vec.values()
        )

    # ------------------------------------------------------------ axioms
    def check_antisymmetry(self) -> Optional[tuple[int, int]]:
        """None if [e_i, e_j] = -[e_j, e_i] and [e_i, e_i] = 0 everywhere, else a failing pair."""
        t = self.table
        for i in range(self.dim):
            if t[i][i]:
                return (i, i)
            for j in range(i + 1, self.dim):
                if not linalg.is_zero(linalg.add(t[i][j], t[j][i])):
                    return (i, j)
        return None

    def _integer_table(self):
        den = 1
        for row in self.table:
            for vec in row:
                for c in vec.values():
                    den = math.lcm(den, Fraction(c).denominator)
        return [[{k: int(c * den) for k, c in vec.items()} for vec in row] for row in self.table]

    def check_jacobi(self, workers: int = 1) -> Optional[tuple[int, int, int]]:
        """None if the Jacobi identity holds on all basis triples i < j < k.

        Otherwise returns the first failing triple.  Rational algebras are
        checked over the integers after clearing a common denominator, which
        scales every Jacobi sum by the same nonzero constant.
        """
        if not self.is_rational():
            return self._jacobi_generic()
        table = self._integer_table()
        if workers <= 1:
            return _jacobi_range(table, range(self.dim))
        return _jacobi_parallel(table, self.dim, workers)

    def _jacobi_generic(self):
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    a = self.bracket(self.table[i][j], {k: 1})
                    axpy(a, 1, self.bracket(self.table[j][k], {i: 1}))
                    axpy(a, 1, self.bracket(self.table[k][i], {j: 1}))
                    if a:
                        return (i, j, k)
        return None

    # ------------------------------------------------------------ forms
    def killing_matrix(self) -> list[dict]:
        """Columns of the Killing form matrix kappa(e_i, e_j) = tr(ad e_i ad e_j)."""
        n = self.dim
        t = self.table
        cols: list[dict] = [dict() for _ in range(n)]
        for i in range(n):
            ti = t[i]
            for j in range(i, n):
                tj = t[j]
                s = Fraction(0)
                # tr(ad_i ad_j) = sum_k sum_m c_{i m}^k c_{j k}^m
                for k in range(n):
                    for m, c in tj[k].items():
                        d = ti[m].get(k)
                        if d:
                            s += c * d
                s = clean(s)
                if s:
                    cols[j][i] = s
                    cols[i][j] = s
        return cols

    def killing_determinant(self):
        return linalg.determinant(self.killing_matrix(), self.dim)

    def rank(self) -> int:
        if self._rank is None:
            self._rank = reductive_rank(Subalg.whole(self))
        return self._rank

    # ------------------------------------------------------------ io
    def to_json(self) -> dict:
        triples = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in sorted(self.table[i][j].items()):
                    triples.append([i, j, k, _scalar_json(c)])
        return {"dim": self.dim, "labels": self.labels, "constants": triples}

    @classmethod
    def from_json(cls, data: Mapping) -> "LieAlg":
        consts: dict = {}
        for i, j, k, c in data["constants"]:
            consts.setdefault((i, j), {})[k] = _scalar_from_json(c)
        return cls(data["dim"], consts, data.get("labels"))


def _field(c):
    return clean(c) if isinstance(c, CycNum) else Fraction(c)


def _scalar_json(c):
    if isinstance(c, CycNum):
        return cyc_json(c)
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def _scalar_from_json(c):
    if isinstance(c, list):
        return clean(CycNum.from_strings(c))
    return Fraction(c)


def _jacobi_range(table, rows: Iterable[int]):
    n = len(table)
    for i in rows:
        ti = table[i]
        for j in range(i + 1, n):
            tij = ti[j]
            tj = table[j]
            for k in range(j + 1, n):
                acc: dict = {}
                for m, c in tij.items():
                    for l, d in table[m][k].items():
                        acc[l] = acc.get(l, 0) + c * d
                for m, c in tj[k].items():
                    for l, d in table[m][i].items():
                        acc[l] = acc.get(l, 0) + c * d
                for m, c in table[k][i].items():
                    for l, d in table[m][j].items():
                        acc[l] = acc.get(l, 0) + c * d
                if any(acc.values()):
                    return (i, j, k)
    return None


_SHARED_TABLE = None


def _jacobi_worker(rows):
    return _jacobi_range(_SHARED_TABLE, rows)


def _jacobi_parallel(table, n: int, workers: int):
    import multiprocessing as mp
    from concurrent.futures import ProcessPoolExecutor

    global _SHARED_TABLE
    _SHARED_TABLE = table
    # interleave rows so each chunk gets a similar number of triples
    chunks = [list(range(w, n, workers)) for w in range(workers)]
    try:
        ctx = mp.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as ex:
            results = list(ex.map(_jacobi_worker, chunks))
    finally:
        _SHARED_TABLE = None
    failures = [r for r in results if r is not None]
    return min(failures) if failures else None


def num_jacobi_triples(n: int) -> int:
    return n * (n - 1) * (n - 2) // 6


def num_antisymmetry_pairs(n: int) -> int:
    return n * (n - 1) // 2


# ---------------------------------------------------------------- linear maps
class AutMap:
    """Linear endomorphism of a LieAlg given column-wise, with an optional declared order."""

    def __init__(self, alg: LieAlg, columns: Sequence[Mapping], order: Optional[int] = None, name: str = ""):
        if len(columns) != alg.dim:
            raise LieError(f"expected {alg.dim} columns, got {len(columns)}")
        self.alg = alg
        self.columns = [{k: _field(x) for k, x in c.items() if x} for c in columns]
        self.order = order
        self.name = name
        self._verdict: Optional[Verdict] = None

    @classmethod
    def identity(cls, alg: LieAlg) -> "AutMap":
        return cls(alg, [{j: Fraction(1)} for j in range(alg.dim)], order=1, name="id")

    def apply(self, v: Mapping) -> dict:
        out: dict = {}
        for j, a in v.items():
            if a:
                axpy(out, a, self.columns[j])
        return out

    __call__ = apply

    def compose(self, other: "AutMap") -> "AutMap":
        """self o other."""
        return AutMap(self.alg, [self.apply(c) for c in other.columns])

    def power(self, e: int) -> "AutMap":
        out = AutMap.identity(self.alg)
        for _ in range(e):
            out = self.compose(out)
        return out

    def equals(self, other: "AutMap") -> bool:
        return all(linalg.equal(a, b) for a, b in zip(self.columns, other.columns))

    def is_identity(self) -> bool:
        return all(linalg.equal(c, {j: 1}) for j, c in enumerate(self.columns))

    def commutes_with(self, other: "AutMap") -> bool:
        return all(
            linalg.equal(self.apply(c), other.apply(d)) for c, d in zip(other.columns, self.columns)
        )

    def minus_scalar_rows(self, s=1) -> list[dict]:
        """Rows of (self - s*I)."""
        rows = linalg.transpose(self.columns, self.alg.dim)
        for i, r in enumerate(rows):
            y = clean(r.get(i, Fraction(0)) - s)
            if y:
                r[i] = y
            else:
                r.pop(i, None)
        return rows

    def multiplicative_order(self, bound: int = 24) -> Optional[int]:
        cur = self
        for k in range(1, bound + 1):
            if cur.is_identity():
                return k
            cur = self.compose(cur)
        return None

    def to_json(self) -> dict:
        entries = []
        for j, col in enumerate(self.columns):
            for i, x in sorted(col.items()):
                entries.append([i, j, _scalar_json(x)])
        return {"name": self.name, "dim": self.alg.dim, "order": self.order, "entries": entries}


def is_automorphism(alg: LieAlg, a: AutMap) -> Verdict:
    """Exact check that a is a bijective bracket-preserving map (and has its declared order)."""
    if a.alg is alg and a._verdict is not None:
        return a._verdict
    verdict = _check_automorphism(alg, a)
    if a.alg is alg:
        a._verdict = verdict
    return verdict


def _check_automorphism(alg: LieAlg, a: AutMap) -> Verdict:
    n = alg.dim
    if len(a.columns) != n:
        return Verdict(False, "dimension mismatch")
    if Echelon(a.columns).rank < n:
        return Verdict(False, "matrix is singular")
    cols = a.columns
    for i in range(n):
        for j in range(i + 1, n):
            lhs = a.apply(alg.table[i][j])
            rhs = alg.bracket(cols[i], cols[j])
            if not linalg.equal(lhs, rhs):
                return Verdict(False, f"bracket not preserved on basis pair ({i}, {j})")
    if a.order is not None and not a.power(a.order).is_identity():
        return Verdict(False, f"declared order {a.order} does not hold")
    return Verdict(True)


# ---------------------------------------------------------------- subalgebras
@dataclass
class Subalg:
    parent: LieAlg
    basis: list
    _echelon: Optional[Echelon] = field(default=None, repr=False)

    @classmethod
    def whole(cls, alg: LieAlg) -> "Subalg":
        return cls(alg, [{j: Fraction(1)} for j in range(alg.dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def echelon(self) -> Echelon:
        if self._echelon is None:
            self._echelon = Echelon(self.basis)
        return self._echelon

    def contains(self, v: Mapping) -> bool:
        return self.echelon().contains(v)

    def is_closed(self) -> bool:
        b = self.basis
        for i in range(len(b)):
            for j in range(i + 1, len(b)):
                if not self.contains(self.parent.bracket(b[i], b[j])):
                    return False
        return True


def joint_eigenspace(alg: LieAlg, maps: Sequence[AutMap], values: Sequence) -> list[dict]:
    """Basis of {x : a(x) = s x for each (a, s)}."""
    ech = Echelon()
    for a, s in zip(maps, values):
        for r in a.minus_scalar_rows(s):
            if r:
                ech.add(r)
    return ech.nullspace(alg.dim)


def fixed_subalgebra(alg: LieAlg, auts: Sequence[AutMap], check: bool = True) -> Subalg:
    for a in auts:
        v = is_automorphism(alg, a)
        if not v:
            raise NotAutomorphismError(f"{a.name or 'map'} is not an automorphism: {v.reason}")
    sub = Subalg(alg, joint_eigenspace(alg, auts, [1] * len(auts)))
    if check and not sub.is_closed():
        raise LieError("fixed subspace is not closed under the bracket")
    return sub


def centralizer_dim(sub: Subalg, x: Mapping) -> int:
    """dim {y in sub : [x, y] = 0}."""
    images = [sub.parent.bracket(x, b) for b in sub.basis]
    if all(not isinstance(c, CycNum) for v in images for c in v.values()):
        r = linalg.rational_rank(images, sub.parent.dim)
    else:
        r = Echelon(images).rank
    return sub.dim - r


def reductive_rank(sub: Subalg, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> int:
    """Rank of a reductive subalgebra, as the minimal centralizer dimension of random elements.

    A generic element is regular, so its centralizer is a Cartan subalgebra.
    Samples that disagree trigger a RankSamplingWarning; the minimum is kept,
    since a nongeneric sample can only overestimate.
    """
    if sub.dim == 0:
        return 0
    rng = random.Random(seed)
    dims = []
    for _ in range(samples):
        x: dict = {}
        for b in sub.basis:
            axpy(x, rng.randint(-COEFF_RANGE, COEFF_RANGE), b)
        dims.append(centralizer_dim(sub, x))
    if len(set(dims)) > 1:
        warnings.warn(f"centralizer dimensions disagree across samples: {dims}", RankSamplingWarning)
    return min(dims)


def strongly_commute(alg: LieAlg, a: AutMap, b: AutMap) -> bool:
    """rank Fix(a, b) == rank(alg), for commuting automorphisms a and b."""
    if not a.commutes_with(b):
        raise NonCommutingError(f"{a.name or 'a'} and {b.name or 'b'} do not commute")
    return reductive_rank(fixed_subalgebra(alg, [a, b])) == alg.rank()
