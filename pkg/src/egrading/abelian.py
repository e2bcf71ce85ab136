"""Finitely generated abelian groups in invariant-factor form.

A group is Z^r x Z_{d_1} x ... x Z_{d_k} with d_1 | d_2 | ... | d_k and every
d_i >= 2.  Element coordinates list the free coordinates first, then the
torsion coordinates (reduced into [0, d_i)).  All normalisation goes through
:func:`smith_normal_form`, which works on plain Python integers so there is
no overflow however the intermediate entries grow.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

Matrix = list[list[int]]


class AbelianGroupError(ValueError):
    pass


class IllDefinedHomError(AbelianGroupError):
    """Matrix does not define a homomorphism between the given groups."""


class InfiniteGroupError(AbelianGroupError):
    pass


# ---------------------------------------------------------------------------
# integer linear algebra


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def matvec(a: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(r) for r in zip(*a)]


def det(a: Matrix) -> int:
    """Exact integer determinant (Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, S, V) with U*A*V = S, U and V unimodular, S diagonal.

    The diagonal of S is nonnegative and each nonzero entry divides the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    s = [list(map(int, row)) for row in a]
    u = identity_matrix(m)
    v = identity_matrix(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        if q:
            s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        if q:
            for row in s:
                row[dst] += q * row[src]
            for row in v:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = s[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                return u, s, v
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = s[t][t]
            clean = True
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
                    clean = clean and s[i][t] == 0
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
                    clean = clean and s[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return u, s, v


def unimodular_inverse(u: Matrix) -> Matrix:
    """Inverse of an integer matrix with determinant +-1."""
    from fractions import Fraction

    n = len(u)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(u)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in out for x in row):
        raise AbelianGroupError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def integer_kernel(a: Matrix, ncols: int) -> Matrix:
    """Basis (as a list of vectors) of {x in Z^ncols : a x = 0}."""
    if not a:
        return identity_matrix(ncols)
    _, s, v = smith_normal_form(a)
    r = sum(1 for i in range(min(len(s), ncols)) if s[i][i])
    return [[v[row][col] for row in range(ncols)] for col in range(r, ncols)]


def _hcat(*blocks: Matrix) -> Matrix:
    rows = max(len(b) for b in blocks)
    return [sum((b[i] for b in blocks), []) for i in range(rows)]


def _columns_to_matrix(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    return [[c[i] for c in cols] for i in range(nrows)]


def _lcm(values: Iterable[int]) -> int:
    out = 1
    for x in values:
        out = out * x // math.gcd(out, x)
    return out


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FGAbGroup:
    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise AbelianGroupError("free rank must be nonnegative")
        ds = self.invariant_factors
        if any(d < 2 for d in ds):
            raise AbelianGroupError(f"invariant factors must be >= 2: {ds}")
        if any(ds[i + 1] % ds[i] for i in range(len(ds) - 1)):
            raise AbelianGroupError(f"invariant factors must form a divisibility chain: {ds}")

    # -- construction
    @classmethod
    def from_relations(cls, ngens: int, relations: Sequence[Sequence[int]]) -> tuple["FGAbGroup", Matrix]:
        """Z^ngens modulo the span of ``relations``; returns (group, projection).

        The projection is an integer matrix sending generator coordinates to
        normal-form coordinates of the quotient.
        """
        if ngens == 0:
            return cls(), []
        rels = [list(r) for r in relations if any(r)]
        if not rels:
            return cls(ngens), identity_matrix(ngens)
        u, s, _ = smith_normal_form(_columns_to_matrix(rels, ngens))
        diag = [s[i][i] if i < len(s[0]) else 0 for i in range(ngens)]
        torsion = [(d, u[i]) for i, d in enumerate(diag) if d > 1]
        free = [u[i] for i, d in enumerate(diag) if d == 0]
        group = cls(len(free), tuple(d for d, _ in torsion))
        proj = [row[:] for row in free] + [row[:] for _, row in torsion]
        return group, proj

    @classmethod
    def with_section(cls, ngens: int, relations: Sequence[Sequence[int]]) -> tuple["FGAbGroup", Matrix, Matrix]:
        """Like from_relations, plus a section: section[:, j] maps to the j-th normal-form generator."""
        rels = [list(r) for r in relations if any(r)]
        if ngens == 0:
            return cls(), [], []
        if not rels:
            return cls(ngens), identity_matrix(ngens), identity_matrix(ngens)
        u, s, _ = smith_normal_form(_columns_to_matrix(rels, ngens))
        u_inv = unimodular_inverse(u)
        diag = [s[i][i] if i < len(s[0]) else 0 for i in range(ngens)]
        keep = [i for i, d in enumerate(diag) if d == 0] + [i for i, d in enumerate(diag) if d > 1]
        group = cls(sum(1 for d in diag if d == 0), tuple(d for d in diag if d > 1))
        proj = [u[i][:] for i in keep]
        section = [[u_inv[r][i] for i in keep] for r in range(ngens)]
        return group, proj, section

    @classmethod
    def from_cyclic(cls, orders: Sequence[int]) -> tuple["FGAbGroup", Matrix]:
        """Product of cyclic groups (0 meaning Z) and the map from factor coordinates."""
        n = len(orders)
        rels = [[d if i == j else 0 for i in range(n)] for j, d in enumerate(orders) if d]
        return cls.from_relations(n, rels)

    @classmethod
    def parse(cls, text: str) -> tuple["FGAbGroup", list[int]]:
        """Parse strings like ``Z^2xZ2^3`` or ``Z_4^2 x Z`` into (group, cyclic orders)."""
        orders: list[int] = []
        cleaned = text.replace("×", "x").replace("*", "x").replace(" ", "").replace("_", "")
        if not cleaned or cleaned == "1":
            return cls(), []
        for part in cleaned.split("x"):
            m = re.fullmatch(r"Z(\d*)(?:\^(\d+))?", part)
            if not m:
                raise AbelianGroupError(f"cannot parse group factor {part!r} in {text!r}")
            d = int(m.group(1)) if m.group(1) else 0
            e = int(m.group(2)) if m.group(2) else 1
            if d == 1:
                continue
            orders.extend([d] * e)
        return cls.from_cyclic(orders)[0], orders

    # -- basic data
    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.invariant_factors)

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate modulus, 0 for free coordinates."""
        return (0,) * self.free_rank + self.invariant_factors

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        if not self.is_finite():
            raise InfiniteGroupError("group is infinite")
        return math.prod(self.invariant_factors)

    def exponent(self) -> int:
        if not self.is_finite():
            raise InfiniteGroupError("group is infinite")
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def relations(self) -> list[list[int]]:
        """Relation columns d_i * e_i of the torsion coordinates."""
        n = self.ngens
        return [[d if i == j else 0 for i in range(n)] for j, d in enumerate(self.moduli) if d]

    def reduce(self, g: Sequence[int]) -> tuple[int, ...]:
        if len(g) != self.ngens:
            raise AbelianGroupError(f"element {tuple(g)} has wrong length for {self}")
        return tuple(int(x) % d if d else int(x) for x, d in zip(g, self.moduli))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def gen(self, i: int) -> tuple[int, ...]:
        return tuple(int(i == j) for j in range(self.ngens))

    def add(self, g, h) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(g, h)])

    def neg(self, g) -> tuple[int, ...]:
        return self.reduce([-a for a in g])

    def scale(self, k: int, g) -> tuple[int, ...]:
        return self.reduce([k * a for a in g])

    def element_order(self, g) -> int | None:
        """Order of g, or None when g has infinite order."""
        g = self.reduce(g)
        if any(g[: self.free_rank]):
            return None
        return _lcm(d // math.gcd(d, x) for x, d in zip(g[self.free_rank :], self.invariant_factors))

    def elements(self):
        if not self.is_finite():
            raise InfiniteGroupError("cannot enumerate an infinite group")
        return (tuple(t) for t in product(*(range(d) for d in self.invariant_factors)))

    def pairing_exponent(self, g, h) -> int:
        """Exponent e with <g, h> = zeta_N^e for the fixed diagonal self-duality, N = exponent."""
        n = self.exponent()
        return sum((n // d) * a * b for a, b, d in zip(g, h, self.invariant_factors)) % n

    def torsion_part(self) -> "FGAbGroup":
        return FGAbGroup(0, self.invariant_factors)

    def label(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for d in sorted(set(self.invariant_factors)):
            k = self.invariant_factors.count(d)
            parts.append(f"Z{d}" if k == 1 else f"Z{d}^{k}")
        return "x".join(parts) or "1"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, data: dict) -> "FGAbGroup":
        return cls(int(data.get("free_rank", 0)), tuple(data.get("invariant_factors", ())))

    def __str__(self) -> str:
        return self.label()


def primary_decomposition(g: FGAbGroup) -> list[int]:
    """Elementary divisors (prime powers) of the torsion part, sorted."""
    out = []
    for d in g.invariant_factors:
        n, p = d, 2
        while n > 1:
            if n % p == 0:
                q = 1
                while n % p == 0:
                    n //= p
                    q *= p
                out.append(q)
            p += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    ambient: FGAbGroup
    generators: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        gens = tuple(self.ambient.reduce(g) for g in self.generators)
        gens = tuple(g for g in gens if any(g))
        object.__setattr__(self, "generators", gens)

    @classmethod
    def trivial(cls, g: FGAbGroup) -> "Subgroup":
        return cls(g, ())

    @classmethod
    def whole(cls, g: FGAbGroup) -> "Subgroup":
        return cls(g, tuple(g.gen(i) for i in range(g.ngens)))

    def _span_matrix(self) -> Matrix:
        cols = list(self.generators) + self.ambient.relations()
        return _columns_to_matrix(cols, self.ambient.ngens)

    def contains(self, g) -> bool:
        g = self.ambient.reduce(g)
        if not any(g):
            return True
        a = self._span_matrix()
        if not a or not a[0]:
            return False
        u, s, _ = smith_normal_form(a)
        ug = matvec(u, g)
        k = len(a[0])
        for i, x in enumerate(ug):
            d = s[i][i] if i < k else 0
            if d == 0:
                if x:
                    return False
            elif x % d:
                return False
        return True

    __contains__ = contains

    def relation_lattice(self) -> Matrix:
        """Integer relations among the generators (vectors of length #generators)."""
        k = len(self.generators)
        if k == 0:
            return []
        rels = self.ambient.relations()
        a = _columns_to_matrix(list(self.generators) + rels, self.ambient.ngens)
        kern = integer_kernel(a, k + len(rels))
        return [vec[:k] for vec in kern]

    def structure(self) -> FGAbGroup:
        return FGAbGroup.from_relations(len(self.generators), self.relation_lattice())[0]

    def presentation(self) -> tuple[FGAbGroup, "AbHom"]:
        """The subgroup as a group in normal form, with its embedding into the ambient group."""
        k = len(self.generators)
        rels = [r for r in self.relation_lattice() if any(r)]
        if k == 0:
            return FGAbGroup(), AbHom(FGAbGroup(), self.ambient, tuple(() for _ in range(self.ambient.ngens)))
        if rels:
            u, s, _ = smith_normal_form(_columns_to_matrix(rels, k))
            diag = [s[i][i] if i < len(s[0]) else 0 for i in range(k)]
        else:
            u, diag = identity_matrix(k), [0] * k
        uinv = unimodular_inverse(u)
        order = [i for i, d in enumerate(diag) if d == 0] + [i for i, d in enumerate(diag) if d > 1]
        struct = FGAbGroup(sum(1 for d in diag if d == 0), tuple(d for d in diag if d > 1))
        cols = []
        for i in order:
            lift = [uinv[j][i] for j in range(k)]
            cols.append(
                self.ambient.reduce(
                    [sum(c * g[t] for c, g in zip(lift, self.generators)) for t in range(self.ambient.ngens)]
                )
            )
        mat = tuple(tuple(c[t] for c in cols) for t in range(self.ambient.ngens))
        return struct, AbHom(struct, self.ambient, mat)

    def order(self) -> int:
        return self.structure().order()

    def is_trivial(self) -> bool:
        return not self.generators

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "Subgroup") -> bool:
        return self.ambient == other.ambient and self.is_subgroup_of(other) and other.is_subgroup_of(self)

    def elements(self) -> set[tuple[int, ...]]:
        """All elements (finite subgroups only), by closure."""
        g = self.ambient
        seen = {g.zero()}
        frontier = [g.zero()]
        while frontier:
            nxt = []
            for x in frontier:
                for s in self.generators:
                    y = g.add(x, s)
                    if y not in seen:
                        if len(seen) > 10**6:
                            raise InfiniteGroupError("subgroup too large to enumerate")
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.to_json(),
            "generators": [list(x) for x in self.generators],
            "structure": self.structure().to_json(),
        }


def _mod_lattice(rows: Sequence[Sequence[int]], modulus: int, n: int) -> Matrix:
    """Basis of {x in Z^n : rows . x = 0 (mod modulus)}."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return identity_matrix(n)
    k = len(rows)
    a = [rows[i] + [modulus if j == i else 0 for j in range(k)] for i in range(k)]
    return [vec[:n] for vec in integer_kernel(a, n + k)]


def perp(g: FGAbGroup, s: Subgroup) -> Subgroup:
    """Annihilator of S under the pairing <g, h> = prod zeta_{d_i}^{g_i h_i}."""
    if not g.is_finite():
        raise InfiniteGroupError("perp is only defined on finite groups here")
    if s.ambient != g:
        raise AbelianGroupError("subgroup does not live in the given group")
    n = g.exponent()
    rows = [[(n // d) * x for x, d in zip(gen, g.invariant_factors)] for gen in s.generators]
    basis = _mod_lattice(rows, n, g.ngens)
    return Subgroup(g, tuple(tuple(v) for v in basis))


def torsion_split(g: FGAbGroup, p: int) -> tuple[Subgroup, Subgroup]:
    """Split the torsion of G into its p-part and the prime-to-p part.

    The free part is ``free_part(g)``; G is the direct product of the three.
    """
    if p < 2 or any(p % q == 0 for q in range(2, int(math.isqrt(p)) + 1)):
        raise AbelianGroupError(f"{p} is not prime")
    p_gens, c_gens = [], []
    for i, d in enumerate(g.invariant_factors):
        pa = 1
        while d % (pa * p) == 0:
            pa *= p
        idx = g.free_rank + i
        p_gens.append(tuple((d // pa) if j == idx else 0 for j in range(g.ngens)))
        c_gens.append(tuple(pa if j == idx else 0 for j in range(g.ngens)))
    return Subgroup(g, tuple(p_gens)), Subgroup(g, tuple(c_gens))


def free_part(g: FGAbGroup) -> Subgroup:
    return Subgroup(g, tuple(g.gen(i) for i in range(g.free_rank)))


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class AbHom:
    domain: FGAbGroup
    codomain: FGAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", mat)
        if len(mat) != self.codomain.ngens or any(len(r) != self.domain.ngens for r in mat):
            raise IllDefinedHomError(
                f"matrix shape does not match {self.domain} -> {self.codomain}"
            )
        for j, d in enumerate(self.domain.moduli):
            if not d:
                continue
            col = [mat[i][j] * d for i in range(len(mat))]
            if any(self.codomain.reduce(col)):
                raise IllDefinedHomError(
                    f"generator {j} has order {d} but its image does not"
                )

    @classmethod
    def identity(cls, g: FGAbGroup) -> "AbHom":
        return cls(g, g, tuple(map(tuple, identity_matrix(g.ngens))))

    @classmethod
    def zero(cls, dom: FGAbGroup, cod: FGAbGroup) -> "AbHom":
        return cls(dom, cod, tuple((0,) * dom.ngens for _ in range(cod.ngens)))

    def apply(self, g) -> tuple[int, ...]:
        return self.codomain.reduce(matvec([list(r) for r in self.matrix], self.domain.reduce(g)))

    __call__ = apply

    def compose(self, first: "AbHom") -> "AbHom":
        """self o first."""
        if first.codomain != self.domain:
            raise AbelianGroupError("cannot compose: groups do not match")
        m = matmul([list(r) for r in self.matrix], [list(r) for r in first.matrix])
        m = [list(self.codomain.reduce(col)) for col in transpose(m, first.domain.ngens)]
        return AbHom(first.domain, self.codomain, tuple(map(tuple, transpose(m, self.codomain.ngens))))

    def image(self, s: Subgroup | None = None) -> Subgroup:
        gens = s.generators if s is not None else [self.domain.gen(i) for i in range(self.domain.ngens)]
        return Subgroup(self.codomain, tuple(self.apply(x) for x in gens))

    def kernel(self) -> Subgroup:
        n = self.domain.ngens
        rels = self.codomain.relations()
        a = [list(r) for r in self.matrix]
        if rels:
            a = _hcat(a, _columns_to_matrix(rels, self.codomain.ngens))
        if not a:
            return Subgroup.whole(self.domain)
        basis = integer_kernel(a, n + len(rels))
        return Subgroup(self.domain, tuple(tuple(v[:n]) for v in basis))

    def is_injective_on(self, s: Subgroup) -> bool:
        if s.ambient != self.domain:
            raise AbelianGroupError("subgroup does not live in the domain")
        gens = list(s.generators)
        if not gens:
            return True
        image_gens = tuple(self.apply(x) for x in gens)
        # relations among the images must already hold among the generators
        rels = self.codomain.relations()
        a = _columns_to_matrix(list(image_gens) + rels, self.codomain.ngens)
        k = len(gens)
        if a and a[0]:
            kern = [v[:k] for v in integer_kernel(a, k + len(rels))]
        else:
            kern = identity_matrix(k)
        for y in kern:
            combo = [sum(c * g[i] for c, g in zip(y, gens)) for i in range(self.domain.ngens)]
            if any(self.domain.reduce(combo)):
                return False
        return True

    def is_injective(self) -> bool:
        return self.is_injective_on(Subgroup.whole(self.domain))

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "matrix": [list(r) for r in self.matrix],
        }


def quotient(g: FGAbGroup, h: Subgroup) -> tuple[FGAbGroup, AbHom]:
    """G/H in normal form together with the projection G -> G/H."""
    if h.ambient != g:
        raise AbelianGroupError("subgroup does not live in the given group")
    rels = list(h.generators) + g.relations()
    q, proj = FGAbGroup.from_relations(g.ngens, rels)
    mat = [list(r) for r in proj]
    cols = [list(q.reduce([mat[i][j] for i in range(q.ngens)])) for j in range(g.ngens)]
    return q, AbHom(g, q, tuple(map(tuple, transpose(cols, q.ngens))) if cols else ())
