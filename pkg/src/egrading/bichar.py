"""Alternating bicharacters on finite abelian groups and their Brauer classes.

A bicharacter on G = Z_{d_1} x ... x Z_{d_n} is stored as an integer exponent
matrix M with beta(g_i, g_j) = zeta_N^{M_ij}, N the exponent of G.  Radicals,
supports and powers then reduce to integer linear algebra modulo N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .abelian import (
    AbelianGroupError,
    FGAbGroup,
    Subgroup,
    _mod_lattice,
    matvec,
    perp,
    smith_normal_form,
)
from .cyclotomic import CONDUCTOR, CycNum, UnsupportedOrderError, root_of_unity


class BicharacterError(ValueError):
    pass


@dataclass(frozen=True)
class AltBichar:
    group: FGAbGroup
    exponent_matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.group
        if not g.is_finite():
            raise BicharacterError("bicharacters are only supported on finite groups")
        n = g.ngens
        big_n = g.exponent()
        m = tuple(tuple(int(x) % big_n for x in row) for row in self.exponent_matrix)
        if len(m) != n or any(len(r) != n for r in m):
            raise BicharacterError(f"exponent matrix must be {n}x{n}")
        ds = g.invariant_factors
        for i in range(n):
            if m[i][i]:
                raise BicharacterError(f"beta(g_{i}, g_{i}) != 1")
            for j in range(n):
                if (m[i][j] + m[j][i]) % big_n:
                    raise BicharacterError(f"exponent matrix is not skew at ({i}, {j})")
                if m[i][j] % (big_n // ds[i]):
                    raise BicharacterError(f"beta(g_{i}, .) does not respect the order {ds[i]}")
        object.__setattr__(self, "exponent_matrix", m)

    @classmethod
    def trivial(cls, g: FGAbGroup) -> "AltBichar":
        return cls(g, tuple((0,) * g.ngens for _ in range(g.ngens)))

    @property
    def modulus(self) -> int:
        return self.group.exponent()

    def exponent(self, g, h) -> int:
        """e with beta(g, h) = zeta_N^e."""
        g = self.group.reduce(g)
        h = self.group.reduce(h)
        m = self.exponent_matrix
        return sum(g[i] * m[i][j] * h[j] for i in range(len(g)) if g[i] for j in range(len(h)) if h[j]) % self.modulus

    def value(self, g, h) -> CycNum:
        n = self.modulus
        if CONDUCTOR % n:
            raise UnsupportedOrderError(f"values are {n}-th roots of unity, outside the conductor-24 field")
        return root_of_unity(n, self.exponent(g, h))

    def is_trivial(self) -> bool:
        return not any(any(r) for r in self.exponent_matrix)

    def __mul__(self, other: "AltBichar") -> "AltBichar":
        if other.group != self.group:
            raise BicharacterError("bicharacters live on different groups")
        return AltBichar(
            self.group,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.exponent_matrix, other.exponent_matrix)),
        )

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "exponent_matrix": [list(r) for r in self.exponent_matrix]}

    @classmethod
    def from_json(cls, data: dict) -> "AltBichar":
        return cls(FGAbGroup.from_json(data["group"]), tuple(tuple(r) for r in data["exponent_matrix"]))


def radical(beta: AltBichar) -> Subgroup:
    """{g : beta(g, h) = 1 for all h}."""
    g = beta.group
    m = beta.exponent_matrix
    rows = [[m[i][j] for i in range(g.ngens)] for j in range(g.ngens)]
    basis = _mod_lattice(rows, beta.modulus, g.ngens)
    return Subgroup(g, tuple(tuple(v) for v in basis))


def restrict(beta: AltBichar, s: Subgroup) -> AltBichar:
    """beta restricted to S, expressed on the normal form of S."""
    if s.ambient != beta.group:
        raise AbelianGroupError("subgroup does not live in the bicharacter's group")
    struct, emb = s.presentation()
    if struct.ngens == 0:
        return AltBichar.trivial(struct)
    n_t = struct.exponent()
    scale = beta.modulus // n_t
    gens = [emb.apply(struct.gen(i)) for i in range(struct.ngens)]
    mat = []
    for a in gens:
        row = []
        for b in gens:
            e = beta.exponent(a, b)
            if e % scale:
                raise BicharacterError("restriction values exceed the subgroup exponent")
            row.append(e // scale)
        mat.append(tuple(row))
    return AltBichar(struct, tuple(mat))


@dataclass(frozen=True)
class BrauerClass:
    support: Subgroup
    beta_on_T: AltBichar
    degree: int

    def to_json(self) -> dict:
        return {
            "support": self.support.to_json(),
            "degree": self.degree,
            "beta_on_support": self.beta_on_T.to_json(),
        }


def _solve_mod(a: list[list[int]], b: list[int], n: int) -> list[int]:
    """Some x with a x = b (mod n); raises if there is none."""
    u, s, v = smith_normal_form(a)
    c = matvec(u, b)
    z = []
    for i in range(len(v)):
        d = s[i][i] if i < len(s) else 0
        ci = c[i] if i < len(c) else 0
        g = math.gcd(d, n)
        if ci % g:
            raise BicharacterError("linear system modulo N has no solution")
        m = n // g
        z.append((ci // g) * pow(d // g, -1, m) % m if m > 1 else 0)
    for i in range(len(v), len(c)):
        if c[i] % n:
            raise BicharacterError("linear system modulo N has no solution")
    return [sum(v[r][k] * z[k] for k in range(len(z))) for r in range(len(v))]


def brauer_class(beta: AltBichar) -> BrauerClass:
    """Support T = radical^perp with the nondegenerate form carried over from G/radical.

    The pairing identifies T with the dual of G/radical, and beta identifies
    G/radical with its own dual; composing gives x -> t_x with <t_x, y> = beta(x, y),
    and beta_on_T(t_x, t_y) = beta(x, y).  When G/radical splits off as T itself
    (elementary abelian G, say) this agrees with plain restriction up to the
    choice of identification.
    """
    g = beta.group
    support = perp(g, radical(beta))
    size = support.order()
    ell = math.isqrt(size)
    if ell * ell != size:
        raise BicharacterError(f"support has order {size}, not a perfect square")
    struct, emb = support.presentation()
    if struct.ngens == 0:
        return BrauerClass(support, AltBichar.trivial(struct), 1)
    n = beta.modulus
    ds = g.invariant_factors
    # row j of the system: sum_i x_i M_ij = (N / d_j) t_j
    a = [[beta.exponent_matrix[i][j] for i in range(g.ngens)] for j in range(g.ngens)]
    preimages = []
    for k in range(struct.ngens):
        t = emb.apply(struct.gen(k))
        preimages.append(_solve_mod(a, [(n // d) * x for x, d in zip(t, ds)], n))
    scale = n // struct.exponent()
    mat = []
    for x in preimages:
        row = []
        for y in preimages:
            e = beta.exponent(x, y)
            if e % scale:
                raise BicharacterError("transported form exceeds the support exponent")
            row.append(e // scale)
        mat.append(tuple(row))
    on_t = AltBichar(struct, tuple(mat))
    if not radical(on_t).is_trivial():
        raise BicharacterError("form on the support is degenerate")
    return BrauerClass(support, on_t, ell)


def power(beta: AltBichar, m: int) -> AltBichar:
    return AltBichar(beta.group, tuple(tuple(m * x for x in r) for r in beta.exponent_matrix))


def is_isotropic(beta: AltBichar, s: Subgroup) -> bool:
    gens = s.generators
    return all(beta.exponent(a, b) == 0 for a in gens for b in gens)
