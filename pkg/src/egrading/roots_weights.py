"""Root systems E6, E7 (and C4) with node numbering along the chain.

E6: chain 1-2-3-4-5 with node 6 attached to node 3.
E7: chain 1-2-3-4-5-6 with node 7 attached to node 4.
C4: Bourbaki numbering, node 4 long.

Roots are kept in simple-root coordinates and all pairings go through the
symmetric Gram matrix of the simple roots, which is all the Weyl dimension
formula and the lattice congruences need.

Translation to Bourbaki numbering (node k here is node BOURBAKI[type][k-1] there):
    E6: 1 2 3 4 5 6 -> 1 3 4 5 6 2
    E7: 1 2 3 4 5 6 7 -> 7 6 5 4 3 1 2
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

TYPES = ("E6", "E7", "C4")

BOURBAKI = {
    "E6": (1, 3, 4, 5, 6, 2),
    "E7": (7, 6, 5, 4, 3, 1, 2),
    "C4": (1, 2, 3, 4),
}

CENTER_ORDER = {"E6": 3, "E7": 2, "C4": 2}


class WeightError(ValueError):
    pass


def _edges(rank: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    return a


def _gram(t: str) -> list[list[Fraction]]:
    if t == "E6":
        a = _edges(6, [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)])
    elif t == "E7":
        a = _edges(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)])
    elif t == "C4":
        # eps1-eps2, eps2-eps3, eps3-eps4, 2 eps4
        vecs = [(1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 0, 2)]
        a = [[sum(x * y for x, y in zip(u, v)) for v in vecs] for u in vecs]
    else:
        raise WeightError(f"unknown type {t!r}; expected one of {TYPES}")
    return [[Fraction(x) for x in row] for row in a]


@dataclass(frozen=True)
class RootSystem:
    type: str
    gram: tuple  # (alpha_i, alpha_j)
    cartan: tuple  # <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)
    positive_roots: tuple  # simple-root coordinates

    @property
    def rank(self) -> int:
        return len(self.gram)

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        g = self.gram
        return sum((u[i] * g[i][j] * v[j] for i in range(self.rank) if u[i] for j in range(self.rank) if v[j]), Fraction(0))

    def fundamental_weights(self) -> list[list[Fraction]]:
        """pi_j in simple-root coordinates: the columns of the inverse Cartan matrix."""
        n = self.rank
        inv = _inverse(self.cartan)
        # <pi_j, alpha_i^vee> = sum_k X_kj cartan[i][k] = delta_ij, so X = cartan^-1
        return [[inv[k][j] for k in range(n)] for j in range(n)]


def _inverse(m) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in m[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def root_system(t: str) -> RootSystem:
    g = _gram(t)
    n = len(g)
    cartan = tuple(tuple(2 * g[i][j] / g[i][i] for j in range(n)) for i in range(n))
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]

    def pair(beta, i):  # <beta, alpha_i^vee>
        return sum(beta[k] * cartan[i][k] for k in range(n))

    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # length of the alpha_i-string below beta
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                q = p - pair(beta, i)
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    pos = tuple(sorted(roots, key=lambda r: (sum(r), r)))
    return RootSystem(t, tuple(tuple(r) for r in g), cartan, pos)


def _check_weight(t: str, m: Sequence[int]) -> tuple[int, ...]:
    rs = root_system(t)
    if len(m) != rs.rank:
        raise WeightError(f"{t} weights have {rs.rank} coefficients, got {len(m)}")
    m = tuple(int(x) for x in m)
    if any(x < 0 for x in m):
        raise WeightError(f"weight {m} is not dominant")
    return m


def weyl_dim(t: str, m: Sequence[int]) -> int:
    """Dimension of the simple module with highest weight sum m_i pi_i."""
    m = _check_weight(t, m)
    rs = root_system(t)
    d = [rs.gram[i][i] for i in range(rs.rank)]
    num = Fraction(1)
    den = Fraction(1)
    for alpha in rs.positive_roots:
        # <lambda, alpha^vee> is proportional to sum c_i m_i (alpha_i, alpha_i); the factor cancels
        num *= sum(c * (mi + 1) * di for c, mi, di in zip(alpha, m, d))
        den *= sum(c * di for c, di in zip(alpha, d))
    q = num / den
    if q.denominator != 1:
        raise ArithmeticError(f"Weyl formula gave a non-integer {q}")
    return int(q)


def center_class(t: str, m: Sequence[int]) -> int:
    """Class of sum m_i pi_i in the weight lattice modulo the root lattice."""
    m = _check_weight(t, m)
    if t == "E6":
        return (m[0] - m[1] + m[3] - m[4]) % 3
    if t == "E7":
        return (m[0] + m[2] + m[6]) % 2
    raise WeightError(f"center classes are only tabulated for E6 and E7, not {t}")


def in_root_lattice(t: str, m: Sequence[int]) -> bool:
    rs = root_system(t)
    pis = rs.fundamental_weights()
    coords = [sum(m[j] * pis[j][k] for j in range(rs.rank)) for k in range(rs.rank)]
    return all(Fraction(c).denominator == 1 for c in coords)


def center_class_oracle(t: str, m: Sequence[int]) -> int:
    """The c with lambda - c pi_1 in the root lattice, found by exact solve."""
    m = list(_check_weight(t, m))
    order = CENTER_ORDER[t]
    hits = []
    for c in range(order):
        shifted = list(m)
        shifted[0] -= c
        if in_root_lattice(t, shifted):
            hits.append(c)
    if len(hits) != 1:
        raise ArithmeticError(f"pi_1 does not single out a class for {m}: {hits}")
    return hits[0]


def e6_diagram_involution(m: Sequence[int]) -> tuple[int, ...]:
    m = _check_weight("E6", m)
    return (m[4], m[3], m[2], m[1], m[0], m[5])


def to_bourbaki(t: str, m: Sequence[int]) -> tuple[int, ...]:
    perm = BOURBAKI[t]
    out = [0] * len(perm)
    for k, b in enumerate(perm):
        out[b - 1] = m[k]
    return tuple(out)


def from_bourbaki(t: str, m: Sequence[int]) -> tuple[int, ...]:
    perm = BOURBAKI[t]
    return tuple(m[b - 1] for b in perm)


def fundamental(t: str, k: int) -> tuple[int, ...]:
    """Coefficients of pi_k (1-based)."""
    n = root_system(t).rank
    if not 1 <= k <= n:
        raise WeightError(f"{t} has no fundamental weight pi_{k}")
    return tuple(int(i == k - 1) for i in range(n))


def parse_weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError as exc:
        raise WeightError(f"cannot parse weight {text!r}") from exc
