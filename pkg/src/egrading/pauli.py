"""Generalized Pauli matrices and the Pauli grading on M_l."""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FGAbGroup
from .bichar import AltBichar
from .cyclotomic import ONE, ZERO, CycNum, root_of_unity
from .cyclotomic import to_json as cyc_json

SUPPORTED_SIZES = (2, 3, 4)

CMatrix = list[list[CycNum]]


class UnsupportedSizeError(ValueError):
    pass


def _check(ell: int) -> None:
    if ell not in SUPPORTED_SIZES:
        raise UnsupportedSizeError(f"Pauli matrices are only built for l in {SUPPORTED_SIZES}, got {ell}")


def mat_mul(a: CMatrix, b: CMatrix) -> CMatrix:
    n, k, m = len(a), len(b), len(b[0])
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            x = a[i][t]
            if not x:
                continue
            row = b[t]
            for j in range(m):
                if row[j]:
                    out[i][j] = out[i][j] + x * row[j]
    return out


def identity(n: int) -> CMatrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_pow(a: CMatrix, e: int) -> CMatrix:
    out = identity(len(a))
    for _ in range(e):
        out = mat_mul(out, a)
    return out


def scale(s, a: CMatrix) -> CMatrix:
    return [[s * x for x in row] for row in a]


def pauli_pair(ell: int) -> tuple[CMatrix, CMatrix]:
    """X = diag(eps^(l-1), ..., eps, 1) and the cyclic shift Y, so XY = eps YX."""
    _check(ell)
    x = [[root_of_unity(ell, ell - 1 - i) if i == j else ZERO for j in range(ell)] for i in range(ell)]
    y = [[ONE if j == (i + 1) % ell else ZERO for j in range(ell)] for i in range(ell)]
    return x, y


def monomial(ell: int, i: int, j: int) -> CMatrix:
    x, y = pauli_pair(ell)
    return mat_mul(mat_pow(x, i % ell), mat_pow(y, j % ell))


def proportionality(a: CMatrix, b: CMatrix) -> CycNum:
    """s with a = s * b; raises if a and b are not proportional."""
    s = None
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if y:
                if s is None:
                    s = x / y
                    break
        if s is not None:
            break
    if s is None or scale(s, b) != a:
        raise ValueError("matrices are not proportional")
    return s


@dataclass(frozen=True)
class GradedMatrixAlg:
    size: int
    degree_map: dict

    def component(self, i: int, j: int) -> CMatrix:
        return self.degree_map[(i % self.size, j % self.size)]


def pauli_grading(ell: int) -> GradedMatrixAlg:
    _check(ell)
    return GradedMatrixAlg(ell, {(i, j): monomial(ell, i, j) for i in range(ell) for j in range(ell)})


def commutation_scalar(a: CMatrix, b: CMatrix) -> CycNum:
    """s with ab = s ba."""
    return proportionality(mat_mul(a, b), mat_mul(b, a))


def _discrete_log(ell: int, s: CycNum) -> int:
    for e in range(ell):
        if root_of_unity(ell, e) == s:
            return e
    raise ValueError(f"{s!r} is not an {ell}-th root of unity")


def commutation_table(ell: int) -> dict:
    """Brute-force exponent e((i,j),(i',j')) with X_g X_h = eps^e X_h X_g."""
    alg = pauli_grading(ell)
    table = {}
    for g, a in alg.degree_map.items():
        for h, b in alg.degree_map.items():
            table[(g, h)] = _discrete_log(ell, commutation_scalar(a, b))
    return table


def closed_form_exponent(ell: int, g, h) -> int:
    (i, j), (i2, j2) = g, h
    return (i * j2 - i2 * j) % ell


def commutation_bicharacter(ell: int) -> AltBichar:
    """The commutation bicharacter of the Pauli grading, as an AltBichar on Z_l^2."""
    table = commutation_table(ell)
    for (g, h), e in table.items():
        if e != closed_form_exponent(ell, g, h):
            raise AssertionError(f"commutation exponent mismatch at {g}, {h}")
    a, b = (1, 0), (0, 1)
    m = ((table[(a, a)], table[(a, b)]), (table[(b, a)], table[(b, b)]))
    return AltBichar(FGAbGroup(0, (ell, ell)), m)


def grading_json(ell: int) -> dict:
    alg = pauli_grading(ell)
    table = commutation_table(ell)
    degrees = sorted(alg.degree_map)
    return {
        "ell": ell,
        "epsilon": cyc_json(root_of_unity(ell, 1)),
        "degree_map": [
            {"degree": list(g), "matrix": [[cyc_json(x) for x in row] for row in alg.degree_map[g]]}
            for g in degrees
        ],
        "bicharacter": {
            "degrees": [list(g) for g in degrees],
            "exponents": [[table[(g, h)] for h in degrees] for g in degrees],
        },
    }
