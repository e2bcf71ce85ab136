"""The 133-dimensional simple Lie algebra sl(V) + wedge^4 V, dim V = 8.

Basis order: the 56 matrix units E_ij (i != j, lexicographic), the 7 diagonal
elements H_k = E_kk - E_{k+1,k+1}, then the 70 basic wedges e_S for 4-subsets S
of {0..7} in lexicographic order.  Vectors e_0..e_7 of V are x1..x4, y1..y4 and
b(x_i, y_j) = delta_ij.

Brackets: [f, g] is the matrix commutator, [f, X] = f.X is the derivation
action, and [X, Y] is the traceless M with tr(f M) = Omega(f.X, Y), where
Omega(e_S, e_T) is the sign of the permutation (S, T) of 0..7.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from .cyclotomic import ONE, ZERO, CycNum, root_of_unity
from .lie_core import AutMap, LieAlg, Subalg, joint_eigenspace, strongly_commute
from .linalg import Echelon, axpy, clean
from .pauli import mat_mul, pauli_pair

N = 8
OFFDIAG = [(i, j) for i in range(N) for j in range(N) if i != j]
N_SL = len(OFFDIAG) + N - 1  # 63
WEDGES = list(itertools.combinations(range(N), 4))
N_WEDGE = len(WEDGES)  # 70
DIM = N_SL + N_WEDGE  # 133

OFF_INDEX = {p: k for k, p in enumerate(OFFDIAG)}
WEDGE_INDEX = {s: N_SL + k for k, s in enumerate(WEDGES)}
SL_RANGE = range(N_SL)
WEDGE_RANGE = range(N_SL, DIM)

VECTOR_NAMES = ["x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"]

# Gram matrix of b: b(x_i, y_i) = 1 = -b(y_i, x_i)
GRAM_B = [[Fraction(0)] * N for _ in range(N)]
for _i in range(4):
    GRAM_B[_i][_i + 4] = Fraction(1)
    GRAM_B[_i + 4][_i] = Fraction(-1)

ONE_F = Fraction(1)


class E7ModelError(ValueError):
    pass


def labels() -> list[str]:
    out = [f"E{i + 1}{j + 1}" for i, j in OFFDIAG]
    out += [f"H{k + 1}" for k in range(N - 1)]
    out += ["^".join(VECTOR_NAMES[a] for a in s) for s in WEDGES]
    return out


def wedge_index(names: Sequence[str]) -> int:
    """Basis index of a wedge written with vector names, e.g. ["x1", "x2", "y1", "y2"] (ascending)."""
    idx = tuple(VECTOR_NAMES.index(n) for n in names)
    if list(idx) != sorted(idx):
        raise E7ModelError("wedge factors must be listed in ascending basis order")
    return WEDGE_INDEX[idx]


# ------------------------------------------------------------------ wedges
def perm_sign(seq: Sequence[int]) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def normal_wedge(factors: Sequence[int]) -> tuple[int, Optional[tuple]]:
    """(sign, sorted subset) for e_{f1}^...^e_{f4}; sign 0 if a factor repeats."""
    if len(set(factors)) < len(factors):
        return 0, None
    return perm_sign(factors), tuple(sorted(factors))


def omega_pair(s: tuple, t: tuple) -> int:
    if set(s) & set(t):
        return 0
    return perm_sign(s + t)


def wedge_of(vectors: Sequence[Mapping]) -> dict:
    """Coordinates of v1^v2^v3^v4 in the wedge block, vectors given as sparse dicts over 0..7."""
    partial: dict = {(): ONE_F}
    for v in vectors:
        nxt: dict = {}
        for key, c in partial.items():
            for a, x in v.items():
                if a in key or not x:
                    continue
                k2 = key + (a,)
                y = nxt.get(k2)
                nxt[k2] = c * x if y is None else y + c * x
        partial = nxt
    out: dict = {}
    for key, c in partial.items():
        sign, s = normal_wedge(key)
        idx = WEDGE_INDEX[s]
        y = clean(out.get(idx, 0) + sign * c)
        if y:
            out[idx] = y
        else:
            out.pop(idx, None)
    return out


def matrix_on_wedge(f: Sequence[Sequence], s: tuple) -> dict:
    """Derivation action f.e_S = sum_t e_{s1}^...^f e_{st}^...^e_{s4}."""
    out: dict = {}
    for t, st in enumerate(s):
        for a in range(N):
            x = f[a][st]
            if not x:
                continue
            sign, sub = normal_wedge(s[:t] + (a,) + s[t + 1:])
            if sign:
                idx = WEDGE_INDEX[sub]
                y = clean(out.get(idx, 0) + sign * x)
                if y:
                    out[idx] = y
                else:
                    out.pop(idx, None)
    return out


def unit_on_wedge(i: int, j: int, s: tuple) -> tuple[int, Optional[tuple]]:
    """E_ij.e_S as (sign, subset) since the result is a single basic wedge or 0."""
    if j not in s:
        return 0, None
    if i == j:
        return 1, s
    return normal_wedge(tuple(i if a == j else a for a in s))


# --------------------------------------------------------------- sl block
def sl_matrix(v: Mapping) -> list[list]:
    """8x8 matrix of the sl-part of a coordinate vector."""
    m = [[Fraction(0)] * N for _ in range(N)]
    for k, x in v.items():
        if k >= N_SL or not x:
            continue
        if k < len(OFFDIAG):
            i, j = OFFDIAG[k]
            m[i][j] = m[i][j] + x
        else:
            h = k - len(OFFDIAG)
            m[h][h] = m[h][h] + x
            m[h + 1][h + 1] = m[h + 1][h + 1] - x
    return m


def sl_coords(m: Sequence[Sequence]) -> dict:
    """Coordinates of a traceless 8x8 matrix; raises if the trace is nonzero."""
    tr = clean(sum((m[i][i] for i in range(N)), Fraction(0)))
    if tr:
        raise E7ModelError("matrix is not traceless")
    out: dict = {}
    for k, (i, j) in enumerate(OFFDIAG):
        x = clean(m[i][j])
        if x:
            out[k] = x
    # diag(d) = sum_k c_k H_k with c_k = d_1 + ... + d_k
    acc = Fraction(0)
    for h in range(N - 1):
        acc = clean(acc + m[h][h])
        if acc:
            out[len(OFFDIAG) + h] = acc
    return out


def _basis_matrix(k: int) -> list[list]:
    return sl_matrix({k: ONE_F})


def _commutator(a, b):
    ab = _mm(a, b)
    ba = _mm(b, a)
    return [[clean(ab[i][j] - ba[i][j]) for j in range(N)] for i in range(N)]


def _mm(a, b):
    out = [[Fraction(0)] * N for _ in range(N)]
    for i in range(N):
        for t in range(N):
            x = a[i][t]
            if not x:
                continue
            bt = b[t]
            for j in range(N):
                if bt[j]:
                    out[i][j] = out[i][j] + x * bt[j]
    return out


def wedge_bracket_matrix(s: tuple, t: tuple) -> list[list]:
    """The traceless M with tr(f M) = Omega(f.e_S, e_T) for all f in sl(V)."""
    m = [[Fraction(0)] * N for _ in range(N)]
    for i, j in OFFDIAG:
        sign, sub = unit_on_wedge(i, j, s)
        if sign:
            m[j][i] = Fraction(sign * omega_pair(sub, t))
    d = []
    for i in range(N):
        sign, sub = unit_on_wedge(i, i, s)
        d.append(Fraction(omega_pair(sub, t)) if sign else Fraction(0))
    mean = sum(d) / N
    for i in range(N):
        m[i][i] = d[i] - mean
    return m


# ------------------------------------------------------------------ build
@lru_cache(maxsize=1)
def build_e7() -> LieAlg:
    """Structure constants of sl(V) + wedge^4 V on all ordered basis pairs."""
    consts: dict = {}
    mats = [_basis_matrix(k) for k in SL_RANGE]
    for a in SL_RANGE:
        for b in SL_RANGE:
            if a != b:
                v = sl_coords(_commutator(mats[a], mats[b]))
                if v:
                    consts[(a, b)] = v
        for s in WEDGES:
            v = matrix_on_wedge(mats[a], s)
            if v:
                consts[(a, WEDGE_INDEX[s])] = v
                consts[(WEDGE_INDEX[s], a)] = {k: -x for k, x in v.items()}
    for s in WEDGES:
        for t in WEDGES:
            if s == t:
                continue
            m = wedge_bracket_matrix(s, t)
            v = sl_coords(m)
            if v:
                consts[(WEDGE_INDEX[s], WEDGE_INDEX[t])] = v
    return LieAlg(DIM, consts, labels())


def sl_part(v: Mapping) -> dict:
    return {k: x for k, x in v.items() if k < N_SL}


def wedge_part(v: Mapping) -> dict:
    return {k: x for k, x in v.items() if k >= N_SL}


def act(f: Sequence[Sequence], x: Mapping) -> dict:
    """f.X for f in gl(V) and X in the wedge block (derivation action)."""
    out: dict = {}
    for k, c in x.items():
        if c:
            axpy(out, c, matrix_on_wedge(f, WEDGES[k - N_SL]))
    return out


# --------------------------------------------------------------- symplectic data
def omega(x: Mapping, y: Mapping):
    acc = Fraction(0)
    for k, a in x.items():
        s = WEDGES[k - N_SL]
        comp = tuple(sorted(set(range(N)) - set(s)))
        b = y.get(WEDGE_INDEX[comp])
        if b:
            acc = acc + a * b * omega_pair(s, comp)
    return clean(acc)


def _det4(m):
    m = [list(r) for r in m]
    det = Fraction(1)
    for c in range(4):
        piv = next((r for r in range(c, 4) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        for r in range(c + 1, 4):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def omega_b_pair(s: tuple, t: tuple) -> Fraction:
    """Omega_b(e_S, e_T) = det(b(e_si, e_tj))."""
    return _det4([[GRAM_B[a][b] for b in t] for a in s])


@dataclass(frozen=True)
class SymplecticData:
    gram_b: tuple
    gram_omega: tuple  # 70 x 70, indexed by wedge position
    gram_omega_b: tuple


@lru_cache(maxsize=1)
def symplectic_data() -> SymplecticData:
    go = tuple(tuple(omega_pair(s, t) for t in WEDGES) for s in WEDGES)
    gb = tuple(tuple(omega_b_pair(s, t) for t in WEDGES) for s in WEDGES)
    return SymplecticData(tuple(tuple(r) for r in GRAM_B), go, gb)


def adjoint(f: Sequence[Sequence]) -> list[list]:
    """Symplectic adjoint f* = J^{-1} f^T J, so b(f u, w) = b(u, f* w)."""
    # J^{-1} = -J for this Gram matrix
    ft = [[f[j][i] for j in range(N)] for i in range(N)]
    j_inv = [[-x for x in row] for row in GRAM_B]
    return _mm_generic(_mm_generic(j_inv, ft), GRAM_B)


def _mm_generic(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            x = a[i][t]
            if not x:
                continue
            for j in range(m):
                y = b[t][j]
                if y:
                    out[i][j] = clean(out[i][j] + x * y)
    return out


# ------------------------------------------------------------------ automorphisms
@lru_cache(maxsize=1)
def sigma() -> AutMap:
    """Identity on sl(V), minus identity on wedge^4 V."""
    alg = build_e7()
    cols = [{k: ONE_F} for k in SL_RANGE] + [{k: -ONE_F} for k in WEDGE_RANGE]
    return AutMap(alg, cols, order=2, name="sigma")


@lru_cache(maxsize=1)
def tau() -> AutMap:
    """f -> -f* on sl(V); on wedges the operator with Omega(tau X, Y) = Omega_b(X, Y)."""
    alg = build_e7()
    cols = []
    for k in SL_RANGE:
        f = _basis_matrix(k)
        fs = adjoint(f)
        cols.append(sl_coords([[-x for x in row] for row in fs]))
    data = symplectic_data()
    # G_Omega is a symmetric signed permutation with square I, so it is its own inverse
    go, gb = data.gram_omega, data.gram_omega_b
    for c in range(N_WEDGE):
        col: dict = {}
        for r in range(N_WEDGE):
            acc = Fraction(0)
            for m in range(N_WEDGE):
                if go[r][m] and gb[m][c]:
                    acc += go[r][m] * gb[m][c]
            if acc:
                col[N_SL + r] = acc
        cols.append(col)
    return AutMap(alg, cols, order=2, name="tau")


def _det_generic(m):
    m = [list(r) for r in m]
    n = len(m)
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det = det * p
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / p
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return clean(det)


def _inverse_generic(m):
    n = len(m)
    aug = [list(m[i]) + [ONE_F if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [clean(x / p) for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [clean(a - f * b) for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def determinant8(f) -> object:
    return _det_generic(f)


def phi(f: Sequence[Sequence], name: str = "", order: Optional[int] = None) -> AutMap:
    """Phi(f): conjugation on sl(V) and the fourth exterior power of f on wedge^4 V."""
    f = [[clean(x) for x in row] for row in f]
    if len(f) != N or any(len(r) != N for r in f):
        raise E7ModelError("phi expects an 8x8 matrix")
    if _det_generic(f) != 1:
        raise E7ModelError("phi is only defined on matrices of determinant 1")
    finv = _inverse_generic(f)
    cols = []
    for k in SL_RANGE:
        cols.append(sl_coords(_mm_generic(_mm_generic(f, _basis_matrix(k)), finv)))
    fcols = [{a: f[a][j] for a in range(N) if f[a][j]} for j in range(N)]
    for s in WEDGES:
        cols.append(wedge_of([fcols[a] for a in s]))
    return AutMap(build_e7(), cols, order=order, name=name)


def group_act(f: Sequence[Sequence], x: Mapping) -> dict:
    """f.X for f in GL(V) acting on the wedge block by the fourth exterior power."""
    fcols = [{a: f[a][j] for a in range(N) if f[a][j]} for j in range(N)]
    out: dict = {}
    for k, c in x.items():
        if c:
            axpy(out, c, wedge_of([fcols[a] for a in WEDGES[k - N_SL]]))
    return out


def scalar_matrix(s) -> list[list]:
    return [[s if i == j else Fraction(0) for j in range(N)] for i in range(N)]


# ----------------------------------------------------------- Z2^2 decomposition
SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def z22_components() -> dict:
    """Simultaneous (sigma, tau) eigenspaces, keyed by sign pairs."""
    alg = build_e7()
    s, t = sigma(), tau()
    return {sg: Subalg(alg, joint_eigenspace(alg, [s, t], sg)) for sg in SIGNS}


def check_component_brackets(components: dict) -> list[tuple]:
    """Sign pairs (a, b) for which [L_a, L_b] is not inside L_{ab}; empty when the grading is compatible."""
    alg = build_e7()
    bad = []
    for a, ca in components.items():
        for b, cb in components.items():
            target = components[(a[0] * b[0], a[1] * b[1])]
            ok = all(target.contains(alg.bracket(u, v)) for u in ca.basis for v in cb.basis)
            if not ok:
                bad.append((a, b))
    return bad


# ------------------------------------------------------------------ contractions
PAIRS = list(itertools.combinations(range(N), 2))
PAIR_INDEX = {p: k for k, p in enumerate(PAIRS)}


def partial_contraction_basic(s: tuple) -> dict:
    """c(e_S) in wedge^2 V, keyed by pair position."""
    out: dict = {}
    for a, b in itertools.combinations(range(4), 2):
        c, d = [k for k in range(4) if k not in (a, b)]
        sign = perm_sign((a, b, c, d))
        coef = GRAM_B[s[a]][s[b]]
        if coef:
            idx = PAIR_INDEX[(s[c], s[d])]
            y = out.get(idx, 0) + sign * coef
            if y:
                out[idx] = y
            else:
                out.pop(idx, None)
    return out


def full_contraction_basic(s: tuple) -> Fraction:
    b = GRAM_B
    v1, v2, v3, v4 = s
    return b[v1][v2] * b[v3][v4] - b[v1][v3] * b[v2][v4] + b[v1][v4] * b[v2][v3]


@dataclass(frozen=True)
class Contractions:
    partial: dict  # wedge index -> wedge^2 coordinates
    full: dict  # wedge index -> scalar
    b_tilde: dict  # element of the wedge block

    def partial_kernel(self) -> list[dict]:
        rows: list[dict] = [dict() for _ in PAIRS]
        for k, img in self.partial.items():
            for p, x in img.items():
                rows[p][k - N_SL] = x
        kernel = Echelon(r for r in rows if r).nullspace(N_WEDGE)
        return [{k + N_SL: x for k, x in v.items()} for v in kernel]


def contractions() -> Contractions:
    partial = {WEDGE_INDEX[s]: partial_contraction_basic(s) for s in WEDGES}
    full = {WEDGE_INDEX[s]: full_contraction_basic(s) for s in WEDGES}
    # Omega(b~, e_T) = bhat(e_T); G_Omega is its own inverse
    go = symplectic_data().gram_omega
    b_tilde: dict = {}
    for r in range(N_WEDGE):
        acc = Fraction(0)
        for m in range(N_WEDGE):
            if go[r][m]:
                acc += go[r][m] * full[N_SL + m]
        if acc:
            b_tilde[N_SL + r] = acc
    return Contractions(partial, full, b_tilde)


def b_tilde_formula() -> dict:
    """-sum_{i<j} x_i^x_j^y_i^y_j written out in coordinates."""
    out = {}
    for i, j in itertools.combinations(range(4), 2):
        out[WEDGE_INDEX[(i, j, i + 4, j + 4)]] = Fraction(-1)
    return out


# ------------------------------------------------------------------ quasitorus
def kron(a, b) -> list[list]:
    """Kronecker product; e_{2a+c} <-> v_a (x) w_c with 0-based a, c."""
    n, m = len(a), len(b)
    return [[a[i // m][j // m] * b[i % m][j % m] for j in range(n * m)] for i in range(n * m)]


@dataclass
class Quasitorus:
    names: list
    operators: list  # 8x8 matrices in SL(V)
    automorphisms: list
    table: list  # strongly_commute matrix
    square_names: list
    square_table: list  # squares vs generators
    group_order: int
    generator_orders: list


def z42_operators() -> tuple[list[str], list]:
    x1, y1 = pauli_pair(4)
    x2, y2 = pauli_pair(2)
    i1 = [[ONE if i == j else ZERO for j in range(4)] for i in range(4)]
    i2 = [[ONE if i == j else ZERO for j in range(2)] for i in range(2)]
    eps = root_of_unity(8)
    ops = [
        kron(x1, i2),
        kron(y1, i2),
        kron(i1, x2),
        kron(i1, y2),
        [[eps if i == j else ZERO for j in range(8)] for i in range(8)],
    ]
    names = ["X1(x)I2", "Y1(x)I2", "I1(x)X2", "I1(x)Y2", "epsI"]
    return names, ops


def _canonical_mod_i(m) -> tuple:
    """Representative of the class of m modulo the scalars <i I>."""
    i = root_of_unity(4)
    best = None
    for k in range(4):
        s = i ** k
        key = tuple(tuple(_entry_key(s * x) for x in row) for row in m)
        if best is None or key < best:
            best = key
    return best


def _entry_key(x) -> tuple:
    if isinstance(x, CycNum):
        return x.c
    return (Fraction(x),) + (Fraction(0),) * 7


def _matrix_order_mod_i(m, bound: int = 16) -> int:
    ident = _canonical_mod_i(scalar_matrix(ONE))
    cur = m
    for k in range(1, bound + 1):
        if _canonical_mod_i(cur) == ident:
            return k
        cur = mat_mul(cur, m)
    raise E7ModelError("operator order exceeds bound")


def generated_group_mod_i(ops: Sequence) -> set:
    """Elements of the group generated by ops, modulo <i I>, by closure."""
    ident = scalar_matrix(ONE)
    seen = {_canonical_mod_i(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for o in ops:
                h = mat_mul(g, o)
                key = _canonical_mod_i(h)
                if key not in seen:
                    seen[key] = h
                    nxt.append(h)
        frontier = nxt
    return set(seen)


@lru_cache(maxsize=1)
def z42_quasitorus() -> Quasitorus:
    alg = build_e7()
    names, ops = z42_operators()
    auts = [phi(o, name=n) for n, o in zip(names, ops)]
    table = [[strongly_commute(alg, a, b) for b in auts] for a in auts]
    sq_names = ["X1^2(x)I2", "Y1^2(x)I2"]
    sq_auts = [phi(mat_mul(ops[k], ops[k]), name=n) for k, n in zip((0, 1), sq_names)]
    sq_table = [[strongly_commute(alg, a, b) for b in auts] for a in sq_auts]
    orders = [_matrix_order_mod_i(o) for o in ops]
    order = len(generated_group_mod_i(ops))
    return Quasitorus(names, ops, auts, table, sq_names, sq_table, order, orders)


def torus_variant_checks(samples: Sequence[int] = (1, 2, 3, 5)) -> list[tuple[str, bool]]:
    """I1 (x) diag(t, 1/t) for t = zeta_24^k: strong commutation with the first, second and fifth generators."""
    alg = build_e7()
    names, ops = z42_operators()
    i1 = [[ONE if i == j else ZERO for j in range(4)] for i in range(4)]
    out = []
    for k in samples:
        t = root_of_unity(24, k)
        d = [[t, ZERO], [ZERO, t.inverse()]]
        a = phi(kron(i1, d), name=f"I1(x)diag(z^{k}, z^-{k})")
        for idx in (0, 1, 4):
            b = phi(ops[idx], name=names[idx])
            out.append((f"{a.name} vs {names[idx]}", strongly_commute(alg, a, b)))
    return out


def random_sl_matrix(rng, steps: int = 12) -> list[list]:
    """Product of random elementary matrices: integer entries, determinant 1."""
    m = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
    for _ in range(steps):
        i, j = rng.sample(range(N), 2)
        c = rng.choice([-2, -1, 1, 2])
        for r in range(N):
            m[r][i] += c * m[r][j]
    return m


def sp_component_basis() -> list[dict]:
    return z22_components()[(1, 1)].basis

