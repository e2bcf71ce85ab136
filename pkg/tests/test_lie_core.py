import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from egrading import linalg
from egrading.cyclotomic import root_of_unity
from egrading.lie_core import (
    AutMap,
    LieAlg,
    LieError,
    NonCommutingError,
    NotAutomorphismError,
    RankSamplingWarning,
    Subalg,
    centralizer_dim,
    fixed_subalgebra,
    is_automorphism,
    joint_eigenspace,
    num_antisymmetry_pairs,
    num_jacobi_triples,
    reductive_rank,
    strongly_commute,
)

E, H, F = 0, 1, 2


def sl2() -> LieAlg:
    return LieAlg.from_antisymmetric(3, {(H, E): {E: 2}, (H, F): {F: -2}, (E, F): {H: 1}}, ["e", "h", "f"])


def sl_n(n: int) -> LieAlg:
    """sl_n from matrix commutators, basis E_ij (i != j) then E_ii - E_{i+1,i+1}."""
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                basis.append({(i, j): 1})
    for i in range(n - 1):
        basis.append({(i, i): 1, (i + 1, i + 1): -1})

    def mul(a, b):
        out = {}
        for (i, j), x in a.items():
            for (k, l), y in b.items():
                if j == k:
                    out[(i, l)] = out.get((i, l), 0) + x * y
        return out

    def coords(m):
        m = {k: v for k, v in m.items() if v}
        v = {}
        for idx, b in enumerate(basis[: n * (n - 1)]):
            (key,) = b
            if m.get(key):
                v[idx] = Fraction(m[key])
        # diagonal: d_0 .. d_{n-1}, traceless; coefficient of H_i is the partial sum
        acc = 0
        for i in range(n - 1):
            acc += m.get((i, i), 0)
            if acc:
                v[n * (n - 1) + i] = Fraction(acc)
        return v

    consts = {}
    for a in range(len(basis)):
        for b in range(len(basis)):
            ab, ba = mul(basis[a], basis[b]), mul(basis[b], basis[a])
            comm = {k: ab.get(k, 0) - ba.get(k, 0) for k in set(ab) | set(ba)}
            c = coords(comm)
            if c:
                consts[(a, b)] = c
    return LieAlg(len(basis), consts)


def test_sl2_brackets():
    alg = sl2()
    assert alg.bracket({H: 1}, {E: 1}) == {E: 2}
    assert alg.bracket({E: 1}, {F: 1}) == {H: 1}
    assert alg.check_antisymmetry() is None
    assert alg.check_jacobi() is None
    assert alg.rank() == 1
    assert alg.killing_determinant() != 0


def test_perturbed_constant_breaks_jacobi():
    # sl2 plus a vector c with [h, c] = c: the triple (e, f, c) breaks Jacobi
    alg = LieAlg.from_antisymmetric(4, {(H, E): {E: 2}, (H, F): {F: -2}, (E, F): {H: 1}, (H, 3): {3: 1}})
    assert alg.check_antisymmetry() is None
    assert alg.check_jacobi() is not None


def test_non_antisymmetric_table_detected():
    alg = LieAlg(2, {(0, 1): {0: 1}, (1, 0): {0: 1}})
    assert alg.check_antisymmetry() == (0, 1)


def test_out_of_range_constant():
    with pytest.raises(LieError):
        LieAlg(2, {(0, 2): {0: 1}})


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sl_n_axioms_and_rank(n):
    alg = sl_n(n)
    assert alg.dim == n * n - 1
    assert alg.check_antisymmetry() is None
    assert alg.check_jacobi() is None
    assert alg.rank() == n - 1


def test_parallel_jacobi_agrees():
    alg = sl_n(4)
    assert alg.check_jacobi(workers=2) is None
    bad = LieAlg(alg.dim, {k: dict(v) for k, v in _constants(alg).items()})
    bad.table[0][1] = linalg.add(bad.table[0][1], {alg.dim - 1: 1})
    bad.table[1][0] = linalg.scale(-1, bad.table[0][1])
    assert bad.check_jacobi() is not None
    assert bad.check_jacobi(workers=2) is not None


def _constants(alg):
    return {(i, j): alg.table[i][j] for i in range(alg.dim) for j in range(alg.dim) if alg.table[i][j]}


vec3 = st.dictionaries(st.integers(0, 7), st.integers(-5, 5), max_size=5).map(linalg.clean)


@given(vec3, vec3, vec3)
@settings(max_examples=60)
def test_bracket_identities_on_random_vectors(x, y, z):
    alg = sl_n(3)
    assert linalg.is_zero(linalg.add(alg.bracket(x, y), alg.bracket(y, x)))
    jac = alg.bracket(x, alg.bracket(y, z))
    jac = linalg.add(jac, alg.bracket(y, alg.bracket(z, x)))
    jac = linalg.add(jac, alg.bracket(z, alg.bracket(x, y)))
    assert linalg.is_zero(jac)


def test_json_round_trip():
    alg = sl2()
    back = LieAlg.from_json(alg.to_json())
    assert back.table == alg.table and back.labels == alg.labels
    i = root_of_unity(4)
    twisted = LieAlg.from_antisymmetric(3, {(H, E): {E: 2}, (H, F): {F: -2}, (E, F): {H: i}})
    assert LieAlg.from_json(twisted.to_json()).table == twisted.table


def chevalley(alg):
    return AutMap(alg, [{F: -1}, {H: -1}, {E: -1}], order=2, name="theta")


def diag_conj(alg, s):
    """Ad(diag(t, 1/t)) with t^2 = s: e -> s e, f -> f / s."""
    return AutMap(alg, [{E: s}, {H: 1}, {F: 1 / s}], name="psi")


def test_automorphisms_of_sl2():
    alg = sl2()
    theta = chevalley(alg)
    assert is_automorphism(alg, theta)
    assert theta.multiplicative_order() == 2
    minus = AutMap(alg, [{E: -1}, {H: -1}, {F: -1}], name="-id")
    verdict = is_automorphism(alg, minus)
    assert not verdict and "bracket" in verdict.reason
    singular = AutMap(alg, [{E: 1}, {E: 1}, {F: 1}])
    assert is_automorphism(alg, singular).reason == "matrix is singular"
    wrong_order = AutMap(alg, [{F: -1}, {H: -1}, {E: -1}], order=3)
    assert not is_automorphism(alg, wrong_order)


def test_cyclotomic_automorphism_and_fixed_points():
    alg = sl2()
    i = root_of_unity(4)
    psi = diag_conj(alg, i)
    assert is_automorphism(alg, psi)
    assert psi.multiplicative_order() == 4
    fix = fixed_subalgebra(alg, [psi])
    assert fix.dim == 1 and fix.contains({H: 1})
    assert strongly_commute(alg, psi, psi.power(2)) is True
    eig = joint_eigenspace(alg, [psi], [i])
    assert len(eig) == 1 and linalg.equal(psi.apply(eig[0]), linalg.scale(i, eig[0]))


def test_pauli_pair_does_not_strongly_commute():
    # theta and Ad(diag(i, -i)) generate the nontoral Z2^2 in PGL_2
    alg = sl2()
    theta = chevalley(alg)
    psi = diag_conj(alg, -1)
    assert theta.commutes_with(psi)
    assert fixed_subalgebra(alg, [theta, psi]).dim == 0
    assert strongly_commute(alg, theta, psi) is False


def test_non_commuting_raises():
    alg = sl2()
    with pytest.raises(NonCommutingError):
        strongly_commute(alg, chevalley(alg), diag_conj(alg, root_of_unity(4)))


def test_fixed_subalgebra_rejects_non_automorphism():
    alg = sl2()
    with pytest.raises(NotAutomorphismError):
        fixed_subalgebra(alg, [AutMap(alg, [{E: 2}, {H: 1}, {F: 1}])])


def test_reductive_rank_and_warning():
    alg = sl_n(3)
    whole = Subalg.whole(alg)
    assert whole.is_closed()
    assert reductive_rank(whole) == 2
    assert centralizer_dim(whole, {alg.dim - 1: 1}) >= 2
    # generic samples all see a Cartan subalgebra, so none of them should warn
    with warnings.catch_warnings():
        warnings.simplefilter("error", RankSamplingWarning)
        assert reductive_rank(whole, samples=3) == 2


def test_counts():
    assert num_antisymmetry_pairs(133) == 8778
    assert num_jacobi_triples(133) == 383306
    assert num_jacobi_triples(3) == 1
