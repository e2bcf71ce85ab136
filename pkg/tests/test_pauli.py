import pytest

from egrading import pauli
from egrading.bichar import brauer_class, radical
from egrading.cyclotomic import ONE, ZERO, root_of_unity


@pytest.mark.parametrize("ell", pauli.SUPPORTED_SIZES)
def test_pauli_pair_relations(ell):
    x, y = pauli.pauli_pair(ell)
    eps = root_of_unity(ell)
    assert pauli.mat_mul(x, y) == pauli.scale(eps, pauli.mat_mul(y, x))
    assert pauli.mat_pow(x, ell) == pauli.identity(ell)
    assert pauli.mat_pow(y, ell) == pauli.identity(ell)


@pytest.mark.parametrize("ell", pauli.SUPPORTED_SIZES)
def test_degree_components_span_matrix_algebra(ell):
    # the l^2 monomials are linearly independent: each (row, col) pattern plus diagonal phases
    alg = pauli.pauli_grading(ell)
    assert len(alg.degree_map) == ell * ell
    supports = {}
    for (i, j), m in alg.degree_map.items():
        cells = frozenset((r, c) for r in range(ell) for c in range(ell) if m[r][c] != ZERO)
        assert len(cells) == ell  # monomial matrices
        supports.setdefault(cells, []).append((i, j))
    assert all(len(v) == ell for v in supports.values())


@pytest.mark.parametrize("ell", pauli.SUPPORTED_SIZES)
def test_commutation_table_closed_form(ell):
    table = pauli.commutation_table(ell)
    assert len(table) == ell ** 4
    assert all(e == pauli.closed_form_exponent(ell, g, h) for (g, h), e in table.items())
    beta = pauli.commutation_bicharacter(ell)
    assert radical(beta).is_trivial()
    assert brauer_class(beta).degree == ell


def test_proportionality():
    x, _ = pauli.pauli_pair(3)
    w = root_of_unity(3)
    assert pauli.proportionality(pauli.scale(w, x), x) == w
    with pytest.raises(ValueError):
        pauli.proportionality(x, pauli.identity(3))
    assert pauli.commutation_scalar(x, x) == ONE


@pytest.mark.parametrize("ell", [1, 5, 6])
def test_unsupported_sizes(ell):
    with pytest.raises(pauli.UnsupportedSizeError):
        pauli.pauli_pair(ell)


def test_grading_json_shape():
    doc = pauli.grading_json(3)
    assert len(doc["degree_map"]) == 9
    assert len(doc["bicharacter"]["exponents"]) == 9
    assert doc["bicharacter"]["exponents"][1][3] == pauli.closed_form_exponent(3, (0, 1), (1, 0))
