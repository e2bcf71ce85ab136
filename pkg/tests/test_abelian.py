import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from egrading.abelian import (
    AbHom,
    AbelianGroupError,
    FGAbGroup,
    IllDefinedHomError,
    InfiniteGroupError,
    Subgroup,
    det,
    free_part,
    matmul,
    perp,
    primary_decomposition,
    quotient,
    smith_normal_form,
    torsion_split,
    unimodular_inverse,
)

small_int = st.integers(min_value=-12, max_value=12)


@st.composite
def int_matrices(draw, max_dim=4):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return [draw(st.lists(small_int, min_size=c, max_size=c)) for _ in range(r)]


finite_groups = st.sampled_from(
    [(2,), (3,), (4,), (2, 2), (2, 4), (3, 3), (2, 6), (2, 2, 2), (3, 9), (2, 2, 4), (6, 12)]
).map(lambda ds: FGAbGroup(0, ds))


def _diag(s):
    return [s[i][i] for i in range(min(len(s), len(s[0])))]


@given(int_matrices())
@settings(max_examples=200)
def test_snf_against_sympy(a):
    u, s, v = smith_normal_form(a)
    assert matmul(matmul(u, a), v) == s
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    ours = [d for d in _diag(s) if d]
    theirs = [abs(int(x)) for x in _diag(sympy_snf(Matrix(a), domain=ZZ).tolist()) if x]
    assert sorted(ours) == sorted(theirs)
    assert all(ours[i + 1] % ours[i] == 0 for i in range(len(ours) - 1))


@given(int_matrices())
@settings(max_examples=100)
def test_unimodular_inverse(a):
    u, _, _ = smith_normal_form(a)
    n = len(u)
    assert matmul(u, unimodular_inverse(u)) == [[int(i == j) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize(
    "text,free,factors",
    [
        ("Z2^8", 0, (2,) * 8),
        ("Z^2xZ2^3", 2, (2, 2, 2)),
        ("Z2xZ3^3", 0, (3, 3, 6)),
        ("Z4xZ2^4", 0, (2, 2, 2, 2, 4)),
        ("Z_4^3 x Z_2", 0, (2, 4, 4, 4)),
        ("Z^6", 6, ()),
        ("1", 0, ()),
    ],
)
def test_parse_normal_form(text, free, factors):
    g, _ = FGAbGroup.parse(text)
    assert (g.free_rank, g.invariant_factors) == (free, factors)


def test_parse_rejects_garbage():
    with pytest.raises(AbelianGroupError):
        FGAbGroup.parse("Q3")


def test_invalid_chain():
    with pytest.raises(AbelianGroupError):
        FGAbGroup(0, (4, 6))


@pytest.mark.parametrize("orders", [[2, 3, 3, 3], [4, 2, 2, 2, 2], [0, 0, 2, 2, 2], [6, 4], [0, 3, 9]])
def test_with_section_is_a_splitting(orders):
    n = len(orders)
    rels = [[d if i == j else 0 for i in range(n)] for j, d in enumerate(orders) if d]
    g, proj, section = FGAbGroup.with_section(n, rels)
    assert g.ngens == len(proj)
    for j in range(g.ngens):
        col = [section[r][j] for r in range(n)]
        image = g.reduce([sum(proj[i][r] * col[r] for r in range(n)) for i in range(g.ngens)])
        assert image == g.gen(j)


def test_group_basics():
    g = FGAbGroup(1, (2, 4))
    assert g.reduce((5, 3, 7)) == (5, 1, 3)
    assert g.element_order((0, 1, 2)) == 2
    assert g.element_order((1, 0, 0)) is None
    with pytest.raises(InfiniteGroupError):
        g.order()
    assert FGAbGroup.from_json(g.to_json()) == g
    assert primary_decomposition(FGAbGroup(0, (6, 12))) == [2, 3, 3, 4]  # Z2 x Z3 x Z3 x Z4
    assert free_part(g).generators == ((1, 0, 0),)


@given(finite_groups, st.data())
@settings(max_examples=80)
def test_perp_involution_and_orders(g, data):
    els = sorted(g.elements())
    gens = data.draw(st.lists(st.sampled_from(els), max_size=2))
    s = Subgroup(g, tuple(gens))
    p = perp(g, s)
    assert s.order() * p.order() == g.order()
    assert perp(g, p).equals(s)
    # brute-force annihilator
    n = g.exponent()
    brute = {h for h in els if all(g.pairing_exponent(x, h) % n == 0 for x in s.elements())}
    assert brute == p.elements()


@given(finite_groups, st.sampled_from([2, 3, 5]))
def test_torsion_split(g, p):
    a, b = torsion_split(g, p)
    assert a.order() * b.order() == g.order()
    assert all(g.element_order(x) % p == 0 or not any(x) for x in a.elements())
    assert math.gcd(b.order(), p) == 1


def test_torsion_split_rejects_composite():
    with pytest.raises(AbelianGroupError):
        torsion_split(FGAbGroup(0, (6,)), 4)


@given(finite_groups, st.data())
@settings(max_examples=60)
def test_quotient_order(g, data):
    x = data.draw(st.sampled_from(sorted(g.elements())))
    h = Subgroup(g, (x,))
    q, proj = quotient(g, h)
    assert q.order() * h.order() == g.order()
    assert proj.kernel().equals(h)


def test_hom_checks():
    z4 = FGAbGroup(0, (4,))
    z2 = FGAbGroup(0, (2,))
    AbHom(z4, z2, ((1,),))
    with pytest.raises(IllDefinedHomError):
        AbHom(z2, z4, ((1,),))
    double = AbHom(z2, z4, ((2,),))
    assert double.is_injective()
    assert not AbHom(z4, z2, ((1,),)).is_injective()
    assert AbHom.identity(z4).compose(AbHom.identity(z4)).matrix == ((1,),)


def test_torsion_split_examples():
    a, b = torsion_split(FGAbGroup(0, (6,)), 3)
    assert (a.order(), b.order()) == (3, 2)
    g, _ = FGAbGroup.parse("Z^2xZ3^2")
    a, b = torsion_split(g, 3)
    assert a.structure().invariant_factors == (3, 3) and b.is_trivial()
    assert free_part(g).structure().free_rank == 2
    a, b = torsion_split(FGAbGroup(0, (4,)), 2)
    assert a.order() == 4 and b.is_trivial()
