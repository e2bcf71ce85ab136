import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from egrading.abelian import IllDefinedHomError, Subgroup
from egrading.bichar import brauer_class
from egrading.invariants import (
    TORSION_PRIME,
    ArityError,
    InvariantsError,
    ModuleSpec,
    brauer_report,
    catalog,
    find_entry,
    graded_simple_description,
    h_candidates,
    identity_nu,
    model_bicharacter,
    module_compatible,
    nu_from_factor_matrix,
    p_torsion,
)
from egrading.roots_weights import center_class, fundamental, root_system


def report(t, eid, lam, nu=None):
    e = find_entry(t, eid)
    return brauer_report(e, nu or identity_nu(e), lam)


@pytest.mark.parametrize("t", ["E6", "E7"])
def test_catalog_has_fourteen_distinct_entries(t):
    entries = catalog(t)
    assert len(entries) == 14
    assert len({e.id for e in entries}) == 14


def test_entry_lookup():
    assert find_entry("E6", "Z3^3xZ2").id == "Z2xZ3^3"
    assert find_entry("E6", "Z^2xZ2^3-outer").kind == "outer"
    assert find_entry("E6", "Z^2xZ2^3-inner").kind == "inner"
    with pytest.raises(InvariantsError):
        find_entry("E6", "Z^2xZ2^3")
    with pytest.raises(InvariantsError):
        find_entry("E7", "Z5")
    with pytest.raises(InvariantsError):
        catalog("F4")


def test_t_subgroups():
    assert find_entry("E7", "Z2^8").T().order() == 4
    assert find_entry("E6", "Z3^4").T().order() == 9
    zz = find_entry("E7", "Z2xZ4^3")
    assert zz.T().order() == 4 and zz.h_is_convention
    assert len(h_candidates(zz)) == 7
    assert not find_entry("E7", "Z^7").has_T()


def test_worked_examples():
    a = report("E7", "Z2^8", fundamental("E7", 1))
    assert (a.schur_index, a.graded_simple_dim, a.weyl_dim) == (2, 112, 56)
    b = report("E6", "Z3^4", fundamental("E6", 1))
    assert (b.schur_index, b.graded_simple_dim) == (3, 81)
    c = report("E6", "Z3^4", fundamental("E6", 3))
    assert (c.schur_index, c.weyl_dim) == (1, 2925)
    d = report("E6", "Z2xZ3^3", fundamental("E6", 1))
    assert d.schur_index == 1 and d.orbit == [fundamental("E6", 1), fundamental("E6", 5)]
    assert d.graded_simple_dim == 54
    # adjoint-type weights are in the root lattice
    assert report("E7", "Z2^8", fundamental("E7", 6)).schur_index == 1


def test_outer_with_nu_killing_h_has_single_orbit():
    e = find_entry("E6", "Z2xZ3^3")
    # factor order Z2, Z3, Z3, Z3 -> target Z3^3 dropping the Z2 factor
    nu = nu_from_factor_matrix(e, "Z3^3", [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    rep = brauer_report(e, nu, fundamental("E6", 1))
    assert rep.orbit == [fundamental("E6", 1)]
    assert rep.graded_simple_dim == 27


def test_nu_coarsenings_of_z2_8():
    e = find_entry("E7", "Z2^8")
    lam = fundamental("E7", 1)
    keep_t = nu_from_factor_matrix(e, "Z2^2", [[1, 0, 0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]])
    assert brauer_report(e, keep_t, lam).schur_index == 2
    collapse = nu_from_factor_matrix(e, "Z2", [[1] * 8])
    rep = brauer_report(e, collapse, lam)
    assert rep.schur_index == 1
    assert any("not injective" in n for n in rep.verdict_notes)


def test_nu_errors():
    e = find_entry("E7", "Z2^8")
    with pytest.raises(IllDefinedHomError):
        nu_from_factor_matrix(e, "Z4", [[1] * 8])
    with pytest.raises(ArityError):
        nu_from_factor_matrix(e, "Z2", [[1] * 7])
    with pytest.raises(ArityError):
        brauer_report(e, identity_nu(e), (1, 0, 0))
    other = find_entry("E7", "Z2^7")
    with pytest.raises(ArityError):
        brauer_report(e, identity_nu(other), fundamental("E7", 1))


def test_e7_h_convention_note():
    e = find_entry("E7", "Z2xZ4^3")
    # kills 2 * (second factor) but not 2 * (third factor)
    nu = nu_from_factor_matrix(e, "Z2xZ4^2", [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    rep = brauer_report(e, nu, fundamental("E7", 1))
    assert any("h convention" in n for n in rep.verdict_notes)


def test_module_compatibility_thresholds():
    e7 = find_entry("E7", "Z2^8")
    nu = identity_nu(e7)
    pi1, pi6 = fundamental("E7", 1), fundamental("E7", 6)
    assert not module_compatible(e7, nu, ModuleSpec([(pi1, 1)]))
    assert module_compatible(e7, nu, ModuleSpec([(pi1, 2)]))
    assert module_compatible(e7, nu, ModuleSpec([(pi6, 1)]))
    assert module_compatible(e7, nu, ModuleSpec([(pi1, 1), (pi1, 1), (pi6, 3)]))
    e6 = find_entry("E6", "Z3^4")
    assert not module_compatible(e6, identity_nu(e6), ModuleSpec([(fundamental("E6", 1), 2)]))
    assert module_compatible(e6, identity_nu(e6), ModuleSpec([(fundamental("E6", 1), 3)]))
    outer = find_entry("E6", "Z2xZ3^3")
    nu = identity_nu(outer)
    assert not module_compatible(outer, nu, ModuleSpec([(fundamental("E6", 1), 1)]))
    assert module_compatible(outer, nu, ModuleSpec([(fundamental("E6", 1), 1), (fundamental("E6", 5), 1)]))
    with pytest.raises(ArityError):
        module_compatible(e7, identity_nu(e7), ModuleSpec([((1, 0), 1)]))


def test_module_spec_parsing():
    m = ModuleSpec.from_json({"summands": [{"weight": [1, 0, 0, 0, 0, 0, 0], "multiplicity": 2}]})
    assert m.multiplicity((1, 0, 0, 0, 0, 0, 0)) == 2
    assert ModuleSpec.from_json([[[0, 1], 3]]).summands == [((0, 1), 3)]
    with pytest.raises(InvariantsError):
        ModuleSpec([((1, -1), 1)])
    with pytest.raises(InvariantsError):
        ModuleSpec([((1, 0), 0)])


def test_graded_simple_description():
    e = find_entry("E6", "Z2xZ3^3")
    gs = graded_simple_description(e, identity_nu(e), fundamental("E6", 1))
    assert gs.total_dim == 54 and len(gs.summands) == 2


def test_report_json_is_stable():
    a = json.dumps(report("E7", "Z2^8", fundamental("E7", 1)).to_json(), sort_keys=True)
    b = json.dumps(report("E7", "Z2^8", fundamental("E7", 1)).to_json(), sort_keys=True)
    assert a == b and json.loads(a)["schema_version"] == 1


# ------------------------------------------------------------------ properties
ENTRIES_WITH_T = [e for t in ("E6", "E7") for e in catalog(t) if e.has_T() and not e.trivial_invariants]


@st.composite
def coarsenings(draw):
    """An entry with nontrivial T, a homomorphism to Z_p^k, and a dominant weight."""
    e = draw(st.sampled_from(ENTRIES_WITH_T))
    p = TORSION_PRIME[e.type]
    k = draw(st.integers(1, 4))
    cols = []
    for d in e.factor_orders:
        if d and d % p:
            cols.append([0] * k)  # must die in a p-group
        else:
            cols.append([draw(st.integers(0, p - 1)) for _ in range(k)])
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(k)]
    nu = nu_from_factor_matrix(e, f"Z{p}^{k}", matrix)
    n = root_system(e.type).rank
    lam = tuple(draw(st.lists(st.integers(0, 3), min_size=n, max_size=n)))
    return e, nu, lam


@given(coarsenings())
@settings(max_examples=60, deadline=None)
def test_schur_index_squared_is_support_order(args):
    e, nu, lam = args
    rep = brauer_report(e, nu, lam)
    assert rep.schur_index ** 2 == rep.support.order()
    assert rep.graded_simple_dim == len(rep.orbit) * rep.schur_index * rep.weyl_dim


@given(coarsenings())
@settings(max_examples=60, deadline=None)
def test_support_lies_in_image_of_p_torsion(args):
    e, nu, lam = args
    rep = brauer_report(e, nu, lam)
    image = nu.image(p_torsion(e))
    assert rep.support.is_subgroup_of(image)


@given(coarsenings())
@settings(max_examples=60, deadline=None)
def test_bicharacter_route_agrees_with_report(args):
    # independent route: the c-th power of the standard form on T, pushed through nu
    e, nu, lam = args
    rep = brauer_report(e, nu, lam)
    beta = model_bicharacter(e, lam)
    if nu.is_injective_on(e.T()):
        expected = brauer_class(beta).degree
    else:
        expected = 1
    assert rep.schur_index == expected
    p = TORSION_PRIME[e.type]
    assert expected == (p if center_class(e.type, lam) and nu.is_injective_on(e.T()) else 1)


@given(coarsenings(), st.integers(1, 6))
@settings(max_examples=40, deadline=None)
def test_compatibility_threshold_is_schur_index(args, mult):
    e, nu, lam = args
    rep = brauer_report(e, nu, lam)
    ok = module_compatible(e, nu, ModuleSpec([(lam, mult)])).ok
    assert ok == (mult % rep.schur_index == 0)


def test_identity_support_is_t():
    for e in ENTRIES_WITH_T:
        lam = next(fundamental(e.type, k) for k in range(1, 8) if center_class(e.type, fundamental(e.type, k)))
        rep = brauer_report(e, identity_nu(e), lam)
        assert rep.support.order() == e.T().order()
        assert math.isqrt(e.T().order()) == TORSION_PRIME[e.type]
        assert Subgroup(e.group, rep.support.generators).equals(e.T())
