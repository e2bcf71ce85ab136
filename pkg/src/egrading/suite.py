"""Named verification claims behind ``egrading verify``.

Each claim returns (passed, details).  Suites run claims in order, stream a
progress line per claim to stderr and stop nothing early: every claim is
reported, and the first failure decides the exit status.
"""

from __future__ import annotations

import random
import sys
import time
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import abelian, e7_model, linalg, pauli
from .bichar import brauer_class, radical
from .cyclotomic import root_of_unity
from .invariants import (
    ModuleSpec,
    brauer_report,
    find_entry,
    identity_nu,
    module_compatible,
)
from .lie_core import (
    RankSamplingWarning,
    Subalg,
    fixed_subalgebra,
    is_automorphism,
    num_antisymmetry_pairs,
    num_jacobi_triples,
    reductive_rank,
    strongly_commute,
)
from .roots_weights import center_class, center_class_oracle, fundamental, root_system, weyl_dim

DEFAULT_SEED = 20240601


@dataclass
class Claim:
    name: str
    run: Callable[["Context"], tuple[bool, dict]]


@dataclass
class Context:
    seed: int = DEFAULT_SEED
    workers: int = 1


# ------------------------------------------------------------------ E7 claims
def _e7_construction(ctx):
    alg = e7_model.build_e7()
    anti = alg.check_antisymmetry()
    jac = alg.check_jacobi(workers=ctx.workers)
    return (alg.dim == 133 and e7_model.N_SL == 63 and e7_model.N_WEDGE == 70 and anti is None and jac is None), {
        "dim": alg.dim,
        "sl_block": e7_model.N_SL,
        "wedge_block": e7_model.N_WEDGE,
        "antisymmetry_pairs": num_antisymmetry_pairs(alg.dim),
        "antisymmetry_failure": anti,
        "jacobi_triples": num_jacobi_triples(alg.dim),
        "jacobi_failure": jac,
    }


def _sigma_tau(ctx):
    alg = e7_model.build_e7()
    s, t = e7_model.sigma(), e7_model.tau()
    vs, vt = is_automorphism(alg, s), is_automorphism(alg, t)
    orders = (s.multiplicative_order(), t.multiplicative_order())
    x = e7_model.wedge_index(["x1", "x2", "x3", "x4"])
    y = e7_model.wedge_index(["y1", "y2", "y3", "y4"])
    m = e7_model.sl_matrix(alg.table[x][y])
    half = [[Fraction(1 if i < 4 else -1, 2) if i == j else 0 for j in range(8)] for i in range(8)]
    bracket_ok = all(m[i][j] == half[i][j] for i in range(8) for j in range(8))
    ok = bool(vs) and bool(vt) and orders == (2, 2) and s.commutes_with(t) and bracket_ok
    return ok, {
        "sigma_automorphism": vs.ok,
        "tau_automorphism": vt.ok,
        "orders": list(orders),
        "commute": s.commutes_with(t),
        "x1234_y1234_bracket_is_half_diag": bracket_ok,
    }


def _z22(ctx):
    comps = e7_model.z22_components()
    dims = [comps[sg].dim for sg in e7_model.SIGNS]
    bad = e7_model.check_component_brackets(comps)
    w = {"C4 2pi1": weyl_dim("C4", (2, 0, 0, 0)), "C4 pi2": weyl_dim("C4", (0, 1, 0, 0)),
         "C4 pi4": weyl_dim("C4", (0, 0, 0, 1))}
    ok = dims == [36, 27, 43, 27] and not bad and dims[0] == w["C4 2pi1"] and dims[1] == w["C4 pi2"] \
        and dims[2] == w["C4 pi4"] + 1 and dims[3] == w["C4 pi2"]
    return ok, {"dims": dims, "weyl_cross_check": w, "bad_containments": [list(map(list, b)) for b in bad]}


def _nontoral(ctx):
    alg = e7_model.build_e7()
    s, t = e7_model.sigma(), e7_model.tau()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RankSamplingWarning)
        r_l = reductive_rank(Subalg.whole(alg), seed=ctx.seed)
        fix = fixed_subalgebra(alg, [s, t])
        r_f = reductive_rank(fix, seed=ctx.seed)
    sc = strongly_commute(alg, s, t)
    ok = r_l == 7 and r_f == 4 and fix.dim == 36 and sc is False and not caught
    return ok, {"rank_L": r_l, "rank_fix": r_f, "fix_dim": fix.dim, "strongly_commute": sc,
                "sampling_warnings": len(caught)}


def _quasitorus(ctx):
    q = e7_model.z42_quasitorus()
    expected = [[True] * 5 for _ in range(5)]
    expected[0][1] = expected[1][0] = False
    ok = q.table == expected and all(all(r) for r in q.square_table) \
        and q.group_order == 128 and q.generator_orders == [4, 4, 2, 2, 2]
    return ok, {"generators": q.names, "table": q.table, "squares": q.square_names,
                "square_table": q.square_table, "group_order_mod_iI": q.group_order,
                "generator_orders_mod_iI": q.generator_orders}


def _tau_shadow(ctx):
    alg = e7_model.build_e7()
    t = e7_model.tau()
    c = e7_model.contractions()
    kernel = c.partial_kernel()
    fixed = all(linalg.equal(t.apply(v), v) for v in kernel)
    bt_formula = linalg.equal(c.b_tilde, e7_model.b_tilde_formula())
    bt_fixed = linalg.equal(t.apply(c.b_tilde), c.b_tilde)
    minus = [v for v in e7_model.z22_components()[(-1, -1)].basis]
    sp = e7_model.sp_component_basis()
    kills = all(not alg.bracket(b, c.b_tilde) for b in sp)
    ok = len(kernel) == 42 and fixed and bt_formula and bt_fixed and len(minus) == 27 and kills and len(sp) == 36
    return ok, {"ker_c_dim": len(kernel), "tau_fixes_ker_c": fixed, "b_tilde_matches_formula": bt_formula,
                "tau_fixes_b_tilde": bt_fixed, "tau_minus_on_wedges_dim": len(minus),
                "sp_dim": len(sp), "sp_kills_b_tilde": kills}


# ------------------------------------------------------------------ other layers
def _pauli(ctx):
    details = {}
    ok = True
    for ell in pauli.SUPPORTED_SIZES:
        table = pauli.commutation_table(ell)
        closed = all(e == pauli.closed_form_exponent(ell, g, h) for (g, h), e in table.items())
        eps = root_of_unity(ell)
        alg = pauli.pauli_grading(ell)
        cocycle = True
        for (i, j), a in alg.degree_map.items():
            for (i2, j2), b in alg.degree_map.items():
                lhs = pauli.mat_mul(a, b)
                rhs = pauli.scale(eps ** ((-i2 * j) % ell), alg.component(i + i2, j + j2))
                cocycle &= lhs == rhs
        beta = pauli.commutation_bicharacter(ell)
        deg = brauer_class(beta).degree
        rad = radical(beta).is_trivial()
        details[str(ell)] = {"closed_form": closed, "cocycle": cocycle, "radical_trivial": rad, "degree": deg}
        ok &= closed and cocycle and rad and deg == ell
    return ok, details


def _congruences(ctx):
    rng = random.Random(ctx.seed)
    expected = {"E6": [1, 2, 0, 1, 2, 0], "E7": [1, 0, 1, 0, 0, 0, 1]}
    fund = {t: [center_class(t, fundamental(t, k)) for k in range(1, root_system(t).rank + 1)] for t in expected}
    agree = True
    for _ in range(200):
        t = rng.choice(("E6", "E7"))
        lam = [rng.randint(0, 6) for _ in range(root_system(t).rank)]
        agree &= center_class(t, lam) == center_class_oracle(t, lam)
    dims = {"E6 pi1": weyl_dim("E6", fundamental("E6", 1)), "E7 pi1": weyl_dim("E7", fundamental("E7", 1))}
    ok = fund == expected and agree and dims == {"E6 pi1": 27, "E7 pi1": 56}
    return ok, {"fundamental_classes": fund, "oracle_agrees_on_200": agree, "weyl_dims": dims}


def _decisions(ctx):
    def rep(t, eid, k):
        e = find_entry(t, eid)
        return brauer_report(e, identity_nu(e), fundamental(t, k))

    a = rep("E7", "Z2^8", 1)
    b = rep("E6", "Z3^4", 1)
    c = rep("E6", "Z3^4", 3)
    d = rep("E6", "Z2xZ3^3", 1)
    e7 = find_entry("E7", "Z2^8")
    e6 = find_entry("E6", "Z3^4")
    flips = [
        not module_compatible(e7, identity_nu(e7), ModuleSpec([(fundamental("E7", 1), 1)])).ok,
        module_compatible(e7, identity_nu(e7), ModuleSpec([(fundamental("E7", 1), 2)])).ok,
        not module_compatible(e6, identity_nu(e6), ModuleSpec([(fundamental("E6", 1), 2)])).ok,
        module_compatible(e6, identity_nu(e6), ModuleSpec([(fundamental("E6", 1), 3)])).ok,
    ]
    ok = (a.schur_index, a.graded_simple_dim) == (2, 112) and (b.schur_index, b.graded_simple_dim) == (3, 81) \
        and c.schur_index == 1 and d.support.is_trivial() and d.orbit == [fundamental("E6", 1), fundamental("E6", 5)] \
        and d.graded_simple_dim == 54 and all(flips)
    return ok, {
        "E7 Z2^8 pi1": [a.schur_index, a.graded_simple_dim],
        "E6 Z3^4 pi1": [b.schur_index, b.graded_simple_dim],
        "E6 Z3^4 pi3": [c.schur_index, c.graded_simple_dim],
        "E6 Z2xZ3^3 pi1": {"orbit": [list(w) for w in d.orbit], "dim": d.graded_simple_dim},
        "compatibility_thresholds": flips,
    }


def _groups(ctx):
    rng = random.Random(ctx.seed)
    snf_ok = True
    for _ in range(1000):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        a = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        u, s, v = abelian.smith_normal_form(a)
        snf_ok &= abelian.matmul(abelian.matmul(u, a), v) == s and abs(abelian.det(u)) == 1 \
            and abs(abelian.det(v)) == 1
    perp_ok = True
    for orders in ((2, 2), (4,), (2, 4), (3, 3), (2, 6)):
        g = abelian.FGAbGroup(0, orders)
        subs = {frozenset(abelian.Subgroup(g, (x,)).elements()) for x in g.elements()}
        subs |= {frozenset(abelian.Subgroup(g, (x, y)).elements()) for x in g.elements() for y in g.elements()}
        for els in subs:
            s = abelian.Subgroup(g, tuple(els))
            p = abelian.perp(g, s)
            perp_ok &= s.order() * p.order() == g.order() and abelian.perp(g, p).equals(s)
    split_ok = True
    for orders in ((2, 6), (6, 12), (3, 3, 9)):
        g = abelian.FGAbGroup(0, orders)
        for p in (2, 3):
            a, b = abelian.torsion_split(g, p)
            split_ok &= a.order() * b.order() == g.order()
    return snf_ok and perp_ok and split_ok, {"snf_1000": snf_ok, "perp_involution": perp_ok, "torsion_split": split_ok}


E7_CLAIMS = [
    Claim("e7.construction: dim 133, antisymmetry and Jacobi exact", _e7_construction),
    Claim("e7.sigma_tau: order-2 commuting automorphisms; [x1234, y1234] = diag/2", _sigma_tau),
    Claim("e7.z2sq_grading: dims (36, 27, 43, 27) with Weyl cross-check and closed brackets", _z22),
    Claim("e7.nontoral: ranks 7 and 4, sigma and tau do not strongly commute", _nontoral),
    Claim("e7.quasitorus: strong-commutation table of the Z4^2 x Z2^3 generators", _quasitorus),
    Claim("e7.tau_on_wedges: ker c fixed, b~ fixed, 27-dim (-1)-part, sp kills b~", _tau_shadow),
]

OTHER_CLAIMS = [
    Claim("pauli: commutation, cocycle, radical and degree for l = 2, 3, 4", _pauli),
    Claim("weights: center classes, lattice oracle, minimal dimensions", _congruences),
    Claim("invariants: worked Brauer reports and compatibility thresholds", _decisions),
    Claim("groups: Smith normal form, perp involution, torsion split", _groups),
]

SUITES = {"e7-model": E7_CLAIMS, "all": E7_CLAIMS + OTHER_CLAIMS}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def run_suite(name: str, ctx: Context, stream=sys.stderr) -> tuple[bool, list[dict]]:
    results = []
    for claim in SUITES[name]:
        t0 = time.perf_counter()
        try:
            ok, details = claim.run(ctx)
        except Exception as exc:  # a crash is a failed claim, reported like any other
            ok, details = False, {"error": f"{type(exc).__name__}: {exc}"}
        dt = time.perf_counter() - t0
        print(f"[{'PASS' if ok else 'FAIL'}] {claim.name} ({dt:.1f}s)", file=stream, flush=True)
        results.append({"claim": claim.name, "passed": bool(ok), "details": _jsonable(details)})
    return all(r["passed"] for r in results), results
