"""Fine gradings of E6 and E7, graded Brauer invariants and graded-simple modules.

Each catalog entry keeps its universal group in two coordinate systems: the
factor coordinates of its name (``Z2^3xZ3^2`` has five factor coordinates in
that order) and the invariant-factor normal form used by the abelian module.
T and h are written in factor coordinates and mapped to normal form once.
A grading by G is given by a homomorphism nu from the universal group to G.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .abelian import AbHom, FGAbGroup, Subgroup, matvec, quotient, torsion_split
from .bichar import AltBichar, power
from .roots_weights import center_class, e6_diagram_involution, root_system, weyl_dim

SCHEMA_VERSION = 1
TORSION_PRIME = {"E6": 3, "E7": 2}


class InvariantsError(ValueError):
    pass


class ArityError(InvariantsError):
    """Weight length or homomorphism domain does not fit the entry."""


def _factor_orders(text: str) -> list[int]:
    return FGAbGroup.parse(text)[1]


@dataclass(frozen=True)
class FineGradingEntry:
    type: str
    name: str  # universal group as written, e.g. "Z2^3xZ3^2"
    kind: Optional[str]  # "inner" / "outer" for E6, None for E7
    factor_orders: tuple  # 0 for Z
    t_generators: tuple  # factor coordinates; empty means T trivial
    h: Optional[tuple]  # factor coordinates
    trivial_invariants: bool
    provenance: str
    h_is_convention: bool = False
    group: FGAbGroup = field(init=False)
    projection: tuple = field(init=False, repr=False)
    section: tuple = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.factor_orders)
        rels = [[d if i == j else 0 for i in range(n)] for j, d in enumerate(self.factor_orders) if d]
        g, proj, sec = FGAbGroup.with_section(n, rels)
        object.__setattr__(self, "group", g)
        object.__setattr__(self, "projection", tuple(map(tuple, proj)))
        object.__setattr__(self, "section", tuple(map(tuple, sec)))

    @property
    def id(self) -> str:
        if self.type == "E6" and self.name == "Z^2xZ2^3":
            return f"{self.name}-{self.kind}"
        return self.name

    def to_normal(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != len(self.factor_orders):
            raise ArityError(f"{self.id} has {len(self.factor_orders)} factor coordinates")
        return self.group.reduce(matvec([list(r) for r in self.projection], x))

    def T(self) -> Subgroup:
        return Subgroup(self.group, tuple(self.to_normal(t) for t in self.t_generators))

    def h_normal(self) -> Optional[tuple[int, ...]]:
        return None if self.h is None else self.to_normal(self.h)

    def has_T(self) -> bool:
        return bool(self.t_generators)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "type": self.type,
            "universal_group": self.name,
            "normal_form": self.group.label(),
            "kind": self.kind,
            "factor_orders": list(self.factor_orders),
            "T_generators": [list(t) for t in self.t_generators],
            "T_order": self.T().order() if self.has_T() else 1,
            "h": list(self.h) if self.h is not None else None,
            "h_is_convention": self.h_is_convention,
            "trivial_invariants": self.trivial_invariants,
            "provenance": self.provenance,
        }


def _unit(n: int, i: int, k: int = 1) -> tuple:
    return tuple(k if j == i else 0 for j in range(n))


def _make(t, name, kind, t_idx=(), h=None, trivial=False, prov="", t_scale=1, h_conv=False):
    orders = _factor_orders(name)
    n = len(orders)
    gens = tuple(_unit(n, i, t_scale) for i in t_idx)
    return FineGradingEntry(t, name, kind, tuple(orders), gens, h, trivial, prov, h_conv)


def _first_torsion(orders: Sequence[int], d: int) -> int:
    return next(i for i, x in enumerate(orders) if x == d)


def _e6_outer(name: str, prov: str) -> FineGradingEntry:
    orders = _factor_orders(name)
    n = len(orders)
    if 4 in orders:
        h = _unit(n, _first_torsion(orders, 4), 2)
    else:
        h = _unit(n, _first_torsion(orders, 2))
    # the choice is only a convention when more than one element has order 2
    conv = 2 ** sum(1 for d in orders if d and d % 2 == 0) - 1 > 1
    return FineGradingEntry("E6", name, "outer", tuple(orders), (), h, True, prov, conv)


def _build_catalog() -> dict:
    inner_prov = "E6 inner; invariant depends on m1-m2+m4-m5 mod 3"
    e6 = [
        _make("E6", "Z^6", "inner", trivial=True, prov="E6 inner Cartan grading; no 3-torsion"),
        _make("E6", "Z^2xZ3^2", "inner", t_idx=(2, 3), prov=inner_prov + "; T = 3-torsion"),
        _make("E6", "Z^2xZ2^3", "inner", trivial=True, prov="E6 inner; no 3-torsion"),
        _make(
            "E6",
            "Z3^4",
            "inner",
            t_idx=(0, 1),
            prov=inner_prov
            + "; T = leading Z3^2 factor, the one attached to the order-3 automorphisms Theta, vartheta"
            " (equivalently F1, F2 in the Albert-algebra model)",
        ),
        _make("E6", "Z2^3xZ3^2", "inner", t_idx=(3, 4), prov=inner_prov + "; T = 3-torsion"),
    ]
    outer_prov = "E6 outer; all invariants trivial; h generates the kernel of the inner coarsening"
    for name in ("Z^4xZ2", "Z^2xZ2^3", "ZxZ2^5", "ZxZ2^4", "Z2xZ3^3", "Z2^7", "Z2^6", "Z4^3", "Z4xZ2^4"):
        e6.append(_e6_outer(name, outer_prov))

    st_prov = "E7; invariant depends on m1+m3+m7 mod 2; T = Z2^2 factor of sigma, tau"
    e7 = [_make("E7", name, None, t_idx=(k, k + 1), prov=st_prov)
          for name, k in (("Z^4xZ2^2", 4), ("Z^2xZ2^4", 2), ("ZxZ2^5", 1), ("ZxZ2^6", 1),
                          ("Z2^7", 0), ("Z2^5xZ4", 0), ("Z2^8", 0))]
    for name in ("Z^7", "Z^3xZ2^3", "ZxZ3^3"):
        e7.append(_make("E7", name, None, trivial=True, prov="E7; all invariants trivial"))
    e7.append(_make("E7", "Z2^3xZ4^2", None, t_idx=(3, 4), t_scale=2,
                    prov="E7; T = 2-periodic elements of the Z4^2 factor"))
    e7.append(_make("E7", "ZxZ2xZ4^2", None, t_idx=(2, 3), t_scale=2,
                    prov="E7; T = 2-periodic elements of the Z4^2 factor"))
    e7.append(_make("E7", "Z2^2xZ3^3", None, t_idx=(0, 1), prov="E7; T = 2-torsion"))
    # h = (0 | 2,0,0) inside Z4^3, T = <Z2 factor, h>
    zz = FineGradingEntry("E7", "Z2xZ4^3", None, (2, 4, 4, 4), ((1, 0, 0, 0), (0, 2, 0, 0)), (0, 2, 0, 0),
                          False, "E7; T = <Z2 factor, distinguished h in Z4^3>", True)
    e7.append(zz)
    return {"E6": tuple(e6), "E7": tuple(e7)}


_CATALOG = _build_catalog()


def catalog(t: str) -> tuple[FineGradingEntry, ...]:
    if t not in _CATALOG:
        raise InvariantsError(f"no catalog for type {t!r}; expected E6 or E7")
    return _CATALOG[t]


def _normalize_id(text: str) -> tuple[tuple, Optional[str]]:
    kind = None
    base = text.strip()
    for k in ("inner", "outer"):
        if base.lower().endswith("-" + k):
            kind = k
            base = base[: -len(k) - 1]
    g, _ = FGAbGroup.parse(base)
    return (g.free_rank, g.invariant_factors), kind


def find_entry(t: str, entry_id: str) -> FineGradingEntry:
    key, kind = _normalize_id(entry_id)
    hits = [e for e in catalog(t) if (e.group.free_rank, e.group.invariant_factors) == key
            and (kind is None or e.kind == kind)]
    if not hits:
        raise InvariantsError(f"no {t} fine grading with universal group {entry_id!r}")
    if len(hits) > 1:
        raise InvariantsError(f"{entry_id!r} is ambiguous for {t}; add -inner or -outer")
    return hits[0]


# ------------------------------------------------------------------ nu
def identity_nu(entry: FineGradingEntry) -> AbHom:
    return AbHom.identity(entry.group)


def nu_from_factor_matrix(entry: FineGradingEntry, target: str, matrix: Sequence[Sequence[int]]) -> AbHom:
    """nu given by images of the factor generators, in the factor coordinates of ``target``.

    matrix[i][j] is coordinate i of the image of factor generator j.
    """
    tgt_orders = _factor_orders(target)
    n_t = len(tgt_orders)
    rels = [[d if i == j else 0 for i in range(n_t)] for j, d in enumerate(tgt_orders) if d]
    g, proj, _ = FGAbGroup.with_section(n_t, rels)
    m = [list(r) for r in matrix]
    if len(m) != n_t or any(len(r) != len(entry.factor_orders) for r in m):
        raise ArityError(
            f"nu matrix must be {n_t}x{len(entry.factor_orders)} for {entry.id} -> {target}"
        )
    # factor-coordinate images of the normal-form generators of G^u
    cols = []
    for j in range(entry.group.ngens):
        x = [entry.section[r][j] for r in range(len(entry.factor_orders))]
        img = matvec(m, x)
        cols.append(g.reduce(matvec(proj, img)) if g.ngens else ())
    mat = tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(g.ngens))
    return AbHom(entry.group, g, mat)


# ------------------------------------------------------------------ reports
@dataclass
class ModuleSpec:
    summands: list  # [(weight tuple, multiplicity)]

    def __post_init__(self):
        clean = []
        for w, k in self.summands:
            w = tuple(int(x) for x in w)
            if any(x < 0 for x in w):
                raise InvariantsError(f"weight {w} is not dominant")
            if int(k) < 1:
                raise InvariantsError(f"multiplicity of {w} must be positive")
            clean.append((w, int(k)))
        self.summands = clean

    def multiplicity(self, w) -> int:
        return sum(k for v, k in self.summands if v == tuple(w))

    @classmethod
    def from_json(cls, data) -> "ModuleSpec":
        items = data["summands"] if isinstance(data, dict) else data
        out = []
        for it in items:
            if isinstance(it, dict):
                out.append((it["weight"], it.get("multiplicity", 1)))
            else:
                out.append((it[0], it[1]))
        return cls(out)


@dataclass
class BrauerReport:
    entry: FineGradingEntry
    weight: tuple
    H_lambda: Subgroup
    quotient_group: FGAbGroup
    support: Subgroup  # inside quotient_group
    schur_index: int
    orbit: list
    graded_simple_dim: int
    weyl_dim: int
    center_class: int
    verdict_notes: list

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "entry": self.entry.id,
            "type": self.entry.type,
            "weight": list(self.weight),
            "H_lambda": self.H_lambda.to_json(),
            "quotient_group": self.quotient_group.label(),
            "support": self.support.to_json(),
            "support_order": self.support.order(),
            "schur_index": self.schur_index,
            "orbit": [list(w) for w in self.orbit],
            "weyl_dim": self.weyl_dim,
            "graded_simple_dim": self.graded_simple_dim,
            "center_class": self.center_class,
            "notes": list(self.verdict_notes),
        }


def _check_inputs(entry: FineGradingEntry, nu: AbHom, lam: Sequence[int]) -> tuple[int, ...]:
    rank = root_system(entry.type).rank
    if len(lam) != rank:
        raise ArityError(f"{entry.type} weights have {rank} coefficients, got {len(lam)}")
    if nu.domain != entry.group:
        raise ArityError(f"nu is defined on {nu.domain}, not on {entry.group}")
    return tuple(int(x) for x in lam)


def _order2_elements(g: FGAbGroup, coords: Sequence[int]) -> list[tuple]:
    """Elements of order 2 supported on the given normal-form coordinates."""
    out = []
    ranges = [range(g.moduli[i]) if i in coords and g.moduli[i] else [0] for i in range(g.ngens)]
    for x in itertools.product(*ranges):
        if any(x) and g.element_order(x) == 2:
            out.append(tuple(x))
    return out


def h_candidates(entry: FineGradingEntry) -> list[tuple]:
    """The order-2 elements the convention for h could have picked, in normal form."""
    g = entry.group
    if entry.type == "E7":
        # order-2 elements of the Z4^3 factor
        z4 = [i for i, d in enumerate(entry.factor_orders) if d == 4]
        out = []
        for bits in itertools.product((0, 2), repeat=len(z4)):
            if any(bits):
                x = [0] * len(entry.factor_orders)
                for i, b in zip(z4, bits):
                    x[i] = b
                out.append(entry.to_normal(x))
        return out
    torsion = [i for i, d in enumerate(g.moduli) if d]
    return _order2_elements(g, torsion)


def brauer_report(entry: FineGradingEntry, nu: AbHom, lam: Sequence[int]) -> BrauerReport:
    lam = _check_inputs(entry, nu, lam)
    g = nu.codomain
    notes = []
    cls = center_class(entry.type, lam)
    orbit = [lam]
    h_img = None
    if entry.type == "E6" and entry.kind == "outer":
        h_img = nu.apply(entry.h_normal())
        sig = e6_diagram_involution(lam)
        if sig != lam and any(h_img):
            orbit = [lam, sig]
        h_sub = Subgroup(g, (h_img,)) if sig != lam else Subgroup.trivial(g)
        if entry.h_is_convention:
            verdicts = {bool(any(nu.apply(c))) for c in h_candidates(entry)}
            if len(verdicts) > 1 and sig != lam:
                notes.append("h convention: whether nu kills h depends on the chosen order-2 element")
    else:
        h_sub = Subgroup.trivial(g)
    q, proj = quotient(g, h_sub)
    support = Subgroup.trivial(q)
    if entry.type == "E6" and entry.kind == "outer":
        notes.append("outer E6 grading: graded Brauer invariants are trivial")
    elif entry.trivial_invariants or not entry.has_T():
        notes.append("entry has trivial graded Brauer invariants")
    elif cls == 0:
        notes.append("lambda lies in the root lattice coset 0: invariant trivial")
    else:
        t_sub = entry.T()
        if nu.is_injective_on(t_sub):
            support = proj.image(nu.image(t_sub))
            notes.append("support is the image of T")
        else:
            notes.append("nu is not injective on T: invariant trivial")
        if entry.h_is_convention and entry.type == "E7":
            z2 = entry.to_normal(entry.t_generators[0])
            verdicts = {nu.is_injective_on(Subgroup(entry.group, (z2, c))) for c in h_candidates(entry)}
            if len(verdicts) > 1:
                notes.append("h convention: injectivity of nu on T depends on the chosen h")
    size = support.order()
    k = math.isqrt(size)
    if k * k != size:
        raise InvariantsError(f"support of order {size} is not a square")
    wd = weyl_dim(entry.type, lam)
    return BrauerReport(entry, lam, h_sub, q, support, k, orbit, len(orbit) * k * wd, wd, cls, notes)


@dataclass(frozen=True)
class Compatibility:
    ok: bool
    reasons: tuple

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "compatible": self.ok, "reasons": list(self.reasons)}


def module_compatible(entry: FineGradingEntry, nu: AbHom, module: ModuleSpec) -> Compatibility:
    rank = root_system(entry.type).rank
    for w, _ in module.summands:
        if len(w) != rank:
            raise ArityError(f"{entry.type} weights have {rank} coefficients, got {len(w)}")
    if nu.domain != entry.group:
        raise ArityError(f"nu is defined on {nu.domain}, not on {entry.group}")
    reasons = []
    if entry.type == "E6" and entry.kind == "outer":
        if not any(nu.apply(entry.h_normal())):
            return Compatibility(True, ("nu kills h: the induced grading is inner with trivial invariants",))
        for w, k in module.summands:
            s = e6_diagram_involution(w)
            if module.multiplicity(s) != module.multiplicity(w):
                reasons.append(f"V{list(w)} and V{list(s)} occur with multiplicities "
                               f"{module.multiplicity(w)} and {module.multiplicity(s)}")
        return Compatibility(not reasons, tuple(reasons) or ("multiplicities are diagram-symmetric",))
    if entry.trivial_invariants or not entry.has_T():
        return Compatibility(True, ("entry has trivial graded Brauer invariants",))
    if not nu.is_injective_on(entry.T()):
        return Compatibility(True, ("nu is not injective on T",))
    p = TORSION_PRIME[entry.type]
    seen = set()
    for w, _ in module.summands:
        if w in seen:
            continue
        seen.add(w)
        m = module.multiplicity(w)
        if center_class(entry.type, w) != 0 and m % p:
            reasons.append(f"V{list(w)} has multiplicity {m}, not divisible by {p}")
    return Compatibility(not reasons, tuple(reasons) or (f"all relevant multiplicities divisible by {p}",))


@dataclass
class GradedSimple:
    orbit: list
    schur_index: int
    summands: list  # [(weight, multiplicity)]
    total_dim: int

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "orbit": [list(w) for w in self.orbit],
            "schur_index": self.schur_index,
            "summands": [{"weight": list(w), "multiplicity": k} for w, k in self.summands],
            "total_dim": self.total_dim,
        }


def graded_simple_description(entry: FineGradingEntry, nu: AbHom, lam: Sequence[int]) -> GradedSimple:
    rep = brauer_report(entry, nu, lam)
    summands = [(w, rep.schur_index) for w in rep.orbit]
    total = sum(k * weyl_dim(entry.type, w) for w, k in summands)
    if total != rep.graded_simple_dim:
        raise AssertionError("summand dimensions disagree with the orbit formula")
    return GradedSimple(rep.orbit, rep.schur_index, summands, total)


# ------------------------------------------------------------------ structural cross-check
def model_bicharacter(entry: FineGradingEntry, lam: Sequence[int]) -> Optional[AltBichar]:
    """beta_lambda on T modelled as the c-th power of the standard nondegenerate form on Z_p^2.

    c is the center class of lambda; this routes the support through the
    bicharacter radical machinery instead of the closed-form decision.
    """
    if not entry.has_T() or entry.trivial_invariants:
        return None
    p = TORSION_PRIME[entry.type]
    base = AltBichar(FGAbGroup(0, (p, p)), ((0, 1), (p - 1, 0)))
    return power(base, center_class(entry.type, lam))


def p_torsion(entry: FineGradingEntry) -> Subgroup:
    return torsion_split(entry.group, TORSION_PRIME[entry.type])[0]


__all__ = [
    "ArityError",
    "BrauerReport",
    "Compatibility",
    "FineGradingEntry",
    "GradedSimple",
    "InvariantsError",
    "ModuleSpec",
    "SCHEMA_VERSION",
    "brauer_report",
    "catalog",
    "find_entry",
    "graded_simple_description",
    "h_candidates",
    "identity_nu",
    "model_bicharacter",
    "module_compatible",
    "nu_from_factor_matrix",
    "p_torsion",
]
