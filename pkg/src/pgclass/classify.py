"""Predicates on character-vanishing structure and the counting formulas.

The two routes to the central decision are kept fully independent and
compared: the character route (every irreducible character vanishes off
its center) and the character-free "flat" route (each conjugacy class is
as large as the subgroup generated by the commutators of its
representative).  The report construction aborts rather than emit a
disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .chartable import CharacterTable
from .errors import InternalInconsistencyError
from .group import Subgroup, group_of


# ---------------------------------------------------------------------------
# per-character predicates


def is_central_type(row, T: CharacterTable) -> bool:
    """chi vanishes off Z(chi); cross-checked against chi(1)^2 = |G:Z(chi)|."""
    vanishing = not bool((row.nonzero_mask & ~row.center_mask).any())
    zorder = T.center_order(row)
    index_route = row.degree * row.degree * zorder == T.group.order
    if vanishing != index_route:
        raise InternalInconsistencyError(
            f"central-type criteria disagree for a degree-{row.degree} row "
            f"(vanishing={vanishing}, index={index_route})"
        )
    return vanishing


def fully_ramified(row, N: Subgroup, T: CharacterTable) -> bool:
    """chi(g) = 0 for all g outside N."""
    nmask = _class_mask(N, T)
    return not bool((row.nonzero_mask & ~nmask).any())


def _class_mask(N: Subgroup, T: CharacterTable) -> np.ndarray:
    """Class mask of a normal subgroup; asserts it is a class union."""
    cls = T.classes
    mask = N.mask[cls.reps]
    assert int(cls.sizes[mask].sum()) == N.order, "subgroup is not a union of classes"
    return mask


# ---------------------------------------------------------------------------
# group-level predicates


def is_gvz(T: CharacterTable) -> bool:
    return all(is_central_type(r, T) for r in T.rows)


def is_flat(P) -> bool:
    """Character-free route: |cl(g)| = |<[g, x] : x in G>| for every g.

    The commutator set {[g, x] : x in G} equals g^-1 * cl(g), so each test
    compares a class size with a closure order.  A cheap generator-level
    subgroup is tried first and accepted only when it provably equals the
    full closure (it contains the entire commutator set)."""
    G = group_of(P)
    cls = G.conjugacy_classes
    inv = G.inverse_table
    for c in range(cls.count):
        size = int(cls.sizes[c])
        if size == 1:
            continue
        g = int(cls.reps[c])
        commset = G.lmul_array(cls.members[c].copy(), int(inv[g]))
        gen_comms = [G.comm(g, G.gen_index(t)) for t in range(G.n)]
        fast = G.subgroup_closure(gen_comms)
        if fast.size == size:
            member = np.zeros(G.order, dtype=bool)
            member[fast] = True
            if member[commset].all():
                continue
        full = G.subgroup_closure(commset)
        if full.size != size:
            return False
    return True


def is_nested(T: CharacterTable) -> bool:
    """The distinct centers Z(chi) form a chain under inclusion."""
    distinct = _distinct_center_masks(T)
    distinct.sort(key=lambda m: int(T.classes.sizes[m].sum()))
    for a, b in zip(distinct, distinct[1:]):
        if (a & ~b).any():
            return False
    return True


def _distinct_center_masks(T: CharacterTable) -> list[np.ndarray]:
    seen = {}
    for r in T.rows:
        m = r.center_mask
        seen.setdefault(m.tobytes(), m)
    return list(seen.values())


def is_vz(T: CharacterTable) -> tuple[bool, str | None]:
    """Every nonlinear character vanishes off Z(G); requires non-abelian.

    Returns (verdict, note); abelian groups get (False, explanation) so
    batch pipelines stay total."""
    G = T.group
    if G.is_abelian:
        return False, "abelian group: the VZ property is defined for non-abelian groups"
    zmask = _class_mask(G.center, T)
    for r in T.rows:
        if r.degree > 1 and bool((r.nonzero_mask & ~zmask).any()):
            return False, None
    return True, None


def is_camina_pair(P, N: Subgroup, T: CharacterTable) -> bool:
    """Every g outside N is conjugate to the whole coset gN; cross-checked
    against the character criterion (rows not trivial on N vanish off N)."""
    G = group_of(P)
    if not (1 < N.order < G.order):
        raise ValueError("Camina pair requires 1 < N < G")
    if not N.is_normal:
        raise ValueError("N must be normal")
    cls = T.classes
    nmask = _class_mask(N, T)
    conj_route = True
    for c in range(cls.count):
        if nmask[c]:
            continue
        g = int(cls.reps[c])
        coset = G.rmul_array(N.indices.copy(), g)
        if not (cls.classof[coset] == c).all():
            conj_route = False
            break
    char_route = True
    for r in T.rows:
        kermask = r.kernel_mask
        contains_n = bool(nmask[~kermask].sum() == 0)  # N inside ker(chi)?
        if not contains_n and bool((r.nonzero_mask & ~nmask).any()):
            char_route = False
            break
    if conj_route != char_route:
        raise InternalInconsistencyError(
            f"Camina-pair routes disagree (conjugation={conj_route}, character={char_route})"
        )
    return conj_route


def is_gen_camina_pair(P, N: Subgroup, T: CharacterTable) -> bool:
    """All nonlinear rows vanish off N (vacuously true for abelian groups)."""
    if not N.is_normal:
        raise ValueError("N must be normal")
    nmask = _class_mask(N, T)
    return all(
        not bool((r.nonzero_mask & ~nmask).any()) for r in T.rows if r.degree > 1
    )


# ---------------------------------------------------------------------------
# structural check suites


def check_special_degree(T: CharacterTable) -> list[int]:
    """Row indices violating: chi(1)^2 = |G:Z(G)| forces vanishing off Z(G)
    with Z(chi) = Z(G).  Must come back empty."""
    G = T.group
    zmask = _class_mask(G.center, T)
    zorder = G.center.order
    bad = []
    for i, r in enumerate(T.rows):
        if r.degree * r.degree * zorder != G.order:
            continue
        ok = is_central_type(r, T) and bool((r.center_mask == zmask).all())
        if not ok:
            bad.append(i)
    return bad


def check_lift_equivalence(P, N: Subgroup) -> list[int]:
    """Quotient rows whose lift disagrees on the central-type predicate.

    Each irreducible row of G/N lifts to the unique row of G with the same
    values through the projection; the two must be of central type
    together.  Returns quotient row indices that mismatch (must be empty).
    """
    from .chartable import table_of
    from .group import quotient

    G = group_of(P)
    Q = quotient(G, N)
    TG = table_of(G)
    TQ = table_of(Q.group)

    qcls = Q.group.conjugacy_classes
    lift_targets = {}
    nmask_parent = N.mask[TG.classes.reps]
    for gi, row in enumerate(TG.rows):
        kermask = row.kernel_mask
        if bool(nmask_parent[~kermask].sum() == 0):  # N inside the kernel
            key = tuple(
                row.value(int(TG.classes.classof[Q.section[qcls.reps[jq]]]))
                for jq in range(qcls.count)
            )
            assert key not in lift_targets, "two parent rows share lift values"
            lift_targets[key] = gi
    mismatches = []
    for qi, qrow in enumerate(TQ.rows):
        key = tuple(qrow.value(j) for j in range(qcls.count))
        gi = lift_targets.pop(key, None)
        assert gi is not None, "quotient row has no lift in the parent table"
        if is_central_type(qrow, TQ) != is_central_type(TG.rows[gi], TG):
            mismatches.append(qi)
    assert not lift_targets, "parent rows left unmatched by quotient rows"
    return mismatches


def check_nil_le_cd(P, T: CharacterTable) -> str:
    """'holds' / 'fails' for class(G) <= #cd(G); 'inapplicable' unless every
    row is of central type (the hypothesis of the bound)."""
    G = group_of(P)
    if not is_gvz(T):
        return "inapplicable"
    return "holds" if G.nilpotency_class <= len(T.cd_set()) else "fails"


@dataclass(frozen=True)
class PermDegree:
    """Minimal faithful permutation degree |G/Z|^(1/2) * |Z| as an exact
    p-exponent (a half-integer when |G/Z| is an odd power of p)."""

    p: int
    exponent: Fraction
    is_integral: bool
    value: int | None


def gvz_min_perm_degree(P, T: CharacterTable) -> PermDegree:
    from .group import abelian_invariants

    G = group_of(P)
    if not is_gvz(T):
        raise ValueError("the permutation-degree formula needs every row of central type")
    Z = G.center
    if len(abelian_invariants(Z)) > 1:
        raise ValueError("the permutation-degree formula needs a cyclic center")
    a = 0
    m = G.order // Z.order
    while m > 1:
        m //= G.p
        a += 1
    b = 0
    m = Z.order
    while m > 1:
        m //= G.p
        b += 1
    expo = Fraction(a, 2) + b
    integral = expo.denominator == 1
    return PermDegree(
        p=G.p,
        exponent=expo,
        is_integral=integral,
        value=G.p ** int(expo) if integral else None,
    )


# ---------------------------------------------------------------------------
# counting formulas


@dataclass(frozen=True)
class CountingResult:
    p: int
    order_exp: int
    gvz_count: int
    nested_count: int

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "order": f"p^{self.order_exp}",
            "gvz": self.gvz_count,
            "nested": self.nested_count,
        }


def counting_formulas(p: int, order_exp: int) -> CountingResult:
    """Isomorphism-type counts of GVZ / nested-GVZ groups of order p^5, p^6.

    Order p^6 requires p >= 5; order p^5 holds for every odd prime.
    """
    from .presentation import is_prime

    if not is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    if order_exp == 5:
        return CountingResult(p=p, order_exp=5, gvz_count=p + 31, nested_count=23)
    if order_exp == 6:
        if p < 5:
            raise ValueError("the order-p^6 counts require p >= 5")
        gvz2 = 3 * p * p + 28 * p + 315 + 2 * gcd(p - 1, 3) + 2 * gcd(p - 1, 4)
        nested2 = 3 * p * p + 10 * p + 187
        assert gvz2 % 2 == 0 and nested2 % 2 == 0, "count formulas must be even"
        return CountingResult(
            p=p, order_exp=6, gvz_count=gvz2 // 2, nested_count=nested2 // 2
        )
    raise ValueError("order exponent must be 5 or 6")


# ---------------------------------------------------------------------------
# the report


@dataclass(frozen=True)
class ClassificationReport:
    label: str
    order: int
    p: int
    nilpotency_class: int
    cd: dict[int, int]
    is_gvz: bool
    is_flat: bool
    is_nested: bool
    is_vz: bool
    vz_note: str | None
    camina_pair_with_center: bool
    gen_camina_pair_with_center: bool
    center_order: int
    center_chain: tuple[int, ...]
    center_chain_is_chain: bool
    per_character: tuple[tuple[int, int, bool], ...]

    def to_json(self) -> dict:
        out = {
            "group": self.label,
            "order": self.order,
            "p": self.p,
            "nilpotency_class": self.nilpotency_class,
            "cd": {str(d): m for d, m in self.cd.items()},
            "gvz": self.is_gvz,
            "flat": self.is_flat,
            "nested": self.is_nested,
            "vz": self.is_vz,
            "camina_pair_with_center": self.camina_pair_with_center,
            "gen_camina_pair_with_center": self.gen_camina_pair_with_center,
            "center_order": self.center_order,
            "center_chain": {
                "orders": list(self.center_chain),
                "is_chain": self.center_chain_is_chain,
            },
            "per_character": [
                {"degree": d, "center_order": z, "central_type": c}
                for d, z, c in self.per_character
            ],
        }
        if self.vz_note:
            out["vz_note"] = self.vz_note
        return out


def classification_report(P, *, table: CharacterTable | None = None) -> ClassificationReport:
    """Run every predicate and enforce the cross-route invariants."""
    G = group_of(P)
    if G.p == 2:
        raise ValueError("classification is defined for odd primes only")
    from .chartable import table_of

    T = table if table is not None else table_of(G)
    gvz = is_gvz(T)
    flat = is_flat(G)
    if gvz != flat:
        raise InternalInconsistencyError(
            f"character route (gvz={gvz}) and conjugation route (flat={flat}) disagree"
        )
    nested = is_nested(T)
    vz, vz_note = is_vz(T)
    Z = G.center
    camina = False
    if 1 < Z.order < G.order:
        camina = is_camina_pair(G, Z, T)
    gcamina = is_gen_camina_pair(G, Z, T)

    sizes = T.classes.sizes
    distinct = _distinct_center_masks(T)
    orders = sorted({int(sizes[m].sum()) for m in distinct})
    chain_flag = True
    masks_sorted = sorted(distinct, key=lambda m: int(sizes[m].sum()))
    for a, b in zip(masks_sorted, masks_sorted[1:]):
        if (a & ~b).any():
            chain_flag = False
            break

    per_char = tuple(
        (r.degree, T.center_order(r), is_central_type(r, T)) for r in T.rows
    )
    if vz and not (nested and gvz):
        raise InternalInconsistencyError("VZ verdict without nested GVZ structure")
    if nested and gvz and not flat:
        raise InternalInconsistencyError("nested GVZ verdict without flat structure")

    return ClassificationReport(
        label=G.pres.name,
        order=G.order,
        p=G.p,
        nilpotency_class=G.nilpotency_class,
        cd=T.cd_multiset(),
        is_gvz=gvz,
        is_flat=flat,
        is_nested=nested and gvz,
        is_vz=vz,
        vz_note=vz_note,
        camina_pair_with_center=camina,
        gen_camina_pair_with_center=gcamina,
        center_order=Z.order,
        center_chain=tuple(orders),
        center_chain_is_chain=chain_flag,
        per_character=per_char,
    )
