"""Structural computations on a presented p-group.

A Group wraps a consistent PcPresentation and provides table-driven
arithmetic: elements are integers in [0, p^n) encoding exponent vectors in
lexicographic order (generator 0 most significant).  Right-multiplication
permutation tables are built by downward induction over the generators,
exploiting the index-increasing relation shape: the suffix subgroups
H_t = <g_t, ..., g_n> form a central chain, so

    x * g_t = (prefix(x) * g_t) * (g_t^-1 suffix(x) g_t)

splits into a digit increment (with a power-relation carry) and a
conjugation that stays inside H_{t+1}.  Everything downstream (conjugacy
classes, centralizers, subgroup closures, quotients) is numpy permutation
work on these tables.  The collector in presentation.py is the independent
reference; the test suite cross-checks the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import PgclassError
from .presentation import (
    Element,
    PcPresentation,
    Word,
    check_consistency,
    collector,
)

_MAX_ORDER = 2_000_000  # desk-scale guard


class InconsistentPresentationError(PgclassError, ValueError):
    pass


class Group:
    """A finite p-group realized from a consistent pc presentation."""

    def __init__(self, P: PcPresentation, *, check: bool = True):
        if P.order > _MAX_ORDER:
            raise ValueError(f"group order {P.order} exceeds the desk-scale limit")
        if check:
            rep = check_consistency(P)
            if not rep.consistent:
                raise InconsistentPresentationError(
                    f"presentation {P.name!r} is inconsistent: "
                    f"{rep.failures[0][0]} collects two ways"
                )
        self.pres = P
        self.p = P.p
        self.n = P.n
        self.order = P.order
        self._weights = [P.p ** (P.n - 1 - i) for i in range(P.n)]

    # -- element <-> index --------------------------------------------------

    def index_of(self, a: Element) -> int:
        return sum(e * w for e, w in zip(a.exps, self._weights))

    def element_of(self, idx: int) -> Element:
        exps = []
        for w in self._weights:
            exps.append(int(idx) // w % self.p)
        return Element(tuple(exps))

    def gen_index(self, i: int) -> int:
        return self._weights[i]

    @cached_property
    def digit_arrays(self) -> list[np.ndarray]:
        x = np.arange(self.order, dtype=np.int64)
        return [(x // w) % self.p for w in self._weights]

    # -- multiplication tables ----------------------------------------------

    @cached_property
    def right_tables(self) -> list[np.ndarray]:
        """right_tables[t][x] = index of x * g_t."""
        p, n, order = self.p, self.n, self.order
        P = self.pres
        tables: list[np.ndarray | None] = [None] * n
        inv_tables: dict[int, np.ndarray] = {}

        def rinv(t: int) -> np.ndarray:
            iv = inv_tables.get(t)
            if iv is None:
                iv = np.empty(order, dtype=np.int64)
                iv[tables[t]] = np.arange(order, dtype=np.int64)
                inv_tables[t] = iv
            return iv

        def word_eval(start: int, word: Word) -> int:
            idx = start
            for g, e in word:
                if e > 0:
                    tab = tables[g]
                    for _ in range(e):
                        idx = int(tab[idx])
                else:
                    iv = rinv(g)
                    for _ in range(-e):
                        idx = int(iv[idx])
            return idx

        def apply_element(arr: np.ndarray, elem: int) -> np.ndarray:
            # right-multiply every entry by the fixed element
            for j in range(n):
                d = elem // self._weights[j] % p
                tab = tables[j]
                for _ in range(d):
                    arr = tab[arr]
            return arr

        for t in range(n - 1, -1, -1):
            m = p ** (n - 1 - t)
            if m == 1:
                conjsuffix = np.zeros(1, dtype=np.int64)
                w_idx = 0
                assert not P.power_rels[t]
            else:
                conjsuffix = np.zeros(1, dtype=np.int64)
                for j in range(t + 1, n):
                    phi = word_eval(self._weights[j], P.comm_rel(j, t))
                    blocks = [conjsuffix]
                    cur = conjsuffix
                    for _ in range(1, p):
                        cur = apply_element(cur, phi)
                        blocks.append(cur)
                    conjsuffix = np.stack(blocks, axis=1).reshape(-1)
                w_idx = word_eval(0, P.power_rels[t])
            if w_idx:
                hm = np.array([w_idx], dtype=np.int64)
                for j in range(t + 1, n):
                    tab = tables[j]
                    blocks = [hm]
                    cur = hm
                    for _ in range(1, p):
                        cur = tab[cur]
                        blocks.append(cur)
                    hm = np.stack(blocks, axis=1).reshape(-1)
            else:
                hm = None

            x = np.arange(order, dtype=np.int64)
            A = x // m
            Bc = conjsuffix[x - A * m]
            carry = (A % p) == (p - 1)
            res = np.where(
                carry,
                (A - (p - 1)) * m + (hm[Bc] if hm is not None else Bc),
                (A + 1) * m + Bc,
            )
            tables[t] = res
        return tables  # type: ignore[return-value]

    @cached_property
    def left_tables(self) -> list[np.ndarray]:
        """left_tables[t][x] = index of g_t * x."""
        p, n = self.p, self.n
        out = []
        for t in range(n):
            arr = np.array([self._weights[t]], dtype=np.int64)
            for j in range(n):
                tab = self.right_tables[j]
                blocks = [arr]
                cur = arr
                for _ in range(1, p):
                    cur = tab[cur]
                    blocks.append(cur)
                arr = np.stack(blocks, axis=1).reshape(-1)
            out.append(arr)
        return out

    @cached_property
    def inverse_table(self) -> np.ndarray:
        """inverse_table[x] = index of x^-1."""
        p, n, order = self.p, self.n, self.order
        inv = np.zeros(order, dtype=np.int64)
        for j in range(n - 1, -1, -1):
            iv = np.empty(order, dtype=np.int64)
            iv[self.right_tables[j]] = np.arange(order, dtype=np.int64)
            stack = [inv]
            cur = inv
            for _ in range(1, p):
                cur = iv[cur]
                stack.append(cur)
            S = np.stack(stack, axis=0)
            inv = S[self.digit_arrays[j], np.arange(order)]
        return inv

    @cached_property
    def conj_tables(self) -> list[np.ndarray]:
        """conj_tables[t][x] = index of g_t^-1 x g_t."""
        order = self.order
        out = []
        for t in range(self.n):
            linv = np.empty(order, dtype=np.int64)
            linv[self.left_tables[t]] = np.arange(order, dtype=np.int64)
            out.append(linv[self.right_tables[t]])
        return out

    # -- scalar and array arithmetic on indices -------------------------------

    def mul(self, a: int, b: int) -> int:
        x = int(a)
        for j in range(self.n):
            d = int(b) // self._weights[j] % self.p
            tab = self.right_tables[j]
            for _ in range(d):
                x = int(tab[x])
        return x

    def inv(self, a: int) -> int:
        return int(self.inverse_table[a])

    def conj(self, x: int, g: int) -> int:
        return self.mul(self.mul(self.inv(g), x), g)

    def comm(self, a: int, b: int) -> int:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def pow(self, a: int, m: int) -> int:
        if m < 0:
            return self.pow(self.inv(a), -m)
        result, base = 0, int(a)
        while m:
            if m & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            m >>= 1
        return result

    def element_order(self, a: int) -> int:
        o, x = 1, int(a)
        while x:
            x = self.pow(x, self.p)
            o *= self.p
        return o

    def rmul_array(self, arr: np.ndarray, b: int) -> np.ndarray:
        """Right-multiply an index array by the fixed element b."""
        for j in range(self.n):
            d = int(b) // self._weights[j] % self.p
            tab = self.right_tables[j]
            for _ in range(d):
                arr = tab[arr]
        return arr

    def lmul_array(self, arr: np.ndarray, a: int) -> np.ndarray:
        """Left-multiply an index array by the fixed element a."""
        for j in range(self.n - 1, -1, -1):
            d = int(a) // self._weights[j] % self.p
            tab = self.left_tables[j]
            for _ in range(d):
                arr = tab[arr]
        return arr

    def pairwise_mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Elementwise products A[i] * B[i]."""
        out = A.copy()
        p = self.p
        for j in range(self.n):
            dig = (B // self._weights[j]) % p
            cur = out.copy()
            for k in range(1, p):
                cur = self.right_tables[j][cur]
                sel = dig == k
                out[sel] = cur[sel]
        return out

    def rmul_perm(self, b: int) -> np.ndarray:
        return self.rmul_array(np.arange(self.order, dtype=np.int64), b)

    def lmul_perm(self, a: int) -> np.ndarray:
        return self.lmul_array(np.arange(self.order, dtype=np.int64), a)

    # -- structure ------------------------------------------------------------

    @cached_property
    def is_abelian(self) -> bool:
        return all(
            self.comm(self._weights[i], self._weights[j]) == 0
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    @cached_property
    def center_mask(self) -> np.ndarray:
        x = np.arange(self.order, dtype=np.int64)
        mask = np.ones(self.order, dtype=bool)
        for t in range(self.n):
            mask &= self.conj_tables[t] == x
        return mask

    @cached_property
    def conjugacy_classes(self) -> "ConjugacyClassSet":
        order = self.order
        seen = np.zeros(order, dtype=bool)
        classof = np.empty(order, dtype=np.int64)
        reps: list[int] = []
        members: list[np.ndarray] = []
        conj = self.conj_tables
        central = self.center_mask
        for x in range(order):
            if seen[x]:
                continue
            cid = len(reps)
            if central[x]:
                seen[x] = True
                classof[x] = cid
                reps.append(x)
                members.append(np.array([x], dtype=np.int64))
                continue
            collected = [np.array([x], dtype=np.int64)]
            seen[x] = True
            frontier = collected[0]
            while frontier.size:
                imgs = np.unique(np.concatenate([c[frontier] for c in conj]))
                imgs = imgs[~seen[imgs]]
                seen[imgs] = True
                if imgs.size:
                    collected.append(imgs)
                frontier = imgs
            cls = np.sort(np.concatenate(collected))
            classof[cls] = cid
            reps.append(x)
            members.append(cls)
        sizes = np.array([c.size for c in members], dtype=np.int64)
        return ConjugacyClassSet(
            group=self,
            reps=np.array(reps, dtype=np.int64),
            sizes=sizes,
            members=members,
            classof=classof,
        )

    def subgroup_closure(self, gen_idxs, *, initial: np.ndarray | None = None) -> np.ndarray:
        member = np.zeros(self.order, dtype=bool)
        member[0] = True
        if initial is not None:
            member[initial] = True
        gens = sorted({int(g) for g in gen_idxs} - {0})
        frontier = np.flatnonzero(member)
        while frontier.size and gens:
            imgs = np.unique(np.concatenate([self.rmul_array(frontier, g) for g in gens]))
            imgs = imgs[~member[imgs]]
            member[imgs] = True
            frontier = imgs
        return np.flatnonzero(member)

    def normal_closure(self, seed_idxs) -> np.ndarray:
        current = self.subgroup_closure(seed_idxs)
        while True:
            imgs = np.unique(np.concatenate([tab[current] for tab in self.conj_tables]))
            member = np.zeros(self.order, dtype=bool)
            member[current] = True
            new = imgs[~member[imgs]]
            if not new.size:
                return current
            current = self.subgroup_closure(new, initial=current)

    @cached_property
    def center(self) -> "Subgroup":
        idxs = np.flatnonzero(self.center_mask)
        return Subgroup(group=self, indices=idxs, gens=_chain_gens(self, idxs))

    @cached_property
    def derived(self) -> "Subgroup":
        seeds = [
            self.comm(self._weights[i], self._weights[j])
            for i in range(self.n)
            for j in range(i + 1, self.n)
        ]
        idxs = self.normal_closure(seeds)
        return Subgroup(group=self, indices=idxs, gens=_chain_gens(self, idxs))

    @cached_property
    def lower_central_series(self) -> list[np.ndarray]:
        """Index sets of G = gamma_1 > gamma_2 > ... down to the trivial term."""
        series = [np.arange(self.order, dtype=np.int64)]
        current = self.derived.indices
        series.append(current)
        while current.size > 1:
            seeds = []
            inv = self.inverse_table
            for t in range(self.n):
                seeds.append(self.pairwise_mul(inv[current], self.conj_tables[t][current]))
            nxt = self.normal_closure(np.unique(np.concatenate(seeds)))
            assert nxt.size < current.size, "lower central series stalled"
            series.append(nxt)
            current = nxt
        return series

    @cached_property
    def nilpotency_class(self) -> int:
        return len(self.lower_central_series) - 1

    @cached_property
    def exponent(self) -> int:
        reps = self.conjugacy_classes.reps
        return max(self.element_order(int(r)) for r in reps)

    def centralizer_indices(self, g: int) -> np.ndarray:
        if g == 0:
            return np.arange(self.order, dtype=np.int64)
        return np.flatnonzero(self.rmul_perm(g) == self.lmul_perm(g))

    def elements(self) -> list[Element]:
        return [self.element_of(i) for i in range(self.order)]


def _chain_gens(G: Group, idxs: np.ndarray) -> tuple[int, ...]:
    """A generating list of chain-jump elements for a subgroup index set."""
    p, n = G.p, G.n
    idxs = np.sort(idxs)
    gens = []
    for i in range(n):
        hi = int(np.searchsorted(idxs, p ** (n - i), side="left"))
        lo = int(np.searchsorted(idxs, p ** (n - i - 1), side="left"))
        if hi > lo:
            gens.append(int(idxs[lo]))
    return tuple(gens)


# ---------------------------------------------------------------------------
# public structure types


@dataclass(frozen=True)
class Subgroup:
    """A subgroup stored as its sorted element index set."""

    group: Group
    indices: np.ndarray
    gens: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return int(self.indices.size)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.group.order, dtype=bool)
        m[self.indices] = True
        return m

    def contains(self, idx: int) -> bool:
        return bool(self.mask[idx])

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return bool(self.mask[other.indices].all())

    @cached_property
    def is_normal(self) -> bool:
        return all(bool(self.mask[tab[self.indices]].all()) for tab in self.group.conj_tables)

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.gens or _chain_gens(self.group, self.indices)
        return all(
            self.group.comm(a, b) == 0 for ai, a in enumerate(gens) for b in gens[ai + 1:]
        )

    def elements(self) -> list[Element]:
        return [self.group.element_of(int(i)) for i in self.indices]

    def to_json(self) -> list[list[int]]:
        return [list(self.group.element_of(int(i)).exps) for i in self.indices]

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group is other.group
            and self.indices.size == other.indices.size
            and bool((self.indices == other.indices).all())
        )

    def __hash__(self):
        return hash((id(self.group), self.indices.size, int(self.indices.sum())))


@dataclass(frozen=True)
class ConjugacyClassSet:
    """Canonically ordered conjugacy classes: identity first, then by the
    lexicographically smallest member, which is also the representative."""

    group: Group
    reps: np.ndarray
    sizes: np.ndarray
    members: list[np.ndarray]
    classof: np.ndarray

    @property
    def count(self) -> int:
        return int(self.reps.size)

    def class_of(self, idx: int) -> int:
        return int(self.classof[idx])

    def centralizer_order(self, class_index: int) -> int:
        return self.group.order // int(self.sizes[class_index])


@dataclass(frozen=True)
class QuotientGroup:
    """G/N together with the projection map."""

    parent: Group
    group: Group
    presentation: PcPresentation
    proj: np.ndarray          # parent index -> quotient index
    section: np.ndarray       # quotient index -> a parent preimage

    def project_element(self, a: Element) -> Element:
        return self.group.element_of(int(self.proj[self.parent.index_of(a)]))


@dataclass(frozen=True)
class SubgroupGroup:
    """A subgroup re-presented as a pc group of its own."""

    parent: Group
    group: Group
    presentation: PcPresentation
    to_parent: np.ndarray     # subgroup index -> parent index
    from_parent: dict = field(repr=False)

    def parent_index(self, sub_idx: int) -> int:
        return int(self.to_parent[sub_idx])


# ---------------------------------------------------------------------------
# quotients and subgroup presentations


def _peel_digits(
    G: Group,
    xs: np.ndarray,
    jumps: list[int],
    jump_gens: list[int],
    in_next: "callable",
) -> np.ndarray:
    """Chain normal-form digits of each x: x = prod_a gen_a^{e_a} modulo the
    peeled-off tail; in_next(level, ys) tests membership after level a."""
    p = G.p
    count = xs.size
    digits = np.zeros((count, len(jumps)), dtype=np.int64)
    ys = xs.astype(np.int64).copy()
    for a, _ in enumerate(jumps):
        ginv = G.inv(jump_gens[a])
        found = np.zeros(count, dtype=bool)
        for k in range(p):
            ok = (~found) & in_next(a, ys)
            digits[ok, a] = k
            found |= ok
            if k < p - 1 and not found.all():
                ys[~found] = G.lmul_array(ys[~found], ginv)
        if not found.all():
            raise AssertionError("chain digit extraction failed")
    return digits


def quotient(P, N: Subgroup) -> QuotientGroup:
    """Quotient presentation adapted to N plus the projection map.

    The canonical coset representative is the lexicographically smallest
    member of Nx; membership in N*H_{i+1} is then just a bound test on it.
    """
    G = group_of(P)
    if N.group is not G:
        raise ValueError("subgroup belongs to a different group")
    if not N.is_normal:
        raise ValueError("subgroup is not normal")
    if N.order == G.order:
        raise ValueError("quotient by the whole group is not supported")
    p, n = G.p, G.n

    rep = np.arange(G.order, dtype=np.int64)
    for h in N.indices:
        if h:
            rep = np.minimum(rep, G.lmul_perm(int(h)))

    jumps = [i for i in range(n) if rep[G.gen_index(i)] >= p ** (n - 1 - i)]
    jump_gens = [G.gen_index(i) for i in jumps]
    m = len(jumps)
    assert p**m * N.order == G.order, "chain jumps inconsistent with |N|"

    bounds = [p ** (n - 1 - i) for i in jumps]

    def in_next(a: int, ys: np.ndarray) -> np.ndarray:
        return rep[ys] < bounds[a]

    def word_from(y: int, start: int) -> Word:
        digs = _peel_digits(G, np.array([y]), jumps, jump_gens, in_next)[0]
        assert not digs[:start].any(), "relation word escapes its chain level"
        return tuple((a, int(e)) for a, e in enumerate(digs) if e and a >= start)

    power_rels = []
    comm_rels = []
    for a, i in enumerate(jumps):
        power_rels.append(word_from(G.pow(jump_gens[a], p), a + 1))
        for b in range(a + 1, m):
            w = word_from(G.comm(jump_gens[b], jump_gens[a]), b + 1)
            if w:
                comm_rels.append(((b, a), w))
    Q = PcPresentation(
        name=f"{G.pres.name}/N{N.order}",
        p=p,
        gens=tuple(G.pres.gens[i] for i in jumps),
        power_rels=tuple(power_rels),
        comm_rels=tuple(sorted(comm_rels)),
    )
    Qgrp = Group(Q, check=True)

    uniq, inverse = np.unique(rep, return_inverse=True)
    digs = _peel_digits(G, uniq, jumps, jump_gens, in_next)
    qweights = np.array([p ** (m - 1 - a) for a in range(m)], dtype=np.int64)
    qidx = digs @ qweights
    assert np.unique(qidx).size == Qgrp.order == uniq.size
    proj = qidx[inverse]
    section = np.empty(Qgrp.order, dtype=np.int64)
    section[qidx] = uniq
    return QuotientGroup(parent=G, group=Qgrp, presentation=Q, proj=proj, section=section)


def subgroup_as_group(H: Subgroup) -> SubgroupGroup:
    """Re-present a subgroup on its own chain-adapted pc generators."""
    G = H.group
    p, n = G.p, G.n
    idxs = np.sort(H.indices)
    jumps = []
    jump_gens = []
    for i in range(n):
        lo = int(np.searchsorted(idxs, p ** (n - 1 - i), side="left"))
        hi = int(np.searchsorted(idxs, p ** (n - i), side="left"))
        if hi > lo:
            jumps.append(i)
            jump_gens.append(int(idxs[lo]))
    m = len(jumps)
    assert p**m == H.order, "subgroup chain has a non-prime step"

    mask = H.mask

    def in_next(a: int, ys: np.ndarray) -> np.ndarray:
        bound = p ** (n - 1 - jumps[a])
        return mask[ys] & (ys < bound)

    def word_from(y: int, start: int) -> Word:
        digs = _peel_digits(G, np.array([y]), jumps, jump_gens, in_next)[0]
        assert not digs[:start].any()
        return tuple((a, int(e)) for a, e in enumerate(digs) if e and a >= start)

    power_rels = []
    comm_rels = []
    for a in range(m):
        power_rels.append(word_from(G.pow(jump_gens[a], p), a + 1))
        for b in range(a + 1, m):
            w = word_from(G.comm(jump_gens[b], jump_gens[a]), b + 1)
            if w:
                comm_rels.append(((b, a), w))
    SP = PcPresentation(
        name=f"{G.pres.name}|sub{H.order}",
        p=p,
        gens=tuple(f"s{a + 1}" for a in range(m)),
        power_rels=tuple(power_rels),
        comm_rels=tuple(sorted(comm_rels)),
    )
    Sgrp = Group(SP, check=True)

    to_parent = np.array([0], dtype=np.int64)
    for a in range(m):
        blocks = [to_parent]
        cur = to_parent
        for _ in range(1, p):
            cur = G.rmul_array(cur, jump_gens[a])
            blocks.append(cur)
        to_parent = np.stack(blocks, axis=1).reshape(-1)
    assert np.unique(to_parent).size == H.order
    from_parent = {int(g): s for s, g in enumerate(to_parent)}
    return SubgroupGroup(
        parent=G, group=Sgrp, presentation=SP, to_parent=to_parent, from_parent=from_parent
    )


# ---------------------------------------------------------------------------
# module-level operations (presentation-facing API)


_group_cache: dict[PcPresentation, Group] = {}


def group_of(P) -> Group:
    if isinstance(P, Group):
        return P
    G = _group_cache.get(P)
    if G is None:
        G = Group(P)
        _group_cache[P] = G
    return G


def subgroup_generated(gens, P) -> Subgroup:
    """Smallest subgroup containing the given elements."""
    G = group_of(P)
    idx_gens = tuple(G.index_of(a) if isinstance(a, Element) else int(a) for a in gens)
    idxs = G.subgroup_closure(idx_gens)
    return Subgroup(group=G, indices=idxs, gens=idx_gens)


def center(P) -> Subgroup:
    return group_of(P).center


def derived_subgroup(P) -> Subgroup:
    return group_of(P).derived


def centralizer(g, P) -> Subgroup:
    G = group_of(P)
    gi = G.index_of(g) if isinstance(g, Element) else int(g)
    idxs = G.centralizer_indices(gi)
    return Subgroup(group=G, indices=idxs, gens=_chain_gens(G, idxs))


def conjugacy_classes(P) -> ConjugacyClassSet:
    return group_of(P).conjugacy_classes


def nilpotency_class(P) -> int:
    return group_of(P).nilpotency_class


def exponent(P) -> int:
    return group_of(P).exponent


def abelian_invariants(H: Subgroup) -> tuple[int, ...]:
    """Invariant factors of an abelian subgroup, as a sorted multiset of
    prime powers (largest first)."""
    if not H.is_abelian:
        raise ValueError("subgroup is not abelian")
    if H.order == 1:
        return ()
    G = H.group
    p = G.p
    # N_k = #{x in H : x^(p^k) = 1} = p^(sum_i min(lambda_i, k))
    ms = [0]
    xs = H.indices.astype(np.int64)
    k = 0
    while True:
        count = int(np.count_nonzero(xs == 0))
        power = 0
        while p**power < count:
            power += 1
        assert p**power == count, "subgroup power-count is not a p-power"
        if k > 0:
            ms.append(power)
        if count == H.order:
            break
        xs = np.array([G.pow(int(x), p) for x in xs], dtype=np.int64)
        k += 1
    # parts with lambda_i >= k number m_k - m_(k-1)
    counts = [ms[k] - ms[k - 1] for k in range(1, len(ms))]
    invariants = []
    for k, c in enumerate(counts, start=1):
        nxt = counts[k] if k < len(counts) else 0
        invariants.extend([p**k] * (c - nxt))
    return tuple(sorted(invariants, reverse=True))
