"""Finite groups as multiplication tables, with subgroup/action/matched-pair machinery.

Conventions used throughout the package:
  - a group of order n lives on the indices 0..n-1 and its identity is 0;
  - table[a, b] is the product a*b;
  - all tables are numpy int32 arrays frozen after construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .checks import Check, Report, find_identity, group_table_checks

# O(n^3) associativity scans are only run up to this order; larger tables must
# come from trusted product constructions.
ASSOC_CHECK_LIMIT = 2048

AUTOMORPHISM_CAP = 64


class NotLatinSquare(ValueError):
    pass


class NoIdentity(ValueError):
    pass


class NotAssociative(ValueError):
    pass


class NotPrime(ValueError):
    pass


class NotHomomorphism(ValueError):
    pass


class NotAutomorphism(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class NotExactFactorization(ValueError):
    pass


class CompatibilityViolated(ValueError):
    pass


def _raise_for_check(check: Check) -> None:
    msg = check.describe()
    name = check.name.rsplit("-", 1)[-1] if "-" in check.name else check.name
    if name == "latin":
        raise NotLatinSquare(msg)
    if name == "identity":
        raise NoIdentity(msg)
    raise NotAssociative(msg)


class FiniteGroup:
    """A finite group given by its full multiplication table; identity is 0.

    `trusted=True` skips only the O(n^3) associativity scan and is reserved for
    tables assembled from already-verified inputs (products, reindexed
    subgroups, quotients).  The Latin-square, identity, and inverse checks
    always run.
    """

    def __init__(self, table, name: str = "G", trusted: bool = False):
        arr = np.array(table, dtype=np.int32)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise NotLatinSquare(f"table shape {arr.shape} is not square")
        n = arr.shape[0]
        check_assoc = not trusted and n <= ASSOC_CHECK_LIMIT
        for check in group_table_checks(arr, check_assoc=check_assoc):
            if not check.ok:
                _raise_for_check(check)
        self.order: int = n
        self.name = name
        self.table = arr
        inv = np.argmax(arr == 0, axis=1).astype(np.int32)
        self.inv = inv
        arr.setflags(write=False)
        inv.setflags(write=False)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def conjugate(self, a: int, b: int) -> int:
        """b * a * b^-1."""
        return int(self.table[self.table[b, a], self.inv[b]])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse(a), -k
        out, base = 0, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int32)
        orders[0] = 1
        cur = np.arange(n, dtype=np.int32)
        k = 1
        while (orders == 0).any():
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            cur = self.table[cur, np.arange(n)]
            k += 1
        orders.setflags(write=False)
        return orders

    def element_order(self, a: int) -> int:
        return int(self.element_orders[a])

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def opposite(self) -> FiniteGroup:
        return FiniteGroup(self.table.T.copy(), name=f"{self.name}^op", trusted=True)

    def subgroup(self, elements: Sequence[int]) -> Subgroup:
        return Subgroup(self, tuple(sorted(int(e) for e in set(elements))))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of `parent` as a sorted tuple of parent indices."""

    parent: FiniteGroup
    elements: tuple[int, ...]
    generators: tuple[int, ...] = ()

    def __post_init__(self):
        elems = self.elements
        if not elems or elems[0] != 0 or list(elems) != sorted(set(elems)):
            raise ValueError(f"subgroup elements must be sorted, unique, and contain 0: {elems}")
        sub = np.asarray(elems, dtype=np.int32)
        tab = self.parent.table[np.ix_(sub, sub)]
        if not np.isin(tab, sub).all():
            a, b = map(int, np.argwhere(~np.isin(tab, sub))[0])
            raise ValueError(
                f"not closed: {elems[a]}*{elems[b]} = {int(tab[a, b])} escapes the subset"
            )
        if not np.isin(self.parent.inv[sub], sub).all():
            raise ValueError("subset not closed under inversion")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in set(self.elements)

    def as_group(self, name: str | None = None) -> FiniteGroup:
        sub = np.asarray(self.elements, dtype=np.int32)
        pos = np.full(self.parent.order, -1, dtype=np.int32)
        pos[sub] = np.arange(len(sub), dtype=np.int32)
        table = pos[self.parent.table[np.ix_(sub, sub)]]
        return FiniteGroup(table, name=name or f"{self.parent.name}-sub{len(sub)}", trusted=True)


class GroupAction:
    """A left action of `actor` on points 0..m-1, as a |G| x m table."""

    def __init__(self, actor: FiniteGroup, table, trusted: bool = False):
        arr = np.array(table, dtype=np.int32)
        if arr.ndim != 2 or arr.shape[0] != actor.order:
            raise ValueError(f"action table shape {arr.shape} does not match |G|={actor.order}")
        m = arr.shape[1]
        if not ((arr >= 0) & (arr < m)).all():
            raise ValueError("action table entry out of range")
        if not (arr[0] == np.arange(m)).all():
            p = int(np.argmin(arr[0] == np.arange(m)))
            raise ValueError(f"identity must act trivially; moves point {p}")
        if not trusted:
            for g in range(actor.order):
                lhs = arr[actor.table[g]]      # (h, p) -> (g*h).p
                rhs = arr[g][arr]              # (h, p) -> g.(h.p)
                bad = lhs != rhs
                if bad.any():
                    h, p = map(int, np.argwhere(bad)[0])
                    raise ValueError(f"not an action: (g*h).p != g.(h.p) at g={g} h={h} p={p}")
        self.actor = actor
        self.space_size = m
        self.table = arr
        arr.setflags(write=False)

    def apply(self, g: int, p: int) -> int:
        return int(self.table[g, p])

    def orbit(self, p: int) -> tuple[int, ...]:
        return tuple(sorted(int(v) for v in set(self.table[:, p].tolist())))

    def __repr__(self) -> str:
        return f"GroupAction({self.actor.name!r} on {self.space_size} points)"


@dataclass(frozen=True)
class GroupMap:
    """A homomorphism between table groups, stored as the image tuple."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        img = np.asarray(self.images, dtype=np.int32)
        if img.shape != (self.source.order,):
            raise NotHomomorphism(
                f"image list has length {img.shape}, expected {self.source.order}"
            )
        if not ((img >= 0) & (img < self.target.order)).all():
            raise NotHomomorphism("image out of range")
        if img[0] != 0:
            raise NotHomomorphism("identity must map to identity")
        lhs = img[self.source.table]
        rhs = self.target.table[np.ix_(img, img)]
        bad = lhs != rhs
        if bad.any():
            a, b = map(int, np.argwhere(bad)[0])
            raise NotHomomorphism(f"f({a}*{b}) != f({a})*f({b})")

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    @property
    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.images)) == self.source.order

    def compose(self, other: GroupMap) -> GroupMap:
        """self after other."""
        if other.target is not self.source and other.target.order != self.source.order:
            raise ValueError("composition mismatch")
        return GroupMap(other.source, self.target, tuple(self.images[x] for x in other.images))


@dataclass(frozen=True)
class MatchedPair:
    """Groups H, S with a left action of S on H and a right action of H on S.

    left[s, h] is the action of s on h (valued in H); right[s, h] is the
    action of h on s (valued in S).  The two mixed compatibility laws are
    verified at construction.
    """

    H: FiniteGroup
    S: FiniteGroup
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        H, S = self.H, self.S
        left = np.asarray(self.left, dtype=np.int32)
        right = np.asarray(self.right, dtype=np.int32)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        shape = (S.order, H.order)
        if left.shape != shape or right.shape != shape:
            raise CompatibilityViolated(f"action tables must both have shape {shape}")
        nh = np.arange(H.order)
        ns = np.arange(S.order)
        if not (left[0] == nh).all() or not (left[:, 0] == 0).all():
            raise CompatibilityViolated("left action must fix e_H and have trivial e_S row")
        if not (right[0] == 0).all() or not (right[:, 0] == ns).all():
            raise CompatibilityViolated("right action must fix e_S column and kill e_H")
        # left is a left action: (s*t).h = s.(t.h)
        bad = left[S.table] != left[:, left]
        if bad.any():
            s, t, h = map(int, np.argwhere(bad)[0])
            raise CompatibilityViolated(f"left action law fails at s={s} t={t} h={h}")
        # right is a right action: s^(h*k) = (s^h)^k
        bad = right[:, H.table] != right[right]
        if bad.any():
            s, h, k = map(int, np.argwhere(bad)[0])
            raise CompatibilityViolated(f"right action law fails at s={s} h={h} k={k}")
        # s.(h1*h2) = (s.h1) * (s^h1).h2
        rhs = H.table[left[:, :, None], left[right]]
        bad = left[:, H.table] != rhs
        if bad.any():
            s, h1, h2 = map(int, np.argwhere(bad)[0])
            raise CompatibilityViolated(f"mixed law on H fails at s={s} h1={h1} h2={h2}")
        # (s1*s2)^h = s1^(s2.h) * s2^h
        rhs = S.table[right[:, left], right[None, :, :]]
        bad = right[S.table] != rhs
        if bad.any():
            s1, s2, h = map(int, np.argwhere(bad)[0])
            raise CompatibilityViolated(f"mixed law on S fails at s1={s1} s2={s2} h={h}")
        left.setflags(write=False)
        right.setflags(write=False)


def group_from_table(order: int, table, name: str = "G") -> FiniteGroup:
    """Build a group from a raw table, relabelling a unique identity to index 0."""
    arr = np.array(table, dtype=np.int32)
    if arr.shape != (order, order):
        raise NotLatinSquare(f"table shape {arr.shape}, expected ({order}, {order})")
    if ((arr >= 0) & (arr < order)).all():
        e = find_identity(arr)
        if e is not None and e != 0:
            swap = np.arange(order, dtype=np.int32)
            swap[0], swap[e] = e, 0
            arr = swap[arr[np.ix_(swap, swap)]]
    return FiniteGroup(arr, name=name)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    idx = np.arange(n, dtype=np.int32)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, name=f"C{n}", trusted=True)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    """(C_p)^k on base-p digit vectors; index = sum(digit_i * p^i)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("rank must be positive")
    n = p**k
    idx = np.arange(n)
    digits = np.stack([(idx // p**i) % p for i in range(k)], axis=1)
    summed = (digits[:, None, :] + digits[None, :, :]) % p
    weights = np.array([p**i for i in range(k)])
    table = (summed * weights).sum(axis=2).astype(np.int32)
    return FiniteGroup(table, name=f"E{p}^{k}", trusted=True)


def _check_automorphism_list(H: FiniteGroup, alpha: np.ndarray) -> None:
    nh = alpha.shape[1]
    idx = np.arange(nh)
    for s in range(alpha.shape[0]):
        perm = alpha[s]
        if not (np.sort(perm) == idx).all():
            raise NotAutomorphism(f"map {s} is not a permutation")
        if perm[0] != 0:
            raise NotAutomorphism(f"map {s} moves the identity")
        lhs = perm[H.table]
        rhs = H.table[np.ix_(perm, perm)]
        if (lhs != rhs).any():
            a, b = map(int, np.argwhere(lhs != rhs)[0])
            raise NotAutomorphism(f"map {s} is not a homomorphism at ({a},{b})")


def semidirect_product(
    H: FiniteGroup, S: FiniteGroup, alpha, name: str | None = None
) -> FiniteGroup:
    """H x| S with pair (h, s) at index h*|S| + s and (h,s)(h',s') = (h*s.h', s*s').

    `alpha` is one permutation of H per element of S; it must realize a
    homomorphism from S into Aut(H).
    """
    alpha = np.asarray(alpha, dtype=np.int32)
    if alpha.shape != (S.order, H.order):
        raise NotHomomorphism(f"alpha must have shape ({S.order}, {H.order})")
    _check_automorphism_list(H, alpha)
    comp = alpha[:, alpha]                             # (s, t, h) -> alpha_s(alpha_t(h))
    expected = alpha[S.table]                          # (s, t, h) -> alpha_{s*t}(h)
    if (comp != expected).any():
        s, t, _ = map(int, np.argwhere(comp != expected)[0])
        raise NotHomomorphism(f"alpha({s}*{t}) != alpha({s})∘alpha({t})")
    hpart = H.table[:, alpha]                          # (h, s, h') -> h * alpha_s(h')
    table = hpart[:, :, :, None] * np.int32(S.order) + S.table[None, :, None, :]
    n = H.order * S.order
    return FiniteGroup(table.reshape(n, n), name=name or f"{H.name}:{S.name}", trusted=True)


def direct_product(H: FiniteGroup, S: FiniteGroup, name: str | None = None) -> FiniteGroup:
    alpha = np.tile(np.arange(H.order, dtype=np.int32), (S.order, 1))
    return semidirect_product(H, S, alpha, name=name or f"{H.name}x{S.name}")


def _closure(table: np.ndarray, gens: Sequence[int], cap: int | None = None) -> list[int] | None:
    """Elements of <gens> in deterministic BFS order; None if the cap is exceeded."""
    seen = bytearray(table.shape[0])
    seen[0] = 1
    out = [0]
    queue = deque([0])
    for g in gens:
        if not seen[g]:
            seen[g] = 1
            out.append(g)
            queue.append(g)
            if cap is not None and len(out) > cap:
                return None
    while queue:
        a = queue.popleft()
        row = table[a]
        for g in gens:
            b = int(row[g])
            if not seen[b]:
                seen[b] = 1
                out.append(b)
                queue.append(b)
                if cap is not None and len(out) > cap:
                    return None
    return out


def subgroup_generated(G: FiniteGroup, gens: Sequence[int]) -> Subgroup:
    gens = tuple(int(g) for g in gens)
    elems = _closure(G.table, gens)
    assert elems is not None
    return Subgroup(G, tuple(sorted(elems)), generators=gens)


def _greedy_generators(G: FiniteGroup) -> list[int]:
    """Irredundant generating list, picking the smallest element outside the closure."""
    gens: list[int] = []
    closed = {0}
    while len(closed) < G.order:
        g = next(i for i in range(G.order) if i not in closed)
        gens.append(g)
        closed = set(_closure(G.table, gens))
    return gens


def _extend_hom(table: np.ndarray, img: np.ndarray, elems: list[int], g: int, y: int):
    """Extend a partial endomorphism (defined on the closed set `elems`) by g -> y.

    Returns (img, elems) on the closure of elems + {g}, or None on conflict.
    """
    img = img.copy()
    elems = list(elems)
    img[g] = y
    elems.append(g)
    queue = deque([g])
    while queue:
        c = queue.popleft()
        snapshot = list(elems)
        for a in snapshot:
            for u, v in ((a, c), (c, a)):
                w = int(table[u, v])
                iw = int(table[img[u], img[v]])
                if img[w] < 0:
                    img[w] = iw
                    elems.append(w)
                    queue.append(w)
                elif img[w] != iw:
                    return None
    return img, elems


def automorphism_group(
    G: FiniteGroup, cap: int = AUTOMORPHISM_CAP
) -> tuple[FiniteGroup, list[GroupMap]]:
    """All automorphisms of G by backtracking over images of a greedy generating set.

    Returns the abstract automorphism group (identity at index 0, maps sorted
    lexicographically) together with the realizing permutations.
    """
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds the automorphism search cap {cap}")
    n = G.order
    gens = _greedy_generators(G)
    orders = G.element_orders
    base = np.full(n, -1, dtype=np.int32)
    base[0] = 0
    found: list[tuple[int, ...]] = []

    def search(i: int, img: np.ndarray, elems: list[int]) -> None:
        if i == len(gens):
            if len(set(img.tolist())) == n:
                found.append(tuple(int(v) for v in img))
            return
        g = gens[i]
        og = int(orders[g])
        for y in range(n):
            if int(orders[y]) != og:
                continue
            ext = _extend_hom(G.table, img, elems, g, y)
            if ext is not None:
                search(i + 1, ext[0], ext[1])

    search(0, base, [0])
    perms = sorted(found)
    index = {p: i for i, p in enumerate(perms)}
    na = len(perms)
    parr = np.array(perms, dtype=np.int32)
    table = np.empty((na, na), dtype=np.int32)
    for i in range(na):
        for j in range(na):
            table[i, j] = index[tuple(int(v) for v in parr[i][parr[j]])]
    aut = FiniteGroup(table, name=f"Aut({G.name})", trusted=True)
    return aut, [GroupMap(G, G, p) for p in perms]


def holomorph(G: FiniteGroup, cap: int = AUTOMORPHISM_CAP) -> tuple[FiniteGroup, GroupAction]:
    """G x| Aut(G) with its natural transitive action (h, a).k = h * a(k).

    The returned group carries `aut_group` / `aut_maps` attributes so callers
    can locate specific automorphisms inside it.
    """
    aut, maps = automorphism_group(G, cap=cap)
    alpha = np.array([m.images for m in maps], dtype=np.int32)
    hol = semidirect_product(G, aut, alpha, name=f"Hol({G.name})")
    act = G.table[:, alpha].reshape(G.order * aut.order, G.order)
    action = GroupAction(hol, act, trusted=True)
    if not is_transitive(action):
        raise AssertionError("holomorph action must be transitive")
    hol.aut_group = aut
    hol.aut_maps = maps
    return hol, action


def is_transitive(action: GroupAction) -> bool:
    return len(set(action.table[:, 0].tolist())) == action.space_size


def stabilizer(action: GroupAction, point: int) -> Subgroup:
    elems = tuple(int(g) for g in np.nonzero(action.table[:, point] == point)[0])
    sub = Subgroup(action.actor, elems)
    orbit = len(set(action.table[:, point].tolist()))
    if orbit * len(elems) != action.actor.order:
        raise AssertionError("orbit-stabilizer count mismatch")
    return sub


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of G, by closure of incrementally extended generator sets."""
    table = G.table
    visited: dict[tuple[int, ...], tuple[int, ...]] = {(0,): ()}
    queue = deque([((0,), ())])
    while queue:
        elems, gens = queue.popleft()
        members = set(elems)
        for g in range(1, G.order):
            if g in members:
                continue
            new = _closure(table, gens + (g,))
            key = tuple(sorted(new))
            if key not in visited:
                visited[key] = gens + (g,)
                queue.append((key, gens + (g,)))
    return [Subgroup(G, k, generators=v) for k, v in sorted(visited.items())]


def find_complements(G: FiniteGroup, S: Subgroup) -> list[Subgroup]:
    """All subgroups H with H ∩ S = {0} and |H|*|S| = |G|, in lexicographic order.

    The search walks the subgroup lattice by single-generator extension,
    pruning any partial subgroup whose order does not divide the complement
    order or which meets S nontrivially; exhausting it certifies nonexistence.
    """
    n = G.order
    m = n // S.order
    table = G.table
    orders = G.element_orders
    s_nontrivial = set(S.elements) - {0}
    visited: dict[tuple[int, ...], tuple[int, ...]] = {(0,): ()}
    queue = deque([((0,), ())])
    results: list[tuple[int, ...]] = []
    while queue:
        elems, gens = queue.popleft()
        if len(elems) == m:
            results.append(elems)
            continue
        members = set(elems)
        for g in range(1, n):
            if g in members or g in s_nontrivial or m % int(orders[g]) != 0:
                continue
            new = _closure(table, gens + (g,), cap=m)
            if new is None or m % len(new) != 0:
                continue
            if s_nontrivial.intersection(new):
                continue
            key = tuple(sorted(new))
            if key not in visited:
                visited[key] = gens + (g,)
                queue.append((key, gens + (g,)))
    out = [Subgroup(G, k, generators=visited[k]) for k in sorted(results)]
    for H in out:
        if not exact_factorization(G, H, S):
            raise AssertionError("complement search produced a non-complement")
    return out


def exact_factorization(G: FiniteGroup, H: Subgroup, S: Subgroup) -> bool:
    """True iff G = HS with H ∩ S = {e}."""
    if H.parent is not G or S.parent is not G:
        raise ValueError("H and S must be subgroups of G")
    return set(H.elements) & set(S.elements) == {0} and H.order * S.order == G.order


def matched_pair_from_factorization(G: FiniteGroup, H: Subgroup, S: Subgroup) -> MatchedPair:
    """Mutual actions defined by refactoring s*h as (s.h) * (s^h)."""
    if not exact_factorization(G, H, S):
        raise NotExactFactorization(
            f"|H|*|S| = {H.order}*{S.order} with overlap does not factor |G| = {G.order}"
        )
    Hel = np.asarray(H.elements, dtype=np.int32)
    Sel = np.asarray(S.elements, dtype=np.int32)
    prod = G.table[np.ix_(Hel, Sel)]
    fact_h = np.full(G.order, -1, dtype=np.int32)
    fact_s = np.full(G.order, -1, dtype=np.int32)
    hi = np.repeat(np.arange(H.order, dtype=np.int32), S.order)
    si = np.tile(np.arange(S.order, dtype=np.int32), H.order)
    flat = prod.reshape(-1)
    if len(set(flat.tolist())) != G.order:
        raise NotExactFactorization("products h*s do not exhaust G")
    fact_h[flat] = hi
    fact_s[flat] = si
    mix = G.table[np.ix_(Sel, Hel)]
    left = fact_h[mix]
    right = fact_s[mix]
    Hgrp = H.as_group(name=f"{G.name}|H")
    Sgrp = S.as_group(name=f"{G.name}|S")
    return MatchedPair(Hgrp, Sgrp, left, right)


def bicrossed_product(mp: MatchedPair, name: str | None = None) -> FiniteGroup:
    """Group on H x S pairs with (h,s)(h',s') = (h * s.h', s^h' * s')."""
    H, S = mp.H, mp.S
    hpart = H.table[:, mp.left]                        # (h, s, h') -> h * s.h'
    spart = S.table[mp.right.transpose(1, 0), :]       # (h', s, s') -> s^h' * s'
    nh, ns = H.order, S.order
    table = np.empty((nh, ns, nh, ns), dtype=np.int32)
    table[:] = hpart[:, :, :, None] * np.int32(ns)
    table += spart.transpose(1, 0, 2)[None, :, :, :]
    n = nh * ns
    return FiniteGroup(table.reshape(n, n), name=name or f"{H.name}x|{S.name}", trusted=True)
