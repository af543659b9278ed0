"""Worked example families: builders for the instances exercised everywhere.

Five families, each returning a CatalogInstance bundle:

- trivial-brace: star = dot on a cyclic or metacyclic group.
- semidirect: dot = Cp x| Cq, star = Cp x Cq, quotient by {e} x Cq.
- abelianmap: order-4pq group with an abelian-image endomorphism, quotient
  by the dihedral ideal generated by x^q and z.
- gl3f2: seeded random two-generator search inside Hol(C2^3) for a simple
  transitive subgroup of order 168.
- cyclic-pq: transitive subgroup of Hol(C_pq) of order pq^2 whose point
  stabilizer has no complement (so no contained brace exists).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .braces import SkewBrace, abelian_map_brace, trivial_brace
from .bracoids import (
    ContainedBrace,
    SkewBracoid,
    contains_brace,
    from_holomorph_subgroup,
    from_strong_left_ideal,
    transport,
)
from .groups import (
    FiniteGroup,
    GroupMap,
    NotPrime,
    Subgroup,
    _closure,
    cyclic_group,
    direct_product,
    elementary_abelian,
    holomorph,
    is_prime,
    semidirect_product,
    stabilizer,
    subgroup_generated,
)

CATALOG_NAMES = ("trivial-brace", "semidirect", "abelianmap", "gl3f2", "cyclic-pq")

DEFAULT_PARAMS: dict[str, tuple[int, ...]] = {
    "trivial-brace": (3, 2),
    "semidirect": (3, 2),
    "abelianmap": (3, 5),
    "gl3f2": (),
    "cyclic-pq": (5, 2),
}

GL3F2_ORDER = 168
GL3F2_ATTEMPT_CAP = 10**6


class UnknownExample(ValueError):
    """Requested name is not in the catalog."""


class SearchExhausted(RuntimeError):
    """The seeded generator search hit its attempt cap; rerun with a new seed."""


@dataclass(frozen=True)
class CatalogInstance:
    """Everything a family builder produced for one parameter choice.

    ``contained`` is None exactly when the bracoid's stabilizer has no
    complement (contains_brace certified the absence); every builder runs
    the search, so None is always a certificate and never "not tried".
    """

    name: str
    params: tuple[int, ...]
    brace: SkewBrace | None
    bracoid: SkewBracoid
    contained: ContainedBrace | None
    detail: dict = field(default_factory=dict)


def _require_prime(value: int, label: str) -> None:
    if not is_prime(value):
        raise NotPrime(f"{label} = {value} is not prime")


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _primitive_root(p: int) -> int:
    parts = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in parts):
            return g
    raise NotPrime(f"{p} has no primitive root; not prime?")


def _power_maps(p: int, q: int, u: int) -> np.ndarray:
    # Rows alpha[s] = multiplication by u^s on Z/p.
    arange = np.arange(p, dtype=np.int32)
    return np.stack([(pow(u, s, p) * arange) % p for s in range(q)]).astype(np.int32)


def _metacyclic(p: int, q: int) -> FiniteGroup:
    """Cp x| Cq with Cq acting through an order-q power map."""
    _require_prime(p, "p")
    _require_prime(q, "q")
    if (p - 1) % q != 0:
        raise ValueError(f"q = {q} must divide p - 1 = {p - 1}")
    u = pow(_primitive_root(p), (p - 1) // q, p)
    alpha = _power_maps(p, q, u)
    return semidirect_product(cyclic_group(p), cyclic_group(q), alpha,
                              name=f"C{p}:C{q}")


def trivial_brace_instance(params: tuple[int, ...]) -> CatalogInstance:
    """star = dot; one parameter n gives C_n, a pair (p, q) the metacyclic group."""
    if len(params) == 1:
        n = params[0]
        if n < 2:
            raise ValueError("order must be at least 2")
        G = cyclic_group(n)
    elif len(params) == 2:
        G = _metacyclic(*params)
    else:
        raise ValueError("trivial-brace takes n or (p, q)")
    B = trivial_brace(G)
    bracoid = from_strong_left_ideal(B, G.subgroup([0]))
    cb = contains_brace(bracoid)
    return CatalogInstance("trivial-brace", tuple(params), B, bracoid, cb)


def semidirect_instance(p: int, q: int) -> CatalogInstance:
    """Brace with dot = Cp x| Cq and star = Cp x Cq, quotient by {e} x Cq."""
    dot = _metacyclic(p, q)
    star = direct_product(cyclic_group(p), cyclic_group(q), name=f"C{p}xC{q}")
    B = SkewBrace(star, dot)
    ideal = dot.subgroup(range(q))
    bracoid = from_strong_left_ideal(B, ideal)
    cb = contains_brace(bracoid)
    return CatalogInstance("semidirect", (p, q), B, bracoid, cb,
                           detail={"ideal": ideal.elements})


def abelianmap_instance(p: int, q: int) -> CatalogInstance:
    """Order-4pq group x^pq = y^2 = z^2 = e with y and z both inverting x.

    The endomorphism keeps the (y, z) part and kills x; the ideal is
    generated by x^q and z.  Element (x^h, y^j z^k) has index 4h + j + 2k.
    """
    _require_prime(p, "p")
    _require_prime(q, "q")
    if p == q or p == 2 or q == 2:
        raise ValueError("p and q must be distinct odd primes")
    m = p * q
    carrier = cyclic_group(m)
    klein = elementary_abelian(2, 2)
    arange = np.arange(m, dtype=np.int32)
    flip = (-arange) % m
    alpha = np.stack([arange, flip, flip, arange]).astype(np.int32)
    G = semidirect_product(carrier, klein, alpha, name=f"C{m}:V4")
    psi = GroupMap(G, G, tuple(i % 4 for i in range(4 * m)))
    B = abelian_map_brace(G, psi)
    ideal = subgroup_generated(G, [4 * q, 2])
    bracoid = from_strong_left_ideal(B, ideal)
    cb = contains_brace(bracoid)
    return CatalogInstance("abelianmap", (p, q), B, bracoid, cb,
                           detail={"ideal": ideal.elements})


def _conjugacy_class(G: FiniteGroup, g: int) -> np.ndarray:
    return np.unique(G.table[G.table[:, g], G.inv])


def _is_simple(G: FiniteGroup) -> bool:
    """No conjugacy class generates a proper nontrivial normal subgroup."""
    seen = np.zeros(G.order, dtype=bool)
    seen[0] = True
    for g in range(1, G.order):
        if seen[g]:
            continue
        cls = _conjugacy_class(G, g)
        seen[cls] = True
        generated = _closure(G.table, [int(v) for v in cls])
        if len(generated) != G.order:
            return False
    return True


def gl3f2_instance(seed: int = 0, attempt_cap: int = GL3F2_ATTEMPT_CAP) -> CatalogInstance:
    """Seeded search for a simple transitive order-168 subgroup of Hol(C2^3).

    Generator pairs are drawn in seeded order; each candidate closure is
    capped at 168 elements, must act transitively on the eight points,
    and must be simple (this rejects the affine order-168 subgroups).
    """
    N = elementary_abelian(2, 3)
    hol, action = holomorph(N, cap=GL3F2_ORDER)
    rng = random.Random(seed)
    points = action.table[:, 0]
    for attempt in range(1, attempt_cap + 1):
        a = rng.randrange(hol.order)
        b = rng.randrange(hol.order)
        elems = _closure(hol.table, [a, b], cap=GL3F2_ORDER)
        if elems is None or len(elems) != GL3F2_ORDER:
            continue
        chosen = np.asarray(sorted(elems), dtype=np.int32)
        if len(set(points[chosen].tolist())) != N.order:
            continue
        J = Subgroup(hol, tuple(int(v) for v in chosen), generators=(a, b))
        if not _is_simple(J.as_group(name="J168")):
            continue
        bracoid = from_holomorph_subgroup(N, J)
        cb = contains_brace(bracoid)
        return CatalogInstance("gl3f2", (), None, bracoid, cb,
                               detail={"attempts": attempt,
                                       "generators": (a, b),
                                       "hol_order": hol.order,
                                       "stabilizer": stabilizer(bracoid.act, 0).order})
    raise SearchExhausted(
        f"no simple transitive order-{GL3F2_ORDER} subgroup in {attempt_cap} attempts")


def cyclic_pq_instance(p: int, q: int) -> CatalogInstance:
    """Order-pq^2 transitive subgroup of Hol(C_pq) with complement-free stabilizer.

    Needs q^2 | p - 1.  The twist alpha multiplies by u with
    u = g^((p-1)/q^2) mod p (g the least primitive root) and u = 1 mod q,
    so alpha has order q^2 and fixes the order-q part.
    """
    _require_prime(p, "p")
    _require_prime(q, "q")
    if (p - 1) % (q * q) != 0:
        raise ValueError(f"q^2 = {q * q} must divide p - 1 = {p - 1}")
    m = p * q
    N = cyclic_group(m)
    root = pow(_primitive_root(p), (p - 1) // (q * q), p)
    # CRT: u = root mod p, u = 1 mod q.
    u = next(v for v in range(1, m) if v % p == root % p and v % q == 1)
    hol, action = holomorph(N)
    na = len(hol.aut_maps)
    alpha_perm = tuple(int(v) for v in (u * np.arange(m, dtype=np.int64)) % m)
    slot = {mp.images: i for i, mp in enumerate(hol.aut_maps)}
    alpha_idx = slot[alpha_perm]
    sigma, tau = q, p
    J = subgroup_generated(hol, [sigma * na, tau * na + alpha_idx])
    bracoid = from_holomorph_subgroup(N, J)
    cb = contains_brace(bracoid)
    return CatalogInstance("cyclic-pq", (p, q), None, bracoid, cb,
                           detail={"twist": u,
                                   "J_order": J.order,
                                   "stabilizer": stabilizer(bracoid.act, 0).order})


def promote_brace(B: SkewBrace) -> ContainedBrace:
    """View a brace as a bracoid: quotient by the trivial ideal, H = all of G."""
    bracoid = from_strong_left_ideal(B, B.dot.subgroup([0]))
    return transport(bracoid, bracoid.G.subgroup(range(B.order)))


def _relabeled(G: FiniteGroup, perm: np.ndarray) -> FiniteGroup:
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm), dtype=perm.dtype)
    return FiniteGroup(perm[G.table[np.ix_(inv, inv)]], name=G.name + "~", trusted=True)


def _brace_pool(max_order: int) -> list[SkewBrace]:
    pool = [trivial_brace(cyclic_group(n)) for n in range(2, max_order + 1)]
    for k in (2, 3, 4):
        if 2**k <= max_order:
            pool.append(trivial_brace(elementary_abelian(2, k)))
    for p in (3, 5, 7, 11, 13):
        for q in (2, 3, 4):
            if p * q <= max_order and (p - 1) % q == 0 and is_prime(q):
                dot = _metacyclic(p, q)
                pool.append(SkewBrace(direct_product(cyclic_group(p), cyclic_group(q)), dot))
                pool.append(trivial_brace(dot))
    for m in range(3, max_order // 2 + 1):
        # Dihedral group with the order-2 part split off by an abelian map.
        carrier = cyclic_group(m)
        arange = np.arange(m, dtype=np.int32)
        alpha = np.stack([arange, (-arange) % m]).astype(np.int32)
        G = semidirect_product(carrier, cyclic_group(2), alpha, name=f"D{m}")
        psi = GroupMap(G, G, tuple(i % 2 for i in range(2 * m)))
        pool.append(abelian_map_brace(G, psi))
    return pool


def seeded_braces(rng: random.Random, count: int, max_order: int = 16) -> list[SkewBrace]:
    """Draw braces from the stock pool, each relabelled by a random identity-fixing
    permutation; both tables get the same relabelling so the coupling law survives."""
    pool = _brace_pool(max_order)
    out = []
    for _ in range(count):
        base = pool[rng.randrange(len(pool))]
        tail = list(range(1, base.order))
        rng.shuffle(tail)
        perm = np.asarray([0] + tail, dtype=np.int32)
        out.append(SkewBrace(_relabeled(base.star, perm), _relabeled(base.dot, perm)))
    return out


def build_example(name: str, params: tuple[int, ...] = (), seed: int = 0) -> CatalogInstance:
    """Dispatch by catalog name; empty params fall back to the stock instance."""
    if name not in CATALOG_NAMES:
        raise UnknownExample(f"unknown example {name!r} (choose from {CATALOG_NAMES})")
    params = tuple(params) or DEFAULT_PARAMS[name]
    if name == "trivial-brace":
        return trivial_brace_instance(params)
    if name == "semidirect":
        return semidirect_instance(*params)
    if name == "abelianmap":
        return abelianmap_instance(*params)
    if name == "cyclic-pq":
        return cyclic_pq_instance(*params)
    return gl3f2_instance(seed=seed)


def acceptance_instances(seed: int = 0) -> list[CatalogInstance]:
    """The fixed battery: trivial braces C2..C6 and S3, plus the four
    parameterized families at their stock parameters."""
    out = [trivial_brace_instance((n,)) for n in range(2, 7)]
    out.append(trivial_brace_instance((3, 2)))
    out.append(semidirect_instance(3, 2))
    out.append(abelianmap_instance(3, 5))
    out.append(gl3f2_instance(seed=seed))
    out.append(cyclic_pq_instance(5, 2))
    return out
