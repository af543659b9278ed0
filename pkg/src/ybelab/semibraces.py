"""Left cancellative semibraces and the bracoid correspondence.

A semibrace couples a group (G, .) with a left cancellative semigroup
(G, +) through x.(y+z) = x.y + x.(x^-1 + z).  The carrier splits as
(G+e) + E with E the idempotents; G+e matches the complement H and E
the stabilizer S of the corresponding bracoid, and the two conversion
maps invert each other on the nose (same element indexing, so round
trips are literal table equality).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bracoids import ContainedBrace, SkewBracoid, transport
from .checks import AxiomViolated, Check, Report, group_table_checks
from .groups import FiniteGroup, Subgroup, stabilizer


def _plus_assoc_failure(plus: np.ndarray) -> tuple[int, int, int] | None:
    for x in range(plus.shape[0]):
        bad = plus[plus[x]] != plus[x][plus]
        if bad.any():
            y, z = map(int, np.argwhere(bad)[0])
            return x, y, z
    return None


def _relation_failure(dot: FiniteGroup, plus: np.ndarray) -> tuple[int, int, int] | None:
    """First triple breaking x.(y+z) = x.y + x.(x^-1 + z), or None."""
    for x in range(dot.order):
        dx = dot.table[x]
        lhs = dx[plus]
        shifted = dx[plus[dot.inv[x]]]
        rhs = plus[dx[:, None], shifted[None, :]]
        bad = lhs != rhs
        if bad.any():
            y, z = map(int, np.argwhere(bad)[0])
            return x, y, z
    return None


def verify_semibrace(dot, plus) -> Report:
    """Axiom report: dot group laws, plus associativity and cancellativity,
    and the coupling relation, each with a first counterexample."""
    dt = np.asarray(getattr(dot, "table", dot), dtype=np.int32)
    pt = np.asarray(plus, dtype=np.int32)
    results = list(group_table_checks(dt, prefix="dot."))
    shaped = pt.ndim == 2 and pt.shape == dt.shape
    results.append(Check("same-order", shaped, detail=f"{dt.shape} vs {pt.shape}"))
    n = dt.shape[0]
    ranged = shaped and bool(((pt >= 0) & (pt < n)).all())
    if shaped:
        results.append(Check("plus.range", ranged))
    usable = ranged and all(c.ok for c in results)
    if usable:
        witness = _plus_assoc_failure(pt)
        results.append(Check("plus.assoc", witness is None, witness=witness or ()))
        arange = np.arange(n, dtype=np.int32)
        rows = np.nonzero((np.sort(pt, axis=1) != arange).any(axis=1))[0]
        cancel_w: tuple[int, ...] = ()
        if rows.size:
            x = int(rows[0])
            order = np.argsort(pt[x], kind="stable")
            hit = int(np.nonzero(pt[x][order][1:] == pt[x][order][:-1])[0][0])
            cancel_w = (x, int(order[hit]), int(order[hit + 1]))
        results.append(Check("plus.cancellative", not cancel_w, witness=cancel_w))
        if witness is None and not cancel_w:
            rel = _relation_failure(FiniteGroup(dt, trusted=True), pt)
            results.append(Check("compat", rel is None, witness=rel or ()))
        else:
            results.append(Check("compat", False,
                                 detail="not evaluated: plus checks failed"))
    else:
        results.append(Check("compat", False,
                             detail="not evaluated: table checks failed"))
    return Report(tuple(results))


class Semibrace:
    """Verified semibrace; also carries the table L[x, y] = x(x^-1 + y).

    Each row of L is checked to be an endomorphism of (G, +) and
    x -> L_x to be multiplicative.  Rows are in fact bijections (a plus
    row is injective and left translation is), but that is left to
    callers to observe rather than assumed anywhere.
    """

    def __init__(self, dot, plus):
        if not isinstance(dot, FiniteGroup):
            dot = FiniteGroup(np.asarray(dot, dtype=np.int32))
        plus = np.ascontiguousarray(plus, dtype=np.int32)
        report = verify_semibrace(dot.table, plus)
        if not report.ok:
            raise AxiomViolated(
                f"semibrace law failed: {report.first_failure().describe()}")
        n = dot.order
        arange = np.arange(n, dtype=np.int32)
        L = dot.table[arange[:, None], plus[dot.inv]]
        for x in range(n):
            lx = L[x]
            if not np.array_equal(lx[plus], plus[np.ix_(lx, lx)]):
                raise AxiomViolated(f"L_{x} is not a plus-endomorphism")
            if not np.array_equal(L[dot.table[x]], lx[L]):
                raise AxiomViolated(f"L is not multiplicative at {x}")
        plus.setflags(write=False)
        L.setflags(write=False)
        self.dot = dot
        self.plus = plus
        self.order = n
        self.L = L

    def __repr__(self) -> str:
        return f"Semibrace(order={self.order}, dot={self.dot.name!r})"


def L_map(sb: Semibrace, x: int) -> np.ndarray:
    """The self-map y -> x(x^-1 + y) as an index array."""
    return sb.L[x]


@dataclass(frozen=True)
class Decomposition:
    """Split of the carrier into G+e and the idempotents E."""

    Hpart: tuple[int, ...]
    Epart: tuple[int, ...]


def decompose(sb: Semibrace) -> Decomposition:
    """Split the carrier and assert every structural claim about the split.

    Asserted: x+x = x exactly when x+e = e; idempotent rows act as the
    identity; (G+e, +) is a group; and each g factors as (g+e) + eps for
    exactly one idempotent eps.
    """
    plus = sb.plus
    n = sb.order
    arange = np.arange(n, dtype=np.int32)
    hpart = np.unique(plus[:, 0])
    epart = np.nonzero(plus[arange, arange] == arange)[0].astype(np.int32)
    if 0 not in epart:
        raise AxiomViolated("identity is not idempotent")
    absorbed = np.nonzero(plus[:, 0] == 0)[0]
    if not np.array_equal(absorbed, epart):
        raise AxiomViolated("x+x = x and x+e = e pick out different sets")
    if not np.array_equal(plus[epart], np.broadcast_to(arange, (epart.size, n))):
        raise AxiomViolated("an idempotent row is not the identity map")
    pos = np.full(n, -1, dtype=np.int32)
    pos[hpart] = np.arange(hpart.size, dtype=np.int32)
    block = plus[np.ix_(hpart, hpart)]
    if (pos[block] < 0).any():
        raise AxiomViolated("G+e is not closed under +")
    FiniteGroup(pos[block], name="G+e")
    anchors = plus[:, 0]
    matches = plus[anchors[:, None], epart[None, :]] == arange[:, None]
    if not (matches.sum(axis=1) == 1).all():
        g = int(np.argmin(matches.sum(axis=1) == 1))
        raise AxiomViolated(f"{g} does not split uniquely as (g+e) + eps")
    return Decomposition(tuple(int(v) for v in hpart),
                         tuple(int(v) for v in epart))


def bracoid_to_semibrace(cb: ContainedBrace) -> Semibrace:
    """Semibrace on the acting group: x + y = y . lambda_{y^-1}(x).

    The carrier keeps G's element indexing.  G+e is checked to be H and
    the idempotents to be S.
    """
    G = cb.bracoid.G
    lr = cb.lambda_rho
    n = G.order
    arange = np.arange(n, dtype=np.int32)
    swapped = G.table[arange[:, None], cb.Hel[lr.lam[G.inv]]]
    sb = Semibrace(G, np.ascontiguousarray(swapped.T))
    dec = decompose(sb)
    if dec.Hpart != cb.H.elements:
        raise AxiomViolated("G+e is not the complement H")
    if dec.Epart != cb.S.elements:
        raise AxiomViolated("idempotents do not match the stabilizer S")
    return sb


def semibrace_to_bracoid(sb: Semibrace) -> ContainedBrace:
    """Bracoid on H = G+e with h*k = k+h and x (+) h = x.h + e.

    The output is rebuilt through the transport machinery, so every
    bracoid invariant is re-verified; the stabilizer of e is checked to
    be exactly the idempotents.
    """
    dec = decompose(sb)
    harr = np.asarray(dec.Hpart, dtype=np.int32)
    pos = np.full(sb.order, -1, dtype=np.int32)
    pos[harr] = np.arange(harr.size, dtype=np.int32)
    star = np.ascontiguousarray(pos[sb.plus[np.ix_(harr, harr)]].T)
    N = FiniteGroup(star, name=f"{sb.dot.name}+e")
    act = pos[sb.plus[sb.dot.table[:, harr], 0]]
    if (act < 0).any():
        raise AxiomViolated("x.h + e escaped G+e")
    bracoid = SkewBracoid(sb.dot, N, act)
    stab = stabilizer(bracoid.act, 0)
    if stab.elements != dec.Epart:
        raise AxiomViolated("stabilizer of e is not the idempotent set")
    cb = transport(bracoid, Subgroup(sb.dot, dec.Hpart))
    if not (np.array_equal(cb.starH, star)
            and np.array_equal(cb.actH.table, act)):
        raise AxiomViolated("transport relabelled a structure built on H")
    return cb


def roundtrip_check(value: ContainedBrace | Semibrace) -> bool:
    """Both conversion composites must reproduce the input tables exactly."""
    if isinstance(value, ContainedBrace):
        back = semibrace_to_bracoid(bracoid_to_semibrace(value))
        return bool(
            np.array_equal(back.bracoid.G.table, value.bracoid.G.table)
            and back.H.elements == value.H.elements
            and back.S.elements == value.S.elements
            and np.array_equal(back.starH, value.starH)
            and np.array_equal(back.actH.table, value.actH.table))
    if isinstance(value, Semibrace):
        again = bracoid_to_semibrace(semibrace_to_bracoid(value))
        return bool(np.array_equal(again.dot.table, value.dot.table)
                    and np.array_equal(again.plus, value.plus))
    raise TypeError(f"expected ContainedBrace or Semibrace, got {type(value)!r}")
