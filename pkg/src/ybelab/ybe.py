"""Set-theoretic Yang-Baxter maps on finite index sets.

A candidate solution is a pair of n x n tables: ``left[x, y]`` and
``right[x, y]`` are the two output coordinates of r(x, y).  Nothing is
assumed at construction time; braid, bijectivity, involutivity and the
two nondegeneracy properties are measured exhaustively by
:func:`check_braid` and recorded in a :class:`SolutionReport`.

Derivation routes (from semibraces and from bracoids that contain a
brace) verify their advertised properties before returning, so a
returned map is already known to satisfy the braid relation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .checks import AxiomViolated
from .groups import CapExceeded, FiniteGroup

# Backtracking isomorphism search is only offered on small index sets.
ISOMORPHISM_CAP = 16


class SizeMismatch(ValueError):
    """Two solutions on index sets of different sizes were compared."""


class MissingCarrier(ValueError):
    """iota-conjugation was requested on a map with no group attached."""


@dataclass(frozen=True)
class NotClosed:
    """Witness that a subset is not invariant under a solution map.

    r(x, y) left the subset in the named output coordinate, taking the
    offending value there.
    """

    x: int
    y: int
    coordinate: str
    value: int


class SolutionMap:
    """A candidate map r on pairs over {0, .., n-1}, stored as two tables.

    ``carrier`` optionally records the group whose inversion realises the
    involution iota(x, y) = (x^-1, y^-1); it is required only by
    :func:`conjugate_solution` with ``by="iota"``.
    """

    def __init__(self, left, right, provenance: str = "unspecified",
                 carrier: FiniteGroup | None = None):
        left = np.ascontiguousarray(left, dtype=np.int32)
        right = np.ascontiguousarray(right, dtype=np.int32)
        if left.ndim != 2 or left.shape[0] != left.shape[1]:
            raise ValueError(f"left table is not square: shape {left.shape}")
        if right.shape != left.shape:
            raise ValueError(
                f"table shapes differ: {left.shape} vs {right.shape}")
        n = left.shape[0]
        for label, table in (("left", left), ("right", right)):
            if n and (table.min() < 0 or table.max() >= n):
                raise ValueError(f"{label} table has entries outside 0..{n - 1}")
        if carrier is not None and carrier.order != n:
            raise SizeMismatch(
                f"carrier of order {carrier.order} attached to a size-{n} map")
        left.setflags(write=False)
        right.setflags(write=False)
        self.left = left
        self.right = right
        self.size = n
        self.provenance = provenance
        self.carrier = carrier

    def apply(self, x: int, y: int) -> tuple[int, int]:
        return int(self.left[x, y]), int(self.right[x, y])

    def __repr__(self) -> str:
        return f"SolutionMap(size={self.size}, provenance={self.provenance!r})"


@dataclass(frozen=True)
class SolutionReport:
    """Exhaustively measured properties of a :class:`SolutionMap`.

    Witness tuples are empty when the property holds.  The braid witness
    is the lexicographically first failing triple (x, y, z); the
    bijectivity witness is (x1, y1, x2, y2) for a pair collision; the
    nondegeneracy witnesses are (x, y1, y2) for a repeated row value of
    ``left`` and (y, x1, x2) for a repeated column value of ``right``.
    ``braid_counterexamples`` is filled only by a full scan.
    """

    size: int
    braid: bool
    braid_witness: tuple[int, ...] = ()
    bijective: bool = True
    bijective_witness: tuple[int, ...] = ()
    involutive: bool = True
    involutive_witness: tuple[int, ...] = ()
    left_nondegenerate: bool = True
    left_witness: tuple[int, ...] = ()
    right_nondegenerate: bool = True
    right_witness: tuple[int, ...] = ()
    braid_counterexamples: tuple[tuple[int, int, int], ...] | None = None


def _first_duplicate(row) -> tuple[int, int]:
    # Positions of the first repeated value, earliest pair in index order.
    order = np.argsort(row, kind="stable")
    hits = np.nonzero(row[order][1:] == row[order][:-1])[0]
    k = hits[0]
    return int(order[k]), int(order[k + 1])


def check_braid(r: SolutionMap, collect_all: bool = False) -> SolutionReport:
    """Evaluate both braid composites on all n^3 triples and report.

    The scan runs one x-slice at a time and stops at the first failing
    slice unless ``collect_all`` is set, in which case every failing
    triple is gathered (in lexicographic order).  The four pairwise
    properties are always measured in full.
    """
    left, right = r.left, r.right
    n = r.size
    braid_ok = True
    braid_witness: tuple[int, ...] = ()
    gathered: list[tuple[int, int, int]] = []
    for x in range(n):
        lx, rx = left[x], right[x]
        # r12 r23 r12 acting on (x, y, z), one (y, z) grid per coordinate.
        mid = left[rx]
        out1 = left[lx[:, None], mid]
        out2 = right[lx[:, None], mid]
        out3 = right[rx]
        # r23 r12 r23 on the same grid.
        alt1 = lx[left]
        hand = rx[left]
        alt2 = left[hand, right]
        alt3 = right[hand, right]
        bad = (out1 != alt1) | (out2 != alt2) | (out3 != alt3)
        if bad.any():
            braid_ok = False
            ys, zs = np.nonzero(bad)
            if not braid_witness:
                braid_witness = (x, int(ys[0]), int(zs[0]))
            if not collect_all:
                break
            gathered.extend((x, int(y), int(z)) for y, z in zip(ys, zs))

    bij_ok, bij_witness = True, ()
    codes = left.astype(np.int64).ravel() * n + right.ravel()
    order = np.argsort(codes, kind="stable")
    dups = np.nonzero(codes[order][1:] == codes[order][:-1])[0]
    if dups.size:
        bij_ok = False
        i, j = int(order[dups[0]]), int(order[dups[0] + 1])
        bij_witness = (i // n, i % n, j // n, j % n)

    inv_ok, inv_witness = True, ()
    grid_x, grid_y = np.indices((n, n))
    twice_bad = (left[left, right] != grid_x) | (right[left, right] != grid_y)
    if twice_bad.any():
        inv_ok = False
        xs, ys = np.nonzero(twice_bad)
        inv_witness = (int(xs[0]), int(ys[0]))

    arange = np.arange(n, dtype=np.int32)
    lnd_ok, lnd_witness = True, ()
    row_bad = np.nonzero((np.sort(left, axis=1) != arange).any(axis=1))[0]
    if row_bad.size:
        lnd_ok = False
        x = int(row_bad[0])
        y1, y2 = _first_duplicate(left[x])
        lnd_witness = (x, y1, y2)

    rnd_ok, rnd_witness = True, ()
    col_bad = np.nonzero((np.sort(right, axis=0) != arange[:, None]).any(axis=0))[0]
    if col_bad.size:
        rnd_ok = False
        y = int(col_bad[0])
        x1, x2 = _first_duplicate(right[:, y])
        rnd_witness = (y, x1, x2)

    return SolutionReport(
        size=n,
        braid=braid_ok,
        braid_witness=braid_witness,
        bijective=bij_ok,
        bijective_witness=bij_witness,
        involutive=inv_ok,
        involutive_witness=inv_witness,
        left_nondegenerate=lnd_ok,
        left_witness=lnd_witness,
        right_nondegenerate=rnd_ok,
        right_witness=rnd_witness,
        braid_counterexamples=tuple(gathered) if collect_all else None,
    )


def solution_from_semibrace(sb) -> SolutionMap:
    """The map (x, y) -> (x(x^-1 + y), [x(x^-1 + y)]^-1 xy) of a semibrace.

    Verified to satisfy the braid relation and to be left nondegenerate
    before returning.
    """
    dot = sb.dot
    n = dot.order
    arange = np.arange(n, dtype=np.int32)
    left = sb.L
    right = dot.table[dot.table[dot.inv[left], arange[:, None]], arange[None, :]]
    r = SolutionMap(left, right, provenance="semibrace", carrier=dot)
    report = check_braid(r)
    if not report.braid:
        raise AxiomViolated(
            f"semibrace map fails the braid relation at {report.braid_witness}")
    if not report.left_nondegenerate:
        raise AxiomViolated(
            f"semibrace map not left nondegenerate at {report.left_witness}")
    return r


def solution_from_bracoid(cb) -> SolutionMap:
    """Left nondegenerate solution attached to a bracoid containing a brace.

    r(x, y) = (rho_{x^-1}(y^-1)^-1, lambda_{y^-1}(x^-1)^-1), built from the
    translation tables of ``cb``.  The result is checked entry for entry
    against the route through the associated semibrace, then braid- and
    left-nondegeneracy-checked.
    """
    from . import semibraces

    lr = cb.lambda_rho
    G = cb.bracoid.G
    inv = G.inv
    pair = np.ix_(inv, inv)
    lam_g = cb.Hel[lr.lam]
    left = inv[lr.rho[pair]]
    right = inv[lam_g[pair].T]
    r = SolutionMap(left, right, provenance="bracoid", carrier=G)

    via_semibrace = solution_from_semibrace(semibraces.bracoid_to_semibrace(cb))
    if not solutions_equal(r, via_semibrace):
        raise AxiomViolated(
            "bracoid solution disagrees with its semibrace counterpart")
    report = check_braid(r)
    if not report.braid:
        raise AxiomViolated(
            f"bracoid map fails the braid relation at {report.braid_witness}")
    if not report.left_nondegenerate:
        raise AxiomViolated(
            f"bracoid map not left nondegenerate at {report.left_witness}")
    return r


def tilde_solution_from_bracoid(cb) -> SolutionMap:
    """Right nondegenerate companion map (x, y) -> (lambda_x(y), rho_y(x))."""
    lr = cb.lambda_rho
    left = cb.Hel[lr.lam]
    right = lr.rho.T
    r = SolutionMap(left, right, provenance="bracoid-tilde", carrier=cb.bracoid.G)
    report = check_braid(r)
    if not report.braid:
        raise AxiomViolated(
            f"companion map fails the braid relation at {report.braid_witness}")
    if not report.right_nondegenerate:
        raise AxiomViolated(
            f"companion map not right nondegenerate at {report.right_witness}")
    return r


def conjugate_solution(r: SolutionMap, by: str) -> SolutionMap:
    """Conjugate r by one of the involutions tau (swap) or iota (invert).

    tau needs no extra data; iota takes inverses from ``r.carrier`` and
    refuses to run without one.  Conjugating twice by the same involution
    restores the original tables.
    """
    if by == "tau":
        return SolutionMap(r.right.T, r.left.T,
                           provenance=f"tau({r.provenance})", carrier=r.carrier)
    if by == "iota":
        if r.carrier is None:
            raise MissingCarrier("iota-conjugation needs a carrier group")
        inv = r.carrier.inv
        pair = np.ix_(inv, inv)
        return SolutionMap(inv[r.left[pair]], inv[r.right[pair]],
                           provenance=f"iota({r.provenance})", carrier=r.carrier)
    raise ValueError(f"unknown involution {by!r} (expected 'tau' or 'iota')")


def restrict_solution(r: SolutionMap, subset) -> SolutionMap | NotClosed:
    """Restrict r to a subset of the index set, or report non-closure.

    The subset must be sorted and duplicate-free.  The first pair (in
    lexicographic order, left coordinate before right) whose image leaves
    the subset is returned as a :class:`NotClosed` witness.
    """
    sub = np.asarray(subset, dtype=np.int32)
    if sub.ndim != 1 or sub.size == 0:
        raise ValueError("subset must be a nonempty 1-d index list")
    if (np.diff(sub) <= 0).any():
        raise ValueError("subset must be strictly increasing")
    if sub[0] < 0 or sub[-1] >= r.size:
        raise ValueError("subset indices out of range")
    pos = np.full(r.size, -1, dtype=np.int32)
    pos[sub] = np.arange(sub.size, dtype=np.int32)
    grid = np.ix_(sub, sub)
    sub_left = r.left[grid]
    sub_right = r.right[grid]
    for table, label in ((sub_left, "left"), (sub_right, "right")):
        escaped = pos[table] < 0
        if escaped.any():
            xs, ys = np.nonzero(escaped)
            i, j = int(xs[0]), int(ys[0])
            return NotClosed(int(sub[i]), int(sub[j]), label,
                             int(table[i, j]))
    return SolutionMap(pos[sub_left], pos[sub_right],
                       provenance=f"restrict({r.provenance})")


def solutions_equal(r1: SolutionMap, r2: SolutionMap) -> bool:
    """Entry-wise equality of both tables."""
    if r1.size != r2.size:
        raise SizeMismatch(f"sizes differ: {r1.size} vs {r2.size}")
    return bool(np.array_equal(r1.left, r2.left)
                and np.array_equal(r1.right, r2.right))


def solution_isomorphism(r1: SolutionMap, r2: SolutionMap) -> list[int] | None:
    """Search for a bijection f with (f x f) r1 = r2 (f x f), or None.

    Backtracking with forced-assignment propagation; deliberately capped
    at size 16, since equality is the only large-scale comparison needed.
    Returns the lexicographically least image list when one exists.
    """
    if r1.size != r2.size:
        raise SizeMismatch(f"sizes differ: {r1.size} vs {r2.size}")
    n = r1.size
    if n > ISOMORPHISM_CAP:
        raise CapExceeded(f"isomorphism search capped at {ISOMORPHISM_CAP}")
    l1, r1t = r1.left, r1.right
    l2, r2t = r2.left, r2.right

    def propagate(perm: list[int], used: list[bool]) -> bool:
        # Images of assigned pairs force further assignments; loop to fixpoint.
        changed = True
        while changed:
            changed = False
            assigned = [a for a in range(n) if perm[a] >= 0]
            for a in assigned:
                for b in assigned:
                    for src, dst in ((l1, l2), (r1t, r2t)):
                        t = int(src[a, b])
                        w = int(dst[perm[a], perm[b]])
                        if perm[t] < 0:
                            if used[w]:
                                return False
                            perm[t] = w
                            used[w] = True
                            changed = True
                        elif perm[t] != w:
                            return False
        return True

    def extend(perm: list[int], used: list[bool]) -> list[int] | None:
        try:
            i = perm.index(-1)
        except ValueError:
            return perm
        for v in range(n):
            if used[v]:
                continue
            trial = perm.copy()
            trial_used = used.copy()
            trial[i] = v
            trial_used[v] = True
            if propagate(trial, trial_used):
                found = extend(trial, trial_used)
                if found is not None:
                    return found
        return None

    return extend([-1] * n, [False] * n)
