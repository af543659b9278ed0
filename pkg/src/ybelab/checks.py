"""Pass/fail report records shared by the structure verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class AxiomViolated(ValueError):
    """Raised when tables offered as a verified structure break a defining law."""


@dataclass(frozen=True)
class Check:
    """One verified axiom: name, outcome, and the first counterexample if any."""

    name: str
    ok: bool
    witness: tuple[int, ...] = ()
    detail: str = ""

    def describe(self) -> str:
        if self.ok:
            return f"{self.name} PASS"
        parts = [f"{self.name} FAIL"]
        if self.witness:
            parts.append("at " + ",".join(str(w) for w in self.witness))
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)


@dataclass(frozen=True)
class Report:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def first_failure(self) -> Check | None:
        bad = self.failures()
        return bad[0] if bad else None

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def group_table_checks(table, prefix: str = "", check_assoc: bool = True) -> list[Check]:
    """Axiom checks for a raw multiplication table with identity expected at 0.

    Returns latin / identity / associativity / inverses checks in that order.
    If the table is not even a Latin square over 0..n-1 the dependent checks
    are reported as failed without being evaluated.
    """
    arr = np.asarray(table)
    checks: list[Check] = []
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        bad = Check(prefix + "latin", False, (), f"table shape {arr.shape} is not square")
        return [bad] + [
            Check(prefix + nm, False, (), "not evaluated: malformed table")
            for nm in ("identity", "associativity", "inverses")
        ]
    n = arr.shape[0]
    idx = np.arange(n)

    in_range = bool(((arr >= 0) & (arr < n)).all())
    latin_ok = in_range
    latin_witness: tuple[int, ...] = ()
    latin_detail = ""
    if not in_range:
        r, c = map(int, np.argwhere((arr < 0) | (arr >= n))[0])
        latin_witness, latin_detail = (r, c), f"entry {int(arr[r, c])} out of range"
    else:
        row_ok = (np.sort(arr, axis=1) == idx).all(axis=1)
        col_ok = (np.sort(arr, axis=0) == idx[:, None]).all(axis=0)
        if not row_ok.all():
            r = int(np.argmin(row_ok))
            latin_ok, latin_witness, latin_detail = False, (r,), f"row {r} is not a permutation"
        elif not col_ok.all():
            c = int(np.argmin(col_ok))
            latin_ok, latin_witness, latin_detail = False, (c,), f"column {c} is not a permutation"
    checks.append(Check(prefix + "latin", latin_ok, latin_witness, latin_detail))

    if not in_range:
        checks.extend(
            Check(prefix + nm, False, (), "not evaluated: entries out of range")
            for nm in ("identity", "associativity", "inverses")
        )
        return checks

    e = find_identity(arr)
    if e is None:
        checks.append(Check(prefix + "identity", False, (), "no two-sided identity"))
    elif e != 0:
        checks.append(Check(prefix + "identity", False, (e,), f"identity at index {e}, not 0"))
    else:
        checks.append(Check(prefix + "identity", True))

    assoc_ok = True
    assoc_witness: tuple[int, ...] = ()
    assoc_detail = ""
    if check_assoc:
        for a in range(n):
            lhs = arr[arr[a]]          # (b, c) -> (a*b)*c
            rhs = arr[a][arr]          # (b, c) -> a*(b*c)
            bad = lhs != rhs
            if bad.any():
                b, c = map(int, np.argwhere(bad)[0])
                assoc_ok, assoc_witness = False, (a, b, c)
                break
    else:
        assoc_detail = "skipped"
    checks.append(Check(prefix + "associativity", assoc_ok, assoc_witness, assoc_detail))

    has_right = (arr == 0).any(axis=1)
    if not has_right.all():
        a = int(np.argmin(has_right))
        checks.append(Check(prefix + "inverses", False, (a,), "no right inverse"))
    else:
        rinv = np.argmax(arr == 0, axis=1)
        two_sided = arr[rinv, idx] == 0
        if two_sided.all():
            checks.append(Check(prefix + "inverses", True))
        else:
            a = int(np.argmin(two_sided))
            checks.append(Check(prefix + "inverses", False, (a,), "right inverse is not left inverse"))
    return checks


def find_identity(table) -> int | None:
    """Index of the two-sided identity of a raw table, or None."""
    arr = np.asarray(table)
    n = arr.shape[0]
    idx = np.arange(n)
    rows = (arr == idx).all(axis=1)
    cols = (arr == idx[:, None]).all(axis=0)
    both = np.nonzero(rows & cols)[0]
    return int(both[0]) if both.size else None
