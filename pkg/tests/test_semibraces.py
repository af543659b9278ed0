import numpy as np
import pytest

from ybelab.braces import AxiomViolated, SkewBrace, trivial_brace
from ybelab.bracoids import contains_brace, from_strong_left_ideal
from ybelab.catalog import promote_brace
from ybelab.groups import FiniteGroup, cyclic_group, semidirect_product
from ybelab.semibraces import (
    L_map,
    Semibrace,
    bracoid_to_semibrace,
    decompose,
    roundtrip_check,
    semibrace_to_bracoid,
    verify_semibrace,
)


# Oracle: the coupling relation checked one triple at a time.
def _first_relation_failure(dot, plus):
    n = dot.order
    for x in range(n):
        xi = dot.inv[x]
        for y in range(n):
            for z in range(n):
                lhs = dot.table[x, plus[y, z]]
                rhs = plus[dot.table[x, y], dot.table[x, plus[xi, z]]]
                if lhs != rhs:
                    return (x, y, z)
    return None


def _sd32():
    return semidirect_product(cyclic_group(3), cyclic_group(2),
                              np.array([[0, 1, 2], [0, 2, 1]], dtype=np.int32))


def _relabelled_c4():
    base = cyclic_group(4)
    perm = np.array([0, 1, 3, 2], dtype=np.int32)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(4)
    return FiniteGroup(perm[base.table[np.ix_(inv, inv)]])


def test_plus_equal_dot_is_a_semibrace():
    G = _sd32()
    assert _first_relation_failure(G, G.table) is None
    sb = Semibrace(G, G.table)
    # x(x^-1 + y) collapses to y when + and . coincide.
    assert np.array_equal(sb.L, np.tile(np.arange(6), (6, 1)))


def test_opposite_plus_is_a_semibrace_with_conjugation_L():
    G = _sd32()
    plus = np.ascontiguousarray(G.table.T)
    assert _first_relation_failure(G, plus) is None
    sb = Semibrace(G, plus)
    for x in range(6):
        for y in range(6):
            assert L_map(sb, x)[y] == G.mul(G.mul(x, y), G.inv[x])


def test_relation_oracle_matches_verify_witness():
    dot, plus = _relabelled_c4(), cyclic_group(4).table
    witness = _first_relation_failure(dot, plus)
    assert witness == (1, 0, 2)
    report = verify_semibrace(dot.table, plus)
    assert not report.ok
    failure = report.first_failure()
    assert failure.name == "compat" and tuple(failure.witness) == witness
    with pytest.raises(AxiomViolated):
        Semibrace(dot, plus)


def test_constant_rows_fail_cancellativity():
    G = cyclic_group(3)
    plus = np.zeros((3, 3), dtype=np.int32)
    report = verify_semibrace(G.table, plus)
    failed = [c.name for c in report.checks if not c.ok]
    assert "plus.cancellative" in failed
    # The relation is skipped rather than run on junk.
    compat = [c for c in report.checks if c.name == "compat"][0]
    assert not compat.ok
    assert "not evaluated" in (compat.detail or "")


def test_identity_row_is_forced():
    G = _sd32()
    sb = Semibrace(G, np.ascontiguousarray(G.table.T))
    assert list(sb.plus[0]) == list(range(6))
    assert list(L_map(sb, 0)) == list(range(6))


def test_promoted_brace_plus_is_the_opposite_star(semidirect32):
    for B in (trivial_brace(_sd32()), semidirect32.brace):
        sb = bracoid_to_semibrace(promote_brace(B))
        assert np.array_equal(sb.plus, B.star.table.T)
        opposite = SkewBrace(B.star.opposite(), B.dot)
        assert np.array_equal(sb.L, opposite.gamma)


def test_decompose_trivial_and_brace_extremes():
    B = trivial_brace(cyclic_group(4))
    # Quotient by everything: one point, all of G stabilizes.
    cb = contains_brace(from_strong_left_ideal(B, B.dot.subgroup(range(4))))
    sb = bracoid_to_semibrace(cb)
    dec = decompose(sb)
    assert dec.Hpart == (0,) and dec.Epart == (0, 1, 2, 3)
    assert np.array_equal(sb.plus, np.tile(np.arange(4), (4, 1)))
    # Promoted brace: everything is G+e, only e is idempotent.
    dec = decompose(bracoid_to_semibrace(promote_brace(B)))
    assert dec.Hpart == (0, 1, 2, 3) and dec.Epart == (0,)


def test_decompose_catalog_sizes(semidirect32, gl3f2):
    sb = bracoid_to_semibrace(semidirect32.contained)
    dec = decompose(sb)
    assert len(dec.Epart) == 2 and len(dec.Hpart) == 3
    dec = decompose(bracoid_to_semibrace(gl3f2.contained))
    assert len(dec.Hpart) == 8 and len(dec.Epart) == 21


def test_trivial_brace_semibrace_is_the_opposite_group():
    G = _sd32()
    sb = bracoid_to_semibrace(promote_brace(trivial_brace(G)))
    for x in range(6):
        for y in range(6):
            assert sb.plus[x, y] == G.mul(y, x)


def test_semibrace_to_bracoid_collapses_projection():
    G = _sd32()
    sb = Semibrace(G, np.tile(np.arange(6, dtype=np.int32), (6, 1)))
    cb = semibrace_to_bracoid(sb)
    assert cb.bracoid.N.order == 1
    assert cb.S.elements == tuple(range(6))


def test_semibrace_to_bracoid_of_a_brace_has_trivial_stabilizer():
    sb = Semibrace(_sd32(), np.ascontiguousarray(_sd32().table.T))
    cb = semibrace_to_bracoid(sb)
    assert cb.S.elements == (0,)
    assert cb.H.elements == tuple(range(6))


def test_roundtrips_are_table_identities(semidirect32, abelianmap35):
    for cb in (semidirect32.contained, abelianmap35.contained):
        assert roundtrip_check(cb)
        assert roundtrip_check(bracoid_to_semibrace(cb))


def test_roundtrip_check_rejects_other_types():
    with pytest.raises(TypeError):
        roundtrip_check(cyclic_group(4))


def test_verify_catches_a_corrupted_entry():
    G = _sd32()
    plus = np.ascontiguousarray(G.table.T)
    plus[5, 4], plus[5, 3] = plus[5, 3], plus[5, 4]
    report = verify_semibrace(G.table, plus)
    assert not report.ok
