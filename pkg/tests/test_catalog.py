import random

import numpy as np
import pytest

from ybelab.braces import verify_skew_brace
from ybelab.catalog import (
    CATALOG_NAMES,
    GL3F2_ORDER,
    SearchExhausted,
    UnknownExample,
    abelianmap_instance,
    acceptance_instances,
    build_example,
    cyclic_pq_instance,
    gl3f2_instance,
    promote_brace,
    seeded_braces,
    semidirect_instance,
    trivial_brace_instance,
)
from ybelab.groups import NotPrime, is_transitive, stabilizer


def test_trivial_brace_arities():
    inst = trivial_brace_instance((4,))
    assert inst.brace.order == 4
    inst = trivial_brace_instance((3, 2))
    assert inst.brace.order == 6
    assert not inst.brace.dot.is_abelian
    with pytest.raises(ValueError):
        trivial_brace_instance((1,))
    with pytest.raises(ValueError):
        trivial_brace_instance((2, 3, 4))


def test_semidirect_frozen_entry(semidirect32):
    # (1,0).(1,1) = (2,1) under the inverting action: index 2 . 3 = 5.
    assert semidirect32.brace.dot.table[2, 3] == 5
    assert semidirect32.brace.star.is_abelian
    assert semidirect32.detail["ideal"] == (0, 1)


def test_semidirect_rejects_bad_parameters():
    with pytest.raises(NotPrime):
        semidirect_instance(4, 2)
    with pytest.raises(ValueError):
        semidirect_instance(5, 3)  # 3 does not divide 4


def test_abelianmap_structure(abelianmap35):
    B = abelianmap35.brace
    assert B.order == 60
    assert np.array_equal(B.abelian_data.phi, 4 * (np.arange(60) // 4))
    assert abelianmap35.bracoid.N.order == 10
    assert len(abelianmap35.detail["ideal"]) == 6
    assert abelianmap35.contained.H.order == 10


def test_abelianmap_rejects_bad_parameters():
    with pytest.raises(ValueError):
        abelianmap_instance(3, 3)
    with pytest.raises(ValueError):
        abelianmap_instance(2, 5)


def test_gl3f2_instance_is_deterministic_per_seed(gl3f2):
    assert gl3f2.bracoid.G.order == GL3F2_ORDER
    assert gl3f2.detail["hol_order"] == 1344
    assert gl3f2.detail["stabilizer"] == 21
    assert is_transitive(gl3f2.bracoid.act)
    again = gl3f2_instance(seed=0)
    assert again.detail == gl3f2.detail
    assert np.array_equal(again.bracoid.G.table, gl3f2.bracoid.G.table)


def test_gl3f2_search_can_exhaust():
    with pytest.raises(SearchExhausted):
        gl3f2_instance(seed=0, attempt_cap=2)


def test_cyclic_pq_quantities(cyclicpq52):
    assert cyclicpq52.detail["twist"] == 7
    assert cyclicpq52.detail["J_order"] == 20
    assert cyclicpq52.detail["stabilizer"] == 2
    assert stabilizer(cyclicpq52.bracoid.act, 0).order == 2
    assert cyclicpq52.contained is None


def test_cyclic_pq_rejects_bad_parameters():
    with pytest.raises(ValueError):
        cyclic_pq_instance(7, 2)  # 4 does not divide 6
    with pytest.raises(NotPrime):
        cyclic_pq_instance(9, 2)


def test_promote_brace_keeps_the_tables(semidirect32):
    B = semidirect32.brace
    cb = promote_brace(B)
    assert cb.S.elements == (0,)
    assert np.array_equal(cb.starH, B.star.table)
    assert np.array_equal(cb.brace.dot.table, B.dot.table)


def test_seeded_braces_are_valid_and_reproducible():
    braces = seeded_braces(random.Random(11), 25)
    assert len(braces) == 25
    assert {b.order for b in braces} <= set(range(2, 17))
    for b in braces:
        assert verify_skew_brace(b.star.table, b.dot.table).ok
    again = seeded_braces(random.Random(11), 25)
    for a, b in zip(braces, again):
        assert np.array_equal(a.star.table, b.star.table)
        assert np.array_equal(a.dot.table, b.dot.table)
    # Relabelling really happens: some draw differs from every stock table.
    mixed = seeded_braces(random.Random(3), 10)
    assert any(not np.array_equal(b.gamma, np.tile(np.arange(b.order),
                                                   (b.order, 1)))
               for b in mixed)


def test_build_example_dispatch(gl3f2):
    inst = build_example("semidirect", (3, 2))
    assert inst.name == "semidirect"
    inst = build_example("trivial-brace")
    assert inst.params == (3, 2)
    assert build_example("gl3f2").detail == gl3f2.detail
    with pytest.raises(UnknownExample):
        build_example("nope")


def test_acceptance_battery_composition():
    instances = acceptance_instances(seed=0)
    assert [i.name for i in instances] == \
        ["trivial-brace"] * 6 + ["semidirect", "abelianmap", "gl3f2",
                                 "cyclic-pq"]
    assert sorted(CATALOG_NAMES) == sorted({i.name for i in instances})
