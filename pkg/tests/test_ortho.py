from __future__ import annotations

import pytest

from helpers import family_as_sets, naive_orthocomplementations
from qll.atomset import AtomSet
from qll.budgets import DEFAULT_BUDGETS
from qll.closure import powerset_space
from qll.errors import BudgetExceeded, ContractViolation, InputError
from qll.geometry import mo_lattice
from qll.ortho import (
    OrthogonalityRelation,
    OrthoMap,
    cal0sym_condition,
    find_orthocomplementations,
    find_orthomodularity_violation,
    four_atom_condition,
    is_orthomodular,
    ortho_from_atom_orthogonality,
    third_atom_condition,
    verify_orthocomplementation,
)


def test_relation_must_be_irreflexive_and_symmetric():
    with pytest.raises(InputError):
        OrthogonalityRelation(2, (0b01, 0b00))
    with pytest.raises(InputError):
        OrthogonalityRelation(2, (0b10, 0b00))
    rel = OrthogonalityRelation.from_pairs(3, [(0, 1)])
    assert rel.are_orthogonal(0, 1) and rel.are_orthogonal(1, 0)
    assert not rel.are_orthogonal(0, 2)
    assert rel.pairs() == ((0, 1),)


def test_mo2_ortho_count_matches_brute_force(mo2):
    res = find_orthocomplementations(mo2.space)
    assert res.exhaustive
    naive = naive_orthocomplementations(family_as_sets(mo2.space), range(4))
    assert len(res.maps) == len(naive) == 3

    got = {
        tuple(frozenset(img.members) for img in m.atom_image) for m in res.maps
    }
    want = {
        tuple(image[a] for a in range(4)) for image in naive
    }
    assert got == want


def test_mo2_relation_induces_valid_map(mo2):
    cons = ortho_from_atom_orthogonality(mo2.space, mo2.relation)
    assert cons.ok
    assert verify_orthocomplementation(mo2.space, cons.ortho).ok


def test_verifier_rejects_wrong_maps(mo2):
    # identity atom assignment: images are coatoms here (the singletons) but
    # p <= p' fails the meet law
    bad = OrthoMap(mo2.space, tuple(AtomSet.singleton(4, i) for i in range(4)))
    verdict = verify_orthocomplementation(mo2.space, bad)
    assert not verdict.ok
    assert verdict.law == "meet_is_bottom"


def test_verifier_rejects_non_coatom_image(mo2):
    with pytest.raises(InputError):
        verify_orthocomplementation(
            mo2.space,
            OrthoMap(mo2.space, tuple(AtomSet.full(4) for _ in range(4))),
        )


def test_boolean_has_unique_ortho():
    sp = powerset_space(3)
    res = find_orthocomplementations(sp)
    assert res.exhaustive and len(res.maps) == 1
    m = res.maps[0]
    for i in range(3):
        assert m.atom_image[i].members == tuple(j for j in range(3) if j != i)


def test_sep_has_nine_orthos_including_cross_map(sep_mm, hash_ortho_mm):
    res = find_orthocomplementations(sep_mm.space)
    assert res.exhaustive
    assert len(res.maps) == 9
    assert any(m.image_masks() == hash_ortho_mm.image_masks() for m in res.maps)


def test_cross_map_images_are_crosses(sep_mm, hash_ortho_mm, mo2):
    # (p1,p2)' must be (p1' x full) union (full x p2'); p' in mo2 is the
    # opposite atom of the orthogonal pair
    grid = sep_mm.grid
    partner = {0: 1, 1: 0, 2: 3, 3: 2}
    for k in range(16):
        p1, p2 = grid.unindex(k)
        want = grid.cross_mask(1 << partner[p1], 1 << partner[p2])
        assert hash_ortho_mm.atom_image[k].mask == want


def test_top_search_certificate(top_mm):
    res = find_orthocomplementations(top_mm.space)
    assert res.exhaustive and not res.maps
    assert res.certificate["kind"] == "atom_coatom_count_mismatch"
    assert res.certificate["atoms"] == 16
    assert res.certificate["coatoms"] == 40


def test_force_search_confirms_certificate(star_mm):
    res = find_orthocomplementations(star_mm.space, force_search=True)
    assert res.exhaustive and not res.maps
    assert res.certificate is not None
    assert res.nodes > 0


def test_search_node_budget(sep_mm):
    with pytest.raises(BudgetExceeded):
        find_orthocomplementations(
            sep_mm.space, budgets=DEFAULT_BUDGETS.with_overrides(node_cap=3)
        )


def test_search_limit_stops_early(sep_mm):
    res = find_orthocomplementations(sep_mm.space, limit=2)
    assert len(res.maps) == 2
    assert not res.exhaustive


def test_construction_failure_is_a_result(mo2):
    rel = OrthogonalityRelation.from_pairs(4, [(0, 1), (0, 2)])
    cons = ortho_from_atom_orthogonality(mo2.space, rel)
    assert not cons.ok
    assert cons.failure["law"] == "image_not_coatom"


def test_mo2_is_orthomodular(mo2):
    cons = ortho_from_atom_orthogonality(mo2.space, mo2.relation)
    assert find_orthomodularity_violation(mo2.space, cons.ortho) is None
    assert is_orthomodular(mo2.space, cons.ortho)


def test_sep_is_not_orthomodular(sep_mm, hash_ortho_mm):
    viol = find_orthomodularity_violation(sep_mm.space, hash_ortho_mm)
    assert viol is not None
    data = viol.to_json()
    # the witness satisfies a <= b but b != a v (b ^ a')
    assert set(data) >= {"a", "b", "rejoin"}
    assert not is_orthomodular(sep_mm.space, hash_ortho_mm)


def test_orthomodularity_needs_valid_map(mo2):
    bad = OrthoMap(mo2.space, tuple(AtomSet.singleton(4, i) for i in range(4)))
    with pytest.raises(ContractViolation):
        find_orthomodularity_violation(mo2.space, bad)


def test_atom_conditions_frozen_values(mo2):
    assert third_atom_condition(mo2.space)
    assert four_atom_condition(mo2.space)
    assert cal0sym_condition(mo2.space)

    # powersets never qualify: the join of two atoms is just the pair
    for n in (2, 4):
        b = powerset_space(n)
        assert not third_atom_condition(b)
        assert not four_atom_condition(b)
        assert not cal0sym_condition(b)

    mo3_space, _ = mo_lattice(3)
    assert third_atom_condition(mo3_space)
    assert four_atom_condition(mo3_space)
    assert cal0sym_condition(mo3_space)


def test_ortho_map_json_roundtrip(mo2):
    cons = ortho_from_atom_orthogonality(mo2.space, mo2.relation)
    data = cons.ortho.to_json()
    back = OrthoMap.from_json(mo2.space, data)
    assert back.image_masks() == cons.ortho.image_masks()
