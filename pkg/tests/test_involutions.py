import pytest

from reflekt.errors import ParameterError, UnsupportedKeyError
from reflekt.services.characters import ClassFunction, irr_degree_list, reflection_gelfand_predicate
from reflekt.services.group import GroupKey, Perm, WreathElement, get_group
from reflekt.services.involutions import (
    ModelVariant,
    brute_gim_search,
    build_model_rep,
    check_coset_representatives,
    chi_pm_check,
    commutator_obstruction,
    counting_char,
    delta_parity_preserved,
    extract_gim,
    gelfand_check,
    gim_grp2,
    grp2_centralizer_closed_forms,
    induce_linear,
    lambda_closed_form,
    model_char_grp2,
    perm_stats,
    rep_character,
    sign_apr,
    sign_twisted,
    twisted_decomposition,
    verify_gim,
)
from reflekt.services.maps import inverse_transpose_map
from reflekt.services.subgroups import linear_characters


def tau_of(key: GroupKey):
    return inverse_transpose_map(get_group(key))


def test_twisted_decomposition():
    key = GroupKey(2, 1, 2)
    decomposition = twisted_decomposition(key, tau_of(key))
    assert len(decomposition.involutions) == 6
    assert len(decomposition.orbits) == 4
    key = GroupKey(6, 2, 2)
    decomposition = twisted_decomposition(key, tau_of(key))
    assert len(decomposition.orbits) == 4
    assert len(decomposition.involutions) == sum(irr_degree_list(key))
    for omega in decomposition.reps:
        assert len(decomposition.centralizers[omega]) * len(
            decomposition.orbits[decomposition.orbit_index(omega)]
        ) == key.order


def test_twisted_decomposition_rejects_foreign_tau():
    with pytest.raises(ParameterError):
        twisted_decomposition(GroupKey(2, 1, 2), tau_of(GroupKey(2, 2, 2)))


def test_counting_char():
    key = GroupKey(6, 2, 2)
    chi = counting_char(key, tau_of(key))
    assert chi(WreathElement.identity(6, 2)) == 24
    assert chi(WreathElement.of((2, 4), r=6)) == 6
    assert chi(WreathElement.of((1, 1), r=6)) == 0


@pytest.mark.parametrize("key", [GroupKey(2, 1, 3), GroupKey(6, 2, 2), GroupKey(3, 3, 3)])
def test_counting_char_sums_to_order(key):
    group = get_group(key)
    chi = counting_char(key, tau_of(key))
    assert sum(size * value for size, value in zip(group.class_sizes, chi.as_integers())) == key.order


def test_counting_char_matches_closed_form():
    key = GroupKey(6, 2, 2)
    chi = counting_char(key, tau_of(key))
    for g in get_group(key).elements:
        assert chi(g) == model_char_grp2(6, 2, g)


def test_perm_stats():
    stats = perm_stats(Perm.from_one_line([2, 1, 3]))
    assert stats.inversions == {(1, 2)}
    assert stats.pairs == {(1, 2)}
    assert stats.fixed == (3,)
    stats = perm_stats(Perm.from_one_line([3, 2, 1]))
    assert stats.inversions == {(1, 2), (1, 3), (2, 3)}
    assert stats.pairs == {(1, 3)}
    assert stats.fixed == (2,)


def test_sign_apr():
    key = GroupKey(2, 1, 2)
    s1 = WreathElement.of((0, 0), (2, 1), r=2)
    assert sign_apr(WreathElement.identity(2, 2), s1, key) == 1
    assert sign_apr(s1, s1, key) == -1
    t = WreathElement.of((1, 0), r=2)
    assert sign_apr(t, t, key) == -1
    assert sign_apr(t, WreathElement.identity(2, 2), key) == 1
    with pytest.raises(ParameterError):
        sign_apr(s1, WreathElement.of((1, 0), (2, 1), r=3), GroupKey(3, 1, 2))


def test_sign_twisted_preconditions():
    omega = WreathElement.of((0,), r=4)
    assert sign_twisted(WreathElement.of((2,), r=4), omega, GroupKey(4, 2, 1)) == 1
    assert sign_twisted(WreathElement.of((2,), r=4), WreathElement.of((2,), r=4), GroupKey(4, 2, 1)) == -1
    with pytest.raises(ParameterError):
        sign_twisted(omega, omega, GroupKey(4, 4, 1))
    with pytest.raises(ParameterError):
        sign_twisted(omega, WreathElement.of((1,), r=4), GroupKey(4, 2, 1))


def test_model_rep_of_b2():
    rep = build_model_rep(ModelVariant.APR, GroupKey(2, 1, 2))
    assert rep.dimension == 6
    chi = rep_character(rep)
    assert chi(WreathElement.of((0, 0), (2, 1), r=2)) == 0
    assert chi.degree == 6


def test_apr_needs_p_one():
    with pytest.raises(ParameterError):
        build_model_rep("apr", GroupKey(4, 2, 2))
    with pytest.raises(ParameterError):
        build_model_rep("twisted", GroupKey(4, 2, 2))
    with pytest.raises(ValueError):
        build_model_rep("mirror", GroupKey(2, 1, 2))


@pytest.mark.parametrize(
    "key",
    [
        GroupKey(2, 1, 3),
        GroupKey(3, 1, 2),
        GroupKey(4, 1, 2),
        GroupKey(1, 1, 4),
        pytest.param(GroupKey(2, 1, 4), marks=pytest.mark.slow),
    ],
)
def test_apr_is_gelfand(key):
    result = gelfand_check("apr", key)
    assert result.passed
    assert result.symmetric_equal
    assert result.model_character == result.counting_character


def test_restricted_fails_where_twisted_succeeds():
    key = GroupKey(4, 2, 1)
    assert not gelfand_check("restricted", key).passed
    twisted = gelfand_check("twisted", key)
    assert twisted.passed
    assert twisted.model_character.as_integers() == twisted.counting_character.as_integers()


@pytest.mark.parametrize("key", [GroupKey(3, 3, 2), GroupKey(2, 2, 3), GroupKey(4, 4, 3), GroupKey(6, 3, 2)])
def test_restricted_succeeds_when_predicate_holds(key):
    assert reflection_gelfand_predicate(key)
    assert gelfand_check("restricted", key).passed


def test_gelfand_check_rejects_large_gcd():
    with pytest.raises(UnsupportedKeyError):
        gelfand_check("restricted", GroupKey(3, 3, 3))


@pytest.mark.slow
def test_gelfand_variants_on_rank_three():
    key = GroupKey(4, 2, 3)
    assert delta_parity_preserved(key)
    assert not gelfand_check("restricted", key).passed
    assert gelfand_check("twisted", key).passed
    assert gelfand_check("restricted", GroupKey(6, 2, 3)).passed


def test_delta_parity_preserved():
    assert delta_parity_preserved(GroupKey(4, 2, 1))
    assert delta_parity_preserved(GroupKey(8, 2, 1))


def test_extract_and_verify_gim():
    key = GroupKey(2, 1, 2)
    candidate = extract_gim(build_model_rep("apr", key))
    assert len(candidate) == 4
    assert all(character.is_sign_valued for _, character in candidate.entries)
    assert verify_gim(candidate, key, tau_of(key))


@pytest.mark.slow
@pytest.mark.parametrize(
    "key, variant",
    [(GroupKey(6, 2, 3), "restricted"), (GroupKey(4, 2, 3), "twisted"), (GroupKey(8, 2, 3), "twisted")],
)
def test_gelfand_models_yield_involution_models(key, variant):
    rep = build_model_rep(variant, key)
    candidate = extract_gim(rep)
    assert len(candidate) == len(twisted_decomposition(key, tau_of(key)).orbits)
    assert verify_gim(candidate, key, tau_of(key))


def test_verify_gim_rejects_incomplete_candidates():
    key = GroupKey(2, 1, 2)
    candidate = extract_gim(build_model_rep("apr", key))
    partial = type(candidate)(candidate.entries[:-1])
    with pytest.raises(ParameterError):
        verify_gim(partial, key, tau_of(key))


@pytest.mark.parametrize("r, p", [(2, 2), (6, 2), (10, 2), (6, 6)])
def test_gim_grp2(r, p):
    key = GroupKey(r, p, 2)
    candidate = gim_grp2(r, p)
    assert len(candidate) == 4
    assert verify_gim(candidate, key, tau_of(key))
    assert check_coset_representatives(r, p)


def test_gim_grp2_details():
    candidate = gim_grp2(2, 2)
    assert candidate.entries[3][0] == WreathElement.of((1, 1), (2, 1), r=2)
    candidate = gim_grp2(6, 2)
    assert len(candidate.entries[2][1].domain) == 12
    lambda2 = candidate.entries[1][1]
    assert lambda2(WreathElement.of((3, 3), r=6)) == -1
    assert lambda2(WreathElement.of((5, 1), (2, 1), r=6)) == -1
    assert lambda2(WreathElement.of((2, 4), (2, 1), r=6)) == 1
    closed = grp2_centralizer_closed_forms(6, 2)
    assert len(closed[1]) == len(closed[2]) == 4


def test_gim_grp2_preconditions():
    for r, p in ((4, 2), (3, 3), (6, 3)):
        with pytest.raises(ParameterError):
            gim_grp2(r, p)


@pytest.mark.parametrize("r, p", [(6, 2), (6, 6)])
def test_lambda_closed_forms(r, p):
    key = GroupKey(r, p, 2)
    candidate = gim_grp2(r, p)
    for i, (_, character) in enumerate(candidate.entries, start=1):
        induced = induce_linear(character, key)
        for g in get_group(key).elements:
            assert induced(g) == lambda_closed_form(i, r, p, g)
    for g in get_group(key).elements:
        total = sum(lambda_closed_form(i, r, p, g) for i in range(1, 5))
        assert total == model_char_grp2(r, p, g)


def test_induce_linear_regular():
    key = GroupKey(3, 1, 2)
    identity = frozenset({WreathElement.identity(3, 2)})
    (trivial,) = linear_characters(identity, 3)
    regular = induce_linear(trivial, key)
    assert regular.degree == key.order
    assert regular.as_integers().count(0) == len(get_group(key).classes) - 1


def test_chi_pm_check():
    result = chi_pm_check(GroupKey(4, 2, 2))
    assert result.passed and not result.swapped
    result = chi_pm_check(GroupKey(2, 2, 1))
    assert result.passed and result.swapped
    assert isinstance(result.plus, ClassFunction)
    with pytest.raises(UnsupportedKeyError):
        chi_pm_check(GroupKey(3, 1, 2))


@pytest.mark.slow
def test_chi_pm_check_swaps_on_odd_rank():
    result = chi_pm_check(GroupKey(6, 2, 3))
    assert result.passed and result.swapped
    assert chi_pm_check(GroupKey(2, 1, 3)).passed


def test_commutator_obstruction():
    assert commutator_obstruction(GroupKey(4, 2, 2))
    with pytest.raises(ParameterError):
        commutator_obstruction(GroupKey(6, 2, 2))


@pytest.mark.slow
def test_commutator_obstruction_on_rank_four():
    assert commutator_obstruction(GroupKey(4, 2, 4))


@pytest.mark.parametrize(
    "key, found",
    [
        (GroupKey(2, 2, 2), True),
        (GroupKey(4, 2, 2), False),
        (GroupKey(6, 2, 2), True),
        (GroupKey(2, 2, 3), True),
    ],
)
def test_brute_gim_search(key, found):
    tau = tau_of(key)
    candidate = brute_gim_search(key, tau)
    assert (candidate is not None) is found
    if found:
        assert verify_gim(candidate, key, tau)
