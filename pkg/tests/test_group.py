import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import SymmetricGroup

from reflekt.errors import ParameterError, SizeError
from reflekt.services.group import (
    GroupKey,
    Perm,
    WreathElement,
    c_word,
    center,
    conjugates,
    decompose,
    element_order,
    enumerate_group,
    generating_set,
    get_group,
    invert,
    is_member,
    multiply,
    power,
    predicted_center,
    standard_generators,
    to_matrix,
)
from reflekt.services.subgroups import closure
from tests.strategies import wreath_elements


def as_matrix(g: WreathElement) -> np.ndarray:
    m = np.zeros((g.n, g.n), dtype=complex)
    for row, col, phase in to_matrix(g):
        m[row - 1, col - 1] = np.exp(2j * np.pi * phase / g.modulus)
    return m


def test_group_key_validation():
    assert GroupKey.parse("G(4,2,2)") == GroupKey(4, 2, 2)
    assert GroupKey.parse(" 6, 3, 2 ") == GroupKey(6, 3, 2)
    assert GroupKey(6, 2, 3).order == 648
    with pytest.raises(ParameterError):
        GroupKey(4, 3, 2)
    with pytest.raises(ParameterError):
        GroupKey(0, 1, 2)
    with pytest.raises(ParameterError):
        GroupKey.parse("4;2;2")


def test_multiply_examples():
    t = WreathElement.of((1, 0), r=3)
    s1 = WreathElement.of((0, 0), (2, 1), r=3)
    assert multiply(t, s1) == WreathElement.of((0, 1), (2, 1), r=3)
    s1_b2 = WreathElement.of((0, 0), (2, 1), r=2)
    assert multiply(s1_b2, s1_b2).is_identity
    g = WreathElement.of((2, 1), (2, 1), r=3)
    assert multiply(WreathElement.identity(3, 2), g) == g


def test_invert_examples():
    assert invert(WreathElement.of((1, 0), r=4)) == WreathElement.of((3, 0), r=4)
    g = WreathElement.of((1, 0), (2, 1), r=3)
    assert multiply(g, invert(g)).is_identity


def test_conjugates():
    g = WreathElement.of((1, 0), (2, 1), r=3)
    transpose, bar = conjugates(g)
    assert transpose == WreathElement.of((0, 1), (2, 1), r=3)
    assert bar == WreathElement.of((2, 0), (2, 1), r=3)
    sigma = WreathElement.of((0, 0, 0), (2, 3, 1), r=5)
    assert sigma.transpose() == invert(sigma)
    assert sigma.bar() == sigma


@given(wreath_elements(2, 3))
def test_bar_is_trivial_for_r_two(g):
    assert g.bar() == g


def test_decompose():
    perm, z, delta = decompose(WreathElement.identity(4, 3))
    assert perm == Perm.identity(3) and z == (0, 0, 0) and delta == 0
    assert WreathElement.of((2, 1, 0), (2, 3, 1), r=3).delta == 0


def test_is_member():
    key = GroupKey(4, 2, 2)
    assert is_member(WreathElement.of((1, 1), r=4), key)
    assert not is_member(WreathElement.of((1, 0), r=4), key)
    assert is_member(WreathElement.of((3, 3), (2, 1), r=4), key)
    with pytest.raises(ParameterError):
        is_member(WreathElement.of((1, 1), r=3), key)


@pytest.mark.parametrize(
    "key, order, classes",
    [
        (GroupKey(2, 2, 2), 4, 4),
        (GroupKey(3, 1, 2), 18, 9),
        (GroupKey(2, 1, 2), 8, 5),
        (GroupKey(1, 1, 4), 24, 5),
        (GroupKey(2, 1, 3), 48, 10),
    ],
)
def test_enumeration(key, order, classes):
    group = get_group(key)
    assert group.order == order == key.order
    assert len(group.classes) == classes
    assert sum(group.class_sizes) == order
    assert group.identity.is_identity


def test_enumeration_budget():
    with pytest.raises(SizeError) as excinfo:
        enumerate_group(GroupKey(6, 1, 4), budget=1000)
    assert excinfo.value.size == GroupKey(6, 1, 4).order


def test_class_counts_match_sympy():
    for n in (3, 4, 5):
        group = get_group(GroupKey(1, 1, n))
        assert len(group.classes) == len(SymmetricGroup(n).conjugacy_classes())


@pytest.mark.parametrize(
    "key, size",
    [(GroupKey(4, 2, 3), 2), (GroupKey(2, 2, 2), 4), (GroupKey(6, 2, 2), 6), (GroupKey(1, 1, 2), 2)],
)
def test_center(key, size):
    assert len(center(key)) == size
    assert frozenset(center(key)) == predicted_center(key)


def test_center_formula_on_grid():
    for r in range(1, 5):
        for p in (d for d in range(1, r + 1) if r % d == 0):
            for n in (1, 2, 3):
                key = GroupKey(r, p, n)
                assert frozenset(center(key)) == predicted_center(key), key


def test_standard_generators():
    trivial = standard_generators(GroupKey(1, 1, 3))
    assert trivial["s"].is_identity and trivial["t"].is_identity and trivial["c"].is_identity
    named = standard_generators(GroupKey(5, 1, 3))
    assert named["s_1'"] == multiply(named["s_1"], named["s"])
    assert named["c"] == WreathElement.of((1, 1, 1), r=5)


def test_generators_span_the_group():
    key = GroupKey(4, 2, 2)
    named = standard_generators(key)
    span = closure([named["s_1"], named["s"], power(named["t"], 2)], WreathElement.identity(4, 2))
    assert len(span) == 16
    for key in (GroupKey(6, 3, 2), GroupKey(3, 3, 3), GroupKey(4, 1, 2), GroupKey(1, 1, 4)):
        assert len(closure(generating_set(key), WreathElement.identity(key.r, key.n))) == key.order


def test_c_word():
    for key in (GroupKey(3, 1, 3), GroupKey(4, 2, 2)):
        assert c_word(key, 1) == standard_generators(key)["c"]
        assert c_word(key, 2) == power(standard_generators(key)["c"], 2)


def test_to_matrix():
    g = WreathElement.of((1, 2), (2, 1), r=3)
    assert to_matrix(g) == [(1, 2, 2), (2, 1, 1)]


@given(wreath_elements(4, 3), wreath_elements(4, 3), wreath_elements(4, 3))
def test_group_axioms(a, b, c):
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
    assert multiply(a, invert(a)).is_identity
    assert multiply(invert(a), a).is_identity
    assert multiply(a, b).delta == (a.delta + b.delta) % 4
    assert multiply(a, b).transpose() == multiply(b.transpose(), a.transpose())
    assert multiply(a, b).bar() == multiply(a.bar(), b.bar())


@given(wreath_elements(6, 3), wreath_elements(6, 3))
def test_multiplication_matches_matrices(a, b):
    assert np.allclose(as_matrix(multiply(a, b)), as_matrix(a) @ as_matrix(b))
    assert np.allclose(as_matrix(a.transpose()), as_matrix(a).T)
    assert np.allclose(as_matrix(a.bar()), np.conj(as_matrix(a)))


@hypothesis_settings(max_examples=50)
@given(wreath_elements(6, 3, p=2))
def test_element_order(g):
    k = element_order(g)
    assert power(g, k).is_identity
    assert all(not power(g, d).is_identity for d in range(1, k))
    assert is_member(g, GroupKey(6, 2, 3))


@given(wreath_elements(1, 5))
def test_perm_statistics_match_sympy(g):
    perm = g.permutation
    oracle = Permutation(list(perm.images))
    assert perm.sign == oracle.signature()
    assert len(perm.inversions()) == oracle.inversions()
    assert perm.is_involution == (oracle.order() <= 2)


def test_from_cycles():
    assert Perm.from_cycles(4, (1, 2), (3, 4)).one_line() == [2, 1, 4, 3]
    assert str(Perm.from_cycles(3, (1, 2, 3))) == "(1 2 3)"
    assert Perm.from_cycles(3, (1, 2, 3)).cycle_type() == (3,)
