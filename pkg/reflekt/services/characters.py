"""Irreducible characters of G(r,1,n) and their descent to G(r,p,n)."""
from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterable, NamedTuple, Sequence, Union

from sympy.utilities.iterables import partitions as sympy_partitions

from reflekt.errors import ConsistencyError, ParameterError
from reflekt.services.cyclotomic import CycloNumber, root_of_unity
from reflekt.services.group import GroupData, GroupKey, WreathElement, get_group
from reflekt.services.maps import GroupMap

logger = logging.getLogger(__name__)


# Partitions


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        if any(p < 1 for p in self.parts) or any(
            a < b for a, b in zip(self.parts, self.parts[1:])
        ):
            raise ParameterError(f"not a partition: {self.parts}")

    @classmethod
    def of(cls, parts: Iterable[int]) -> Partition:
        return cls(tuple(sorted((p for p in parts if p), reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def hook_lengths(self) -> list[int]:
        columns = self.conjugate().parts
        return [
            (part - j - 1) + (columns[j] - i - 1) + 1
            for i, part in enumerate(self.parts)
            for j in range(part)
        ]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "()"


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, in decreasing lexicographic order."""
    if n < 0:
        raise ParameterError(f"cannot partition {n}")
    if n == 0:
        return (Partition(),)
    found = []
    for multiplicities in sympy_partitions(n):
        parts = [k for k, m in multiplicities.items() for _ in range(m)]
        found.append(Partition.of(parts))
    return tuple(sorted(found, reverse=True))


@dataclass(frozen=True, order=True)
class RPartite:
    """An r-tuple of partitions (θ_0, …, θ_{r−1})."""

    components: tuple[Partition, ...]

    @classmethod
    def of(cls, *components: Sequence[int]) -> RPartite:
        return cls(tuple(Partition.of(c) for c in components))

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(c.size for c in self.components)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.components)

    def to_json(self) -> list[list[int]]:
        return [list(c.parts) for c in self.components]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.components) + ")"


def _compositions(n: int, parts: int) -> Iterable[tuple[int, ...]]:
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def rpartitions(r: int, n: int) -> tuple[RPartite, ...]:
    """𝒫_r(n) in canonical order."""
    found = []
    for sizes in _compositions(n, r):
        for combo in itertools.product(*(partitions_of(k) for k in sizes)):
            found.append(RPartite(tuple(combo)))
    return tuple(sorted(found, reverse=True))


# Symmetric group characters


def syt_count(partition: Partition) -> int:
    """Number of standard Young tableaux, by the hook-length formula."""
    return factorial(partition.size) // prod(partition.hook_lengths())


@lru_cache(maxsize=None)
def _border_strip_sum(parts: tuple[int, ...], cycle_type: tuple[int, ...]) -> int:
    if not cycle_type:
        return 1 if not parts else 0
    m, rest = cycle_type[0], cycle_type[1:]
    length = len(parts)
    beta = [part + length - 1 - i for i, part in enumerate(parts)]
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - m
        if target < 0 or target in occupied:
            continue
        height = sum(1 for c in beta if target < c < b)
        moved = sorted([c for c in beta if c != b] + [target], reverse=True)
        remaining = tuple(x for x in (c - (length - 1 - i) for i, c in enumerate(moved)) if x)
        sign = -1 if height % 2 else 1
        total += sign * _border_strip_sum(remaining, rest)
    return total


def sym_char_value(partition: Partition, cycle_type: Sequence[int]) -> int:
    """
    χ^λ on the class of the given cycle type (Murnaghan–Nakayama).

    Raises:
        ParameterError: |λ| differs from the size of the cycle type
    """
    mu = tuple(sorted((m for m in cycle_type if m), reverse=True))
    if sum(mu) != partition.size:
        raise ParameterError(f"|{partition}| != |{mu}|")
    return _border_strip_sum(partition.parts, mu)


def wreath_linear_value(i: int, partition: Partition, g: WreathElement) -> CycloNumber:
    """(ψ_i ≀ λ)(g) = χ^λ(|g|)·ζ_r^{iΔ(g)}."""
    if g.n != partition.size:
        raise ParameterError(f"rank mismatch: {g.n} vs |{partition}|")
    value = sym_char_value(partition, g.permutation.cycle_type())
    return root_of_unity(i * g.delta, g.modulus) * value


# Class functions


Number = Union[int, Fraction, CycloNumber]


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """Values on the conjugacy classes of ``group``, in class order."""

    group: GroupData
    values: tuple[CycloNumber, ...]

    @classmethod
    def from_rep_function(
        cls, group: GroupData, fn: Callable[[WreathElement], Number]
    ) -> ClassFunction:
        return cls.from_values(group, (fn(rep) for rep in group.reps))

    @classmethod
    def from_values(cls, group: GroupData, values: Iterable[Number]) -> ClassFunction:
        r = group.key.r
        return cls(
            group,
            tuple(
                v if isinstance(v, CycloNumber) else CycloNumber.rational(v, r) for v in values
            ),
        )

    @property
    def key(self) -> GroupKey:
        return self.group.key

    def __call__(self, g: WreathElement) -> CycloNumber:
        return self.values[self.group.class_of(g)]

    @property
    def degree(self) -> CycloNumber:
        return self.values[0]

    def as_map(self) -> dict[WreathElement, CycloNumber]:
        return dict(zip(self.group.reps, self.values))

    def _pointwise(self, other, op) -> ClassFunction:
        if isinstance(other, ClassFunction):
            if other.key != self.key:
                raise ParameterError(f"class functions on {self.key} and {other.key}")
            return ClassFunction(self.group, tuple(op(a, b) for a, b in zip(self.values, other.values)))
        return ClassFunction(self.group, tuple(op(a, other) for a in self.values))

    def __add__(self, other) -> ClassFunction:
        return self._pointwise(other, lambda a, b: a + b)

    def __radd__(self, other) -> ClassFunction:
        if other == 0:
            return self
        return self + other

    def __sub__(self, other) -> ClassFunction:
        return self._pointwise(other, lambda a, b: a - b)

    def __mul__(self, other) -> ClassFunction:
        return self._pointwise(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def conjugate(self) -> ClassFunction:
        return ClassFunction(self.group, tuple(v.conjugate() for v in self.values))

    def inner(self, other: ClassFunction) -> CycloNumber:
        """(1/|G|) Σ_g χ(g)·conj(ψ(g))."""
        if other.key != self.key:
            raise ParameterError(f"class functions on {self.key} and {other.key}")
        total = CycloNumber.rational(0, self.key.r)
        for size, a, b in zip(self.group.class_sizes, self.values, other.values):
            total = total + a * b.conjugate() * size
        return total / self.group.order

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.key == other.key and all(a == b for a, b in zip(self.values, other.values))

    __hash__ = None

    def is_integer_valued(self) -> bool:
        return all(v.is_rational and v.as_rational().denominator == 1 for v in self.values)

    def as_integers(self) -> list[int]:
        return [int(v.as_rational()) for v in self.values]

    def to_json(self) -> dict[str, dict]:
        return {str(i): v.to_json() for i, v in enumerate(self.values)}


def restrict(character: ClassFunction, group: GroupData) -> ClassFunction:
    """Restrict a class function of G(r,1,n) to the subgroup ``group``."""
    if character.key.r != group.key.r or character.key.n != group.key.n:
        raise ParameterError(f"cannot restrict from {character.key} to {group.key}")
    return ClassFunction(group, tuple(character(rep) for rep in group.reps))


# Characters of G(r,1,n)


def _blocks(theta: RPartite) -> list[tuple[int, int, int, Partition]]:
    """(start, end, component index, partition) for each nonempty block of S_θ."""
    blocks = []
    start = 0
    for i, component in enumerate(theta.components):
        if component.size:
            blocks.append((start, start + component.size, i, component))
            start += component.size
    return blocks


def _s_theta_term(
    blocks: list[tuple[int, int, int, Partition]], h: WreathElement
) -> tuple[int, int] | None:
    """(⊙ψ_i≀θ_i)(h) as (integer coefficient, exponent of ζ_r), or None off S_θ."""
    coefficient, exponent = 1, 0
    perm, phases = h.perm, h.phases
    for start, end, i, partition in blocks:
        if any(not start <= perm[k] < end for k in range(start, end)):
            return None
        seen = set()
        lengths = []
        for k in range(start, end):
            if k in seen:
                continue
            length, j = 0, k
            while j not in seen:
                seen.add(j)
                j = perm[j]
                length += 1
            lengths.append(length)
        coefficient *= sym_char_value(partition, lengths)
        if not coefficient:
            return None
        exponent += i * sum(phases[start:end])
    return coefficient, exponent


@lru_cache(maxsize=None)
def chi_theta_character(theta: RPartite) -> ClassFunction:
    """χ_θ = Ind_{S_θ}^{G(r,1,n)} (⊙ψ_i≀θ_i), by the Frobenius sum over each class."""
    r = theta.r
    group = get_group(GroupKey(r, 1, theta.size))
    blocks = _blocks(theta)
    s_theta_order = prod(r**k * factorial(k) for k in theta.sizes)
    values = []
    for members in group.classes:
        counts: dict[int, int] = defaultdict(int)
        for h in members:
            term = _s_theta_term(blocks, h)
            if term is not None:
                counts[term[1] % r] += term[0]
        centralizer = group.order // len(members)
        values.append(
            CycloNumber.from_exponents(counts, r) * Fraction(centralizer, s_theta_order)
        )
    return ClassFunction(group, tuple(values))


def chi_theta_value(theta: RPartite, g: WreathElement) -> CycloNumber:
    if g.modulus != theta.r or g.n != theta.size:
        raise ParameterError(f"{g} is not in G({theta.r},1,{theta.size})")
    return chi_theta_character(theta)(g)


def chi_theta_degree(theta: RPartite) -> int:
    """multinomial(n; |θ_0|,…) · Π syt_count(θ_i)."""
    multinomial = factorial(theta.size) // prod(factorial(k) for k in theta.sizes)
    return multinomial * prod(syt_count(c) for c in theta.components)


# Descent to G(r,p,n)


def gamma_value(key: GroupKey, g: WreathElement) -> CycloNumber:
    """γ(g) = ζ_r^{(r/p)Δ(g)}."""
    if g.modulus != key.r or g.n != key.n:
        raise ParameterError(f"{g} is not in G({key.r},1,{key.n})")
    return root_of_unity(key.index * g.delta, key.r)


def gamma_character(key: GroupKey) -> ClassFunction:
    group = get_group(key.ambient)
    return ClassFunction.from_rep_function(group, lambda g: gamma_value(key, g))


def shift_theta(theta: RPartite, key: GroupKey) -> RPartite:
    """θ'_x = θ_{x − r/p}."""
    if theta.r != key.r:
        raise ParameterError(f"{theta} has {theta.r} components, key has r={key.r}")
    r, step = key.r, key.index
    return RPartite(tuple(theta.components[(x - step) % r] for x in range(r)))


def orbit_and_stabilizer(theta: RPartite, key: GroupKey) -> tuple[frozenset[RPartite], int]:
    """The ⟨shift⟩-orbit of θ and the stabilizer order k = p/|orbit|."""
    orbit = {theta}
    current = shift_theta(theta, key)
    while current != theta:
        orbit.add(current)
        current = shift_theta(current, key)
    return frozenset(orbit), key.p // len(orbit)


class IrrOrbit(NamedTuple):
    representative: RPartite
    orbit: frozenset[RPartite]
    stabilizer_order: int
    degree: int  # degree of each constituent of the restriction


def irr_orbits(key: GroupKey) -> list[IrrOrbit]:
    """One entry per ⟨shift⟩-orbit on 𝒫_r(n), representative minimal in canonical order."""
    seen: set[RPartite] = set()
    found = []
    for theta in sorted(rpartitions(key.r, key.n)):
        if theta in seen:
            continue
        orbit, k = orbit_and_stabilizer(theta, key)
        seen |= orbit
        degree = chi_theta_degree(theta)
        if degree % k:
            raise ConsistencyError(f"degree {degree} of {theta} not divisible by {k}")
        found.append(IrrOrbit(theta, orbit, k, degree // k))
    return found


def irr_degree_list(key: GroupKey) -> list[int]:
    """
    Degrees of the irreducible characters of G(r,p,n), sorted.

    Raises:
        ConsistencyError: Σd² differs from |G(r,p,n)|
    """
    degrees = sorted(d for entry in irr_orbits(key) for d in [entry.degree] * entry.stabilizer_order)
    if sum(d * d for d in degrees) != key.order:
        raise ConsistencyError(f"sum of squared degrees of {key} is not {key.order}")
    return degrees


def irreducible_characters(key: GroupKey) -> list[tuple[RPartite, ClassFunction]]:
    """Value tables of G(r,p,n) for the orbits with trivial stabilizer (non-split restrictions)."""
    group = get_group(key)
    return [
        (entry.representative, restrict(chi_theta_character(entry.representative), group))
        for entry in irr_orbits(key)
        if entry.stabilizer_order == 1
    ]


class SymmetricCount(NamedTuple):
    symmetric_count: int
    degree_sum: int
    equal: bool


def symmetric_count_check(key: GroupKey) -> SymmetricCount:
    """
    Compare |{ω : ω^T = ω}| with the sum of irreducible degrees.

    Raises:
        ConsistencyError: more symmetric elements than the degree sum
    """
    group = get_group(key)
    symmetric = sum(1 for g in group.elements if g.transpose() == g)
    degree_sum = sum(irr_degree_list(key))
    if symmetric > degree_sum:
        raise ConsistencyError(f"{key}: {symmetric} symmetric elements exceed degree sum {degree_sum}")
    return SymmetricCount(symmetric, degree_sum, symmetric == degree_sum)


def reflection_gelfand_predicate(key: GroupKey) -> bool:
    """gcd(p,n) = 1 and p or r/p odd."""
    return key.gcd_pn == 1 and (key.p % 2 == 1 or key.index % 2 == 1)


def epsilon_tau(character: ClassFunction, tau: GroupMap) -> int:
    """
    Twisted Frobenius–Schur indicator (1/|G|) Σ_g χ(g·τ(g)).

    Raises:
        ParameterError: τ is not an involution or lives on another group
        ConsistencyError: the sum is not -1, 0 or 1
    """
    group = tau.group
    if character.key != group.key:
        raise ParameterError(f"character on {character.key}, automorphism on {group.key}")
    if not tau.is_involution:
        raise ParameterError(f"{tau.name or 'automorphism'} is not an involution")
    counts: dict[int, int] = defaultdict(int)
    elements, index = group.elements, group.index
    for i, g in enumerate(elements):
        counts[group.class_index[index[g * elements[tau.images[i]]]]] += 1
    total = CycloNumber.rational(0, group.key.r)
    for c, count in counts.items():
        total = total + character.values[c] * count
    value = total / group.order
    if not value.is_rational or value.as_rational() not in (-1, 0, 1):
        raise ConsistencyError(f"indicator value {value} is not in {{-1, 0, 1}}")
    return int(value.as_rational())
