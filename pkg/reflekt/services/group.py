"""Wreath product arithmetic for Z_r ≀ S_n and enumeration of G(r,p,n).

Permutations and positions are 0-based internally; the 1-based forms only
appear in constructors taking external input and in ``to_json``.
"""
from __future__ import annotations

import itertools
import logging
import re
import threading
from dataclasses import dataclass, field
from math import factorial, gcd, lcm
from typing import Iterable, Optional, Sequence

from reflekt.errors import ParameterError, SizeError
from reflekt.settings import settings

logger = logging.getLogger(__name__)

_KEY_PATTERN = re.compile(r"^\s*(?:G\s*\()?\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)?\s*$")


@dataclass(frozen=True, order=True)
class GroupKey:
    """Parameters (r, p, n) of G(r,p,n); p must divide r."""

    r: int
    p: int
    n: int

    def __post_init__(self):
        for name in ("r", "p", "n"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ParameterError(f"{name} must be a positive integer, got {value!r}")
        if self.r % self.p:
            raise ParameterError(f"p={self.p} must divide r={self.r}")

    @classmethod
    def parse(cls, text: str) -> GroupKey:
        """Parse ``"r,p,n"`` or ``"G(r,p,n)"``."""
        match = _KEY_PATTERN.match(text)
        if not match:
            raise ParameterError(f"cannot parse group key {text!r}")
        return cls(*(int(part) for part in match.groups()))

    @property
    def d(self) -> int:
        return gcd(self.r, self.p)

    @property
    def gcd_pn(self) -> int:
        return gcd(self.p, self.n)

    @property
    def index(self) -> int:
        """r/p, the order of the quotient G(r,1,n)/G(r,p,n)."""
        return self.r // self.p

    @property
    def order(self) -> int:
        return factorial(self.n) * self.r**self.n // self.p

    @property
    def ambient(self) -> GroupKey:
        return GroupKey(self.r, 1, self.n)

    @property
    def label(self) -> str:
        return f"G({self.r},{self.p},{self.n})"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True, order=True)
class Perm:
    """A permutation of {0..n-1}; ``images[i]`` is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ParameterError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(tuple(range(n)))

    @classmethod
    def from_one_line(cls, images: Sequence[int]) -> Perm:
        """Build from 1-based one-line notation."""
        return cls(tuple(i - 1 for i in images))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Perm:
        """Build from 1-based disjoint cycles, e.g. ``from_cycles(3, (1, 2))``."""
        images = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b - 1
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def compose(self, other: Perm) -> Perm:
        """Return self∘other (apply other first)."""
        return Perm(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Perm:
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def act(self, entries: Sequence[int]) -> tuple[int, ...]:
        """π(x): the entry at position i moves to position π(i)."""
        result = [0] * self.n
        for i, j in enumerate(self.images):
            result[j] = entries[i]
        return tuple(result)

    def inversions(self) -> frozenset[tuple[int, int]]:
        """Inv(π) as 1-based pairs i < j with π(i) > π(j)."""
        im = self.images
        return frozenset(
            (i + 1, j + 1)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if im[i] > im[j]
        )

    def pairs(self) -> frozenset[tuple[int, int]]:
        """Pair(π): 1-based 2-cycles (i, j) with i < j."""
        return frozenset(
            (i + 1, j + 1) for i, j in enumerate(self.images) if i < j and self.images[j] == i
        )

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, j in enumerate(self.images) if i == j)

    @property
    def length(self) -> int:
        return len(self.inversions())

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, 0-based, each starting at its smallest point."""
        seen = [False] * self.n
        result = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i)
                i = self.images[i]
            result.append(tuple(cycle))
        return result

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    @property
    def is_involution(self) -> bool:
        return all(self.images[j] == i for i, j in enumerate(self.images))

    def one_line(self) -> list[int]:
        return [j + 1 for j in self.images]

    def __str__(self) -> str:
        parts = [c for c in self.cycles() if len(c) > 1]
        if not parts:
            return "1"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in parts)


@dataclass(frozen=True)
class PhaseVector:
    """A vector in (Z_r)^n with entries reduced into [0, r-1]."""

    entries: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if any(not 0 <= x < self.modulus for x in self.entries):
            raise ParameterError(f"phases {self.entries} not reduced mod {self.modulus}")

    @classmethod
    def of(cls, entries: Iterable[int], modulus: int) -> PhaseVector:
        return cls(tuple(x % modulus for x in entries), modulus)

    @classmethod
    def basis(cls, i: int, n: int, modulus: int) -> PhaseVector:
        """e_i, 1-based."""
        return cls.of((1 if k == i - 1 else 0 for k in range(n)), modulus)

    @property
    def delta(self) -> int:
        return sum(self.entries) % self.modulus

    def permuted(self, perm: Perm) -> PhaseVector:
        return PhaseVector(perm.act(self.entries), self.modulus)

    def __add__(self, other: PhaseVector) -> PhaseVector:
        return PhaseVector.of((a + b for a, b in zip(self.entries, other.entries)), self.modulus)

    def __neg__(self) -> PhaseVector:
        return PhaseVector.of((-a for a in self.entries), self.modulus)


@dataclass(frozen=True, order=True, slots=True)
class WreathElement:
    """The pair (x, π) of Z_r ≀ S_n.

    Stored as flat tuples; ``phase_vector`` and ``permutation`` give the typed
    views. Field order makes the dataclass ordering the canonical one:
    permutation images first, then phases.
    """

    perm: tuple[int, ...]
    phases: tuple[int, ...]
    modulus: int

    @classmethod
    def identity(cls, r: int, n: int) -> WreathElement:
        return cls(tuple(range(n)), (0,) * n, r)

    @classmethod
    def of(
        cls, phases: Sequence[int], perm: Optional[Sequence[int] | Perm] = None, *, r: int
    ) -> WreathElement:
        """Build from phases and a 1-based one-line permutation (or a Perm)."""
        n = len(phases)
        if perm is None:
            images = tuple(range(n))
        elif isinstance(perm, Perm):
            images = perm.images
        else:
            images = Perm.from_one_line(perm).images
        if len(images) != n:
            raise ParameterError(f"rank mismatch: {n} phases, {len(images)} images")
        Perm(images)
        return cls(images, tuple(x % r for x in phases), r)

    @classmethod
    def from_json(cls, data: dict, r: int) -> WreathElement:
        return cls.of(data["phases"], data["perm"], r=r)

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def permutation(self) -> Perm:
        return Perm(self.perm)

    @property
    def phase_vector(self) -> PhaseVector:
        return PhaseVector(self.phases, self.modulus)

    @property
    def delta(self) -> int:
        return sum(self.phases) % self.modulus

    @property
    def is_identity(self) -> bool:
        return not any(self.phases) and all(i == j for i, j in enumerate(self.perm))

    @property
    def is_symmetric(self) -> bool:
        return self.transpose() == self

    def __mul__(self, other: WreathElement) -> WreathElement:
        return multiply(self, other)

    def __pow__(self, exponent: int) -> WreathElement:
        return power(self, exponent)

    def inverse(self) -> WreathElement:
        return invert(self)

    def transpose(self) -> WreathElement:
        """g^T = (π(x), π⁻¹)."""
        inv = _inverse_images(self.perm)
        return WreathElement(inv, tuple(self.phases[k] for k in inv), self.modulus)

    def bar(self) -> WreathElement:
        """ḡ = (−x, π), entrywise complex conjugation."""
        r = self.modulus
        return WreathElement(self.perm, tuple(-x % r for x in self.phases), r)

    def to_json(self) -> dict:
        return {"phases": list(self.phases), "perm": [j + 1 for j in self.perm]}

    def __str__(self) -> str:
        return f"(({','.join(map(str, self.phases))}),{self.permutation})"


def _inverse_images(images: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(images)
    for i, j in enumerate(images):
        inv[j] = i
    return tuple(inv)


def _check_compatible(a: WreathElement, b: WreathElement) -> None:
    if a.modulus != b.modulus or len(a.perm) != len(b.perm):
        raise ParameterError(
            f"incompatible elements: r={a.modulus},n={a.n} and r={b.modulus},n={b.n}"
        )


def multiply(a: WreathElement, b: WreathElement) -> WreathElement:
    """(x,π)(y,σ) = (σ⁻¹(x)+y, πσ)."""
    _check_compatible(a, b)
    r = a.modulus
    x, pi = a.phases, a.perm
    return WreathElement(
        tuple(pi[s] for s in b.perm),
        tuple((x[s] + y) % r for s, y in zip(b.perm, b.phases)),
        r,
    )


def invert(g: WreathElement) -> WreathElement:
    """g⁻¹ = (−π(x), π⁻¹)."""
    r = g.modulus
    inv = _inverse_images(g.perm)
    return WreathElement(inv, tuple(-g.phases[k] % r for k in inv), r)


def conjugates(g: WreathElement) -> tuple[WreathElement, WreathElement]:
    """Return (g^T, ḡ)."""
    return g.transpose(), g.bar()


def decompose(g: WreathElement) -> tuple[Perm, tuple[int, ...], int]:
    """Return (|g|, z_g, Δ(g))."""
    return g.permutation, g.phases, g.delta


def power(g: WreathElement, exponent: int) -> WreathElement:
    if exponent < 0:
        return power(invert(g), -exponent)
    result = WreathElement.identity(g.modulus, g.n)
    base = g
    while exponent:
        if exponent & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        exponent >>= 1
    return result


def element_order(g: WreathElement) -> int:
    """Order of g: lcm over cycles of |cycle|·(order of the cycle's phase sum)."""
    r = g.modulus
    result = 1
    for cycle in g.permutation.cycles():
        total = sum(g.phases[i] for i in cycle) % r
        result = lcm(result, len(cycle) * (r // gcd(total, r)))
    return result


def commutator(a: WreathElement, b: WreathElement) -> WreathElement:
    """[a,b] = a b a⁻¹ b⁻¹."""
    return multiply(multiply(a, b), multiply(invert(a), invert(b)))


def is_member(g: WreathElement, key: GroupKey) -> bool:
    """
    Test membership in G(r,p,n): gcd(r,p) divides Δ(g).

    Raises:
        ParameterError: g lives in a different Z_r ≀ S_n
    """
    if g.modulus != key.r or g.n != key.n:
        raise ParameterError(f"{g} is not an element of Z_{key.r} wr S_{key.n}")
    return g.delta % key.d == 0


def to_matrix(g: WreathElement) -> list[tuple[int, int, int]]:
    """Nonzero entries of the generalized permutation matrix as 1-based (row, column, phase)."""
    return sorted((j + 1, i + 1, x) for i, (j, x) in enumerate(zip(g.perm, g.phases)))


# Generators


def _transposition(n: int, i: int) -> tuple[int, ...]:
    images = list(range(n))
    images[i - 1], images[i] = i, i - 1
    return tuple(images)


def central_power(r: int, n: int, m: int) -> WreathElement:
    """c^m = ((m,…,m), 1)."""
    return WreathElement(tuple(range(n)), (m % r,) * n, r)


def standard_generators(key: GroupKey) -> dict[str, WreathElement]:
    """
    Named elements s_i, s_i', s, t and c of G(r,1,n).

    s_i' needs r ≥ 2 and n ≥ 2; s needs n ≥ 2 and is the identity when r = 1.
    t and c need not lie in G(r,p,n).
    """
    r, n = key.r, key.n
    named: dict[str, WreathElement] = {}
    zero = (0,) * n
    for i in range(1, n):
        named[f"s_{i}"] = WreathElement(_transposition(n, i), zero, r)
    if r >= 2 and n >= 2:
        for i in range(1, n):
            phases = [0] * n
            phases[i - 1], phases[i] = 1, r - 1
            named[f"s_{i}'"] = WreathElement(_transposition(n, i), tuple(phases), r)
    if n >= 2:
        named["s"] = WreathElement.of((1, -1) + zero[2:], r=r)
    named["t"] = WreathElement.of((1,) + zero[1:], r=r)
    named["c"] = central_power(r, n, 1)
    return named


def generating_set(key: GroupKey) -> tuple[WreathElement, ...]:
    """s_1..s_{n-1}, s and t^p; s is dropped when p = 1 and t^p when p = r."""
    named = standard_generators(key)
    gens = [named[f"s_{i}"] for i in range(1, key.n)]
    if key.p > 1 and key.n >= 2:
        gens.append(named["s"])
    if key.p < key.r:
        gens.append(power(named["t"], key.p))
    return tuple(gens)


def c_word(key: GroupKey, j: int) -> WreathElement:
    """t^j · (s_1 t^j s_1) · (s_2 s_1 t^j s_1 s_2) ··· with n factors."""
    named = standard_generators(key)
    tj = power(named["t"], j)
    result = WreathElement.identity(key.r, key.n)
    w = WreathElement.identity(key.r, key.n)
    for m in range(key.n):
        if m:
            w = multiply(named[f"s_{m}"], w)
        result = multiply(result, multiply(multiply(w, tj), invert(w)))
    return result


# Enumeration


@dataclass(frozen=True, eq=False)
class GroupData:
    """All elements of G(r,p,n) in canonical order, with classes and center."""

    key: GroupKey
    elements: tuple[WreathElement, ...]
    classes: tuple[tuple[WreathElement, ...], ...]
    center: tuple[WreathElement, ...]
    index: dict = field(init=False, repr=False)
    class_index: tuple[int, ...] = field(init=False, repr=False)
    generators: tuple[WreathElement, ...] = field(init=False, repr=False)

    def __post_init__(self):
        index = {g: i for i, g in enumerate(self.elements)}
        class_index = [0] * len(self.elements)
        for c, members in enumerate(self.classes):
            for g in members:
                class_index[index[g]] = c
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "class_index", tuple(class_index))
        object.__setattr__(self, "generators", generating_set(self.key))

    @classmethod
    def from_classes(
        cls,
        key: GroupKey,
        classes: Sequence[Sequence[WreathElement]],
        center: Iterable[WreathElement],
    ) -> GroupData:
        elements = tuple(sorted(itertools.chain.from_iterable(classes)))
        return cls(
            key,
            elements,
            tuple(tuple(sorted(c)) for c in sorted(classes, key=min)),
            tuple(sorted(center)),
        )

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> WreathElement:
        return self.elements[0]

    @property
    def reps(self) -> tuple[WreathElement, ...]:
        return tuple(c[0] for c in self.classes)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def __contains__(self, g: WreathElement) -> bool:
        return g in self.index

    def class_of(self, g: WreathElement) -> int:
        """Ordinal of the conjugacy class containing g."""
        try:
            return self.class_index[self.index[g]]
        except KeyError:
            raise ParameterError(f"{g} is not an element of {self.key}") from None

    def centralizer_order(self, class_ordinal: int) -> int:
        return self.order // len(self.classes[class_ordinal])

    def same_as(self, other: GroupData) -> bool:
        return (
            self.key == other.key
            and self.elements == other.elements
            and self.classes == other.classes
            and self.center == other.center
        )


def _enumerate_elements(key: GroupKey) -> list[WreathElement]:
    r, n = key.r, key.n
    d = key.d
    phase_vectors = [x for x in itertools.product(range(r), repeat=n) if sum(x) % d == 0]
    return [
        WreathElement(perm, x, r)
        for perm in itertools.permutations(range(n))
        for x in phase_vectors
    ]


def _conjugacy_classes(
    elements: list[WreathElement], gens: Sequence[WreathElement]
) -> list[tuple[WreathElement, ...]]:
    pairs = [(s, invert(s)) for s in gens]
    assigned: set[WreathElement] = set()
    classes = []
    for g in elements:
        if g in assigned:
            continue
        orbit = {g}
        frontier = [g]
        while frontier:
            h = frontier.pop()
            for s, s_inv in pairs:
                k = multiply(multiply(s, h), s_inv)
                if k not in orbit:
                    orbit.add(k)
                    frontier.append(k)
        assigned |= orbit
        classes.append(tuple(sorted(orbit)))
    return classes


def enumerate_group(key: GroupKey, budget: Optional[int] = None) -> GroupData:
    """
    Enumerate G(r,p,n) with its conjugacy classes and center.

    Raises:
        SizeError: n!·r^n/p exceeds the budget
    """
    budget = settings.budget if budget is None else budget
    if key.order > budget:
        raise SizeError(f"enumerating {key}", key.order, budget)
    elements = _enumerate_elements(key)
    gens = generating_set(key)
    classes = _conjugacy_classes(elements, gens)
    center = [g for g in elements if all(multiply(g, s) == multiply(s, g) for s in gens)]
    logger.info(f"Enumerated {key}: {len(elements)} elements, {len(classes)} classes")
    return GroupData(key, tuple(elements), tuple(classes), tuple(center))


_groups: dict[GroupKey, GroupData] = {}
_groups_lock = threading.Lock()


def get_group(key: GroupKey, budget: Optional[int] = None) -> GroupData:
    """Memoized enumerate_group."""
    with _groups_lock:
        cached = _groups.get(key)
    if cached is not None:
        return cached
    data = enumerate_group(key, budget)
    with _groups_lock:
        return _groups.setdefault(key, data)


def remember_group(data: GroupData) -> GroupData:
    """Seed the in-process memo, e.g. with data loaded from the on-disk cache."""
    with _groups_lock:
        return _groups.setdefault(data.key, data)


def center(key: GroupKey) -> tuple[WreathElement, ...]:
    return get_group(key).center


def predicted_center(key: GroupKey) -> frozenset[WreathElement]:
    """{c^{jp/d} : 0 ≤ j < dr/p} with d = gcd(p,n); the whole group for (1,1,2), (2,2,2)."""
    if (key.r, key.p, key.n) in ((1, 1, 2), (2, 2, 2)):
        return frozenset(get_group(key).elements)
    d = key.gcd_pn
    step = key.p // d
    return frozenset(central_power(key.r, key.n, j * step) for j in range(d * key.r // key.p))
