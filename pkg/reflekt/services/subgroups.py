"""Subgroups given as element sets: closure, commutator subgroups, linear characters."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from reflekt.errors import ConsistencyError, ParameterError
from reflekt.services.cyclotomic import CycloNumber, root_of_unity
from reflekt.services.group import WreathElement, commutator, invert, multiply

logger = logging.getLogger(__name__)


def closure(generators: Iterable[WreathElement], identity: WreathElement) -> frozenset[WreathElement]:
    """The subgroup generated by ``generators``."""
    gens = list(generators)
    found = {identity}
    frontier = [identity]
    while frontier:
        g = frontier.pop()
        for s in gens:
            h = multiply(g, s)
            if h not in found:
                found.add(h)
                frontier.append(h)
    return frozenset(found)


def is_subgroup(elements: frozenset[WreathElement]) -> bool:
    if not elements:
        return False
    sample = next(iter(elements))
    identity = WreathElement.identity(sample.modulus, sample.n)
    if identity not in elements:
        return False
    return closure(subgroup_generators(elements), identity) == elements


def subgroup_generators(elements: Iterable[WreathElement]) -> tuple[WreathElement, ...]:
    """A generating set picked greedily in canonical order."""
    members = sorted(elements)
    if not members:
        return ()
    identity = WreathElement.identity(members[0].modulus, members[0].n)
    gens: list[WreathElement] = []
    span = {identity}
    for h in members:
        if h not in span:
            gens.append(h)
            span = set(closure(gens, identity))
    return tuple(gens)


def derived_subgroup(elements: frozenset[WreathElement]) -> frozenset[WreathElement]:
    """[H,H] as the normal closure of commutators of a generating set."""
    gens = subgroup_generators(elements)
    sample = next(iter(elements))
    identity = WreathElement.identity(sample.modulus, sample.n)
    commutators = {commutator(a, b) for a in gens for b in gens} - {identity}
    conjugated = {
        multiply(multiply(h, c), invert(h)) for c in commutators for h in elements
    }
    return closure(conjugated, identity)


@dataclass(frozen=True, eq=False)
class LinearChar:
    """A homomorphism from a subgroup to the roots of unity."""

    domain: frozenset[WreathElement]
    values: dict[WreathElement, CycloNumber]

    def __call__(self, g: WreathElement) -> CycloNumber:
        try:
            return self.values[g]
        except KeyError:
            raise ParameterError(f"{g} is outside the domain of this character") from None

    @property
    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values.values())

    @property
    def is_sign_valued(self) -> bool:
        return all(v == 1 or v == -1 for v in self.values.values())

    def check(self) -> None:
        """
        Verify λ(1) = 1 and λ(hs) = λ(h)λ(s) for all h and generators s.

        Raises:
            ConsistencyError: the values are not multiplicative
        """
        sample = next(iter(self.domain))
        if self.values[WreathElement.identity(sample.modulus, sample.n)] != 1:
            raise ConsistencyError("linear character is not 1 at the identity")
        for s in subgroup_generators(self.domain):
            for h in self.domain:
                if self.values[multiply(h, s)] != self.values[h] * self.values[s]:
                    raise ConsistencyError(f"linear character fails at ({h}, {s})")

    def signs(self) -> dict[WreathElement, int]:
        return {g: int(v.as_rational()) for g, v in self.values.items()}


def _coset_labels(
    elements: frozenset[WreathElement], normal: frozenset[WreathElement]
) -> dict[WreathElement, WreathElement]:
    labels: dict[WreathElement, WreathElement] = {}
    for h in sorted(elements):
        if h in labels:
            continue
        coset = [multiply(h, d) for d in normal]
        rep = min(coset)
        for g in coset:
            labels[g] = rep
    return labels


def linear_characters(
    elements: frozenset[WreathElement], modulus: Optional[int] = None
) -> list[LinearChar]:
    """
    Every linear character of the subgroup ``elements``, via its abelianization.

    Values are roots of unity of order dividing |H/[H,H]|, expressed in
    Q(ζ_modulus) when a modulus (a multiple of that order) is given.
    """
    derived = derived_subgroup(elements)
    labels = _coset_labels(elements, derived)
    quotient_order = len(elements) // len(derived)
    modulus = quotient_order if modulus is None else modulus
    if modulus % quotient_order:
        raise ParameterError(f"modulus {modulus} is not a multiple of {quotient_order}")
    identity = labels[min(derived)]

    def qmul(a: WreathElement, b: WreathElement) -> WreathElement:
        return labels[multiply(a, b)]

    # characters of the abelian quotient, as exponents of ζ_quotient_order
    span = [identity]
    chars: list[dict[WreathElement, int]] = [{identity: 0}]
    for g in subgroup_generators(elements):
        q = labels[g]
        if q in chars[0]:
            continue
        step, m = q, 1
        while step not in chars[0]:
            step = qmul(step, q)
            m += 1
        extended = []
        for chi in chars:
            v = chi[step]
            if v % m:
                raise ConsistencyError("abelian quotient extension has no root")
            for t in range(m):
                w = v // m + t * quotient_order // m
                new = {}
                power_q = identity
                for i in range(m):
                    for a in span:
                        new[qmul(a, power_q)] = (chi[a] + i * w) % quotient_order
                    power_q = qmul(power_q, q)
                extended.append(new)
        span = sorted(extended[0])
        chars = extended
    if len(chars) != quotient_order or len(span) != quotient_order:
        raise ConsistencyError(
            f"found {len(chars)} characters for an abelian quotient of order {quotient_order}"
        )
    scale = modulus // quotient_order
    result = []
    for chi in sorted(chars, key=lambda c: [c[a] for a in span]):
        values = {h: root_of_unity(chi[labels[h]] * scale, modulus) for h in elements}
        result.append(LinearChar(frozenset(elements), values))
    return result


def abelianization_order(elements: frozenset[WreathElement]) -> int:
    """|H/[H,H]|, a valid common modulus for all linear characters of H."""
    return len(elements) // len(derived_subgroup(elements))

