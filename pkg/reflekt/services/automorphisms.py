"""Automorphisms of G(r,p,n): α_{j,k,z}, conjugations, the exceptional η maps, and |Aut|."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, NamedTuple, Optional, Union

from sympy import divisors, totient

from reflekt.errors import (
    NotAHomomorphismError,
    NotAnAutomorphismError,
    ParameterError,
)
from reflekt.services.group import (
    GroupData,
    GroupKey,
    Perm,
    WreathElement,
    central_power,
    get_group,
    invert,
    multiply,
    power,
    standard_generators,
)
from reflekt.services.maps import GroupMap

logger = logging.getLogger(__name__)


# α_{j,k,z}


@dataclass(frozen=True)
class AlphaParams:
    """Parameters of (x,π) ↦ z^{ℓ(π)}·c^{Δ(x)k}·(jx, π); z is a power of c."""

    j: int
    k: int
    z: WreathElement

    @classmethod
    def of(cls, j: int, k: int, z_exponent: int, key: GroupKey) -> AlphaParams:
        return cls(j, k, central_power(key.r, key.n, z_exponent))

    @property
    def z_exponent(self) -> int:
        """m with z = c^m."""
        if any(i != j for i, j in enumerate(self.z.perm)) or len(set(self.z.phases)) > 1:
            raise ParameterError(f"{self.z} is not central in G({self.z.modulus},1,{self.z.n})")
        return self.z.phases[0] if self.z.phases else 0


def alpha_violations(params: AlphaParams, key: GroupKey) -> list[str]:
    """The validity conditions on (j, k, z) that fail, as readable strings."""
    failed = []
    if gcd(params.j, key.r) != 1:
        failed.append(f"gcd(j={params.j}, r={key.r}) != 1")
    if gcd(params.j + key.n * params.k, key.index) != 1:
        failed.append(f"gcd(j+nk={params.j + key.n * params.k}, r/p={key.index}) != 1")
    try:
        m = params.z_exponent
    except ParameterError:
        failed.append("z is not a power of c")
        return failed
    if (key.n * m) % key.p:
        failed.append(f"z = c^{m} is not in {key}")
    if (2 * m) % key.r:
        failed.append(f"z = c^{m} does not square to 1")
    return failed


def alpha_apply(params: AlphaParams, g: WreathElement) -> WreathElement:
    """Evaluate α_{j,k,z} on any element of G(r,1,n)."""
    r = g.modulus
    m = params.z_exponent
    shift = (g.delta * params.k + g.permutation.length * m) % r
    return WreathElement(g.perm, tuple((params.j * x + shift) % r for x in g.phases), r)


def alpha_map(params: AlphaParams, key: GroupKey) -> GroupMap:
    """
    α_{j,k,z} restricted to G(r,p,n).

    Raises:
        NotAnAutomorphismError: a validity condition fails; ``condition`` names it
    """
    failed = alpha_violations(params, key)
    if failed:
        raise NotAnAutomorphismError(
            f"alpha({params.j},{params.k},{params.z}) is not an automorphism of {key}: "
            + "; ".join(failed),
            failed[0],
        )
    return GroupMap.from_function(
        get_group(key),
        lambda g: alpha_apply(params, g),
        f"alpha({params.j},{params.k},c^{params.z_exponent})",
    )


def beta_map(j: int, key: GroupKey) -> GroupMap:
    return alpha_map(AlphaParams.of(j, 0, 0, key), key)


def gamma_map(k: int, z_exponent: int, key: GroupKey) -> GroupMap:
    return alpha_map(AlphaParams.of(1, k, z_exponent, key), key)


def gamma_product_params(k: int, k2: int, z_exponent: int, z2_exponent: int, key: GroupKey) -> tuple[int, int]:
    """Parameters (k'', m'') of γ_{k,z}∘γ_{k',z'}: k'' = k+k'+nkk', z'' = zz'·z'^{nk}."""
    return k + k2 + key.n * k * k2, (z_exponent + z2_exponent + key.n * k * z2_exponent) % key.r


def composition_law_violations(key: GroupKey) -> list[str]:
    """
    Check β_j∘β_{j'} = β_{jj'}, γ∘γ and β_j∘γ_{k,z} = γ_{k,z}∘β_j = α_{j,jk,z} as table identities.

    Returns the failed identities; empty when all hold.
    """
    params = valid_alpha_params(key)
    js = sorted({p.j for p in params})
    gammas = sorted({(p.k, p.z_exponent) for p in params if p.j == 1})
    betas = {j: beta_map(j, key) for j in js}
    gamma = {km: gamma_map(*km, key) for km in gammas}
    failed = []
    for j in js:
        for j2 in js:
            if betas[j].compose(betas[j2]) != betas[j * j2 % key.r]:
                failed.append(f"beta({j})*beta({j2}) != beta({j * j2 % key.r})")
    for k, m in gammas:
        for k2, m2 in gammas:
            k3, m3 = gamma_product_params(k, k2, m, m2, key)
            if gamma[k, m].compose(gamma[k2, m2]) != gamma_map(k3, m3, key):
                failed.append(f"gamma({k},c^{m})*gamma({k2},c^{m2}) != gamma({k3},c^{m3})")
    for j in js:
        for k, m in gammas:
            alpha = alpha_map(AlphaParams.of(j, j * k, m, key), key)
            if betas[j].compose(gamma[k, m]) != alpha or gamma[k, m].compose(betas[j]) != alpha:
                failed.append(f"beta({j}) and gamma({k},c^{m}) do not compose to alpha({j},{j * k},c^{m})")
    logger.debug(f"{key}: {len(failed)} composition laws failed")
    return failed


# Conjugation and inner automorphisms


def ad_map(g: WreathElement, key: GroupKey) -> GroupMap:
    """
    Ad(g): x ↦ gxg⁻¹ on G(r,p,n), for g in G(r,1,n).

    Raises:
        ParameterError: g is not in G(r,1,n)
    """
    if g.modulus != key.r or g.n != key.n:
        raise ParameterError(f"{g} is not in G({key.r},1,{key.n})")
    g_inv = invert(g)
    return GroupMap.from_function(
        get_group(key), lambda x: multiply(multiply(g, x), g_inv), f"Ad{g}", audit=False
    )


def is_inner_element(g: WreathElement, key: GroupKey) -> bool:
    """Ad(g) is inner on G(r,p,n) iff Δ(g) ∈ dZ_r with d = gcd(p,n)."""
    if g.modulus != key.r or g.n != key.n:
        raise ParameterError(f"{g} is not in G({key.r},1,{key.n})")
    return g.delta % key.gcd_pn == 0


def is_inner_map(m: GroupMap) -> bool:
    """Direct comparison with Ad(h) for every h in the group."""
    group = m.group
    gens = group.generators
    targets = [m(s) for s in gens]
    for h in group.elements:
        h_inv = invert(h)
        if all(multiply(multiply(h, s), h_inv) == t for s, t in zip(gens, targets)):
            return True
    return False


def is_inner(x: Union[GroupMap, WreathElement], key: Optional[GroupKey] = None) -> bool:
    if isinstance(x, GroupMap):
        return is_inner_map(x)
    if key is None:
        raise ParameterError("an element needs a group key to decide inner-ness")
    return is_inner_element(x, key)


def inner_automorphism_count(key: GroupKey) -> int:
    group = get_group(key)
    return group.order // len(group.center)


# Maps given on generators


def extend_generators(images: Mapping[WreathElement, WreathElement], key: GroupKey, name: str = "") -> GroupMap:
    """
    Extend generator images to the whole group along the Cayley graph.

    Raises:
        NotAHomomorphismError: some element receives two different images
        NotAnAutomorphismError: an image leaves the group, or the result is not bijective
        ParameterError: the given elements do not generate the group
    """
    group = get_group(key)
    for s, t in images.items():
        if s not in group or t not in group:
            raise NotAnAutomorphismError(f"{s} -> {t} leaves {key}", "closure")
    pairs = list(images.items())
    assigned = {group.identity: group.identity}
    frontier = [group.identity]
    while frontier:
        w = frontier.pop()
        w_image = assigned[w]
        for s, t in pairs:
            ws = multiply(w, s)
            target = multiply(w_image, t)
            known = assigned.get(ws)
            if known is None:
                assigned[ws] = target
                frontier.append(ws)
            elif known != target:
                raise NotAHomomorphismError(
                    f"{name or 'generator images'} on {key}: {ws} gets {known} and {target}"
                )
    if len(assigned) != group.order:
        raise ParameterError(f"the given elements generate only {len(assigned)} of {group.order} elements")
    result = GroupMap(group, tuple(group.index[assigned[g]] for g in group.elements), name)
    if not result.is_bijective:
        raise NotAnAutomorphismError(f"{name or 'map'} on {key} is not bijective", "bijective")
    return result


# Generator-image tables of the exceptional automorphisms
ETA_TABLES: dict[tuple[int, int, int], list[tuple[str, dict[str, object]]]] = {
    (2, 1, 2): [("eta", {"s_1": "t", "t": "s_1"})],
    (2, 2, 2): [("eta", {"s_1": "s", "s_1'": "s_1", "s": "s_1'"})],
    (4, 2, 2): [("eta", {"s_1": "t^2", "s_1'": "s_1", "t^2": "s_1'"})],
    (3, 3, 3): [
        ("eta", {"s_1": "s_2", "s_2": "s_1'", "s_1'": "s_1"}),
        ("eta'", {"s_1": "s_1", "s_2": "s_2", "s_1'": "s_2'"}),
    ],
    (2, 2, 4): [("eta", {"s_1": "s_1'", "s_2": "s_2", "s_3": "s_1", "s_1'": "s_3"})],
    (1, 1, 6): [
        (
            "eta",
            {
                "s_1": ((1, 2), (3, 4), (5, 6)),
                "s_2": ((1, 5), (2, 3), (4, 6)),
                "s_3": ((1, 2), (3, 6), (4, 5)),
                "s_4": ((1, 5), (2, 6), (3, 4)),
                "s_5": ((1, 2), (3, 5), (4, 6)),
            },
        )
    ],
}


def named_element(name: object, key: GroupKey) -> WreathElement:
    """Resolve a generator name (``s_1``, ``s_2'``, ``t^2``, …) or a tuple of 1-based cycles."""
    if isinstance(name, tuple):
        return WreathElement(Perm.from_cycles(key.n, *name).images, (0,) * key.n, key.r)
    named = standard_generators(key)
    base, _, exponent = str(name).partition("^")
    if base not in named:
        raise ParameterError(f"unknown generator {name!r} for {key}")
    return power(named[base], int(exponent)) if exponent else named[base]


def eta_maps(key: GroupKey) -> list[GroupMap]:
    """The exceptional automorphisms η (and η' for G(3,3,3)); empty for other keys."""
    maps = []
    for name, table in ETA_TABLES.get((key.r, key.p, key.n), []):
        images = {named_element(s, key): named_element(t, key) for s, t in table.items()}
        maps.append(extend_generators(images, key, name))
    return maps


# Enumeration


@dataclass(frozen=True, eq=False)
class AutomorphismSet:
    """Automorphisms stored by the images of the group's generators."""

    group: GroupData
    signatures: frozenset[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.signatures)

    def materialize(self, signature: tuple[int, ...]) -> GroupMap:
        elements = self.group.elements
        images = {s: elements[i] for s, i in zip(self.group.generators, signature)}
        return extend_generators(images, self.group.key)

    def closed_under_composition(self, samples: int = 20, seed: int = 0) -> bool:
        ordered = sorted(self.signatures)
        rng = random.Random(seed)
        for _ in range(samples):
            a = self.materialize(rng.choice(ordered))
            b = self.materialize(rng.choice(ordered))
            if a.compose(b).generator_images() not in self.signatures:
                return False
        return True


def valid_alpha_params(key: GroupKey) -> list[AlphaParams]:
    """Every (j, k, z) with j mod r, k mod r/p and z a central involution of G(r,p,n)."""
    candidates = [0, key.r // 2] if key.r % 2 == 0 else [0]
    z_exponents = [m for m in candidates if (key.n * m) % key.p == 0]
    found = []
    for j in range(key.r):
        for k in range(key.index):
            for m in z_exponents:
                params = AlphaParams.of(j, k, m, key)
                if not alpha_violations(params, key):
                    found.append(params)
    return found


def _eta_powers(maps: list[GroupMap]) -> list[GroupMap]:
    powers = []
    for m in maps:
        current = GroupMap.identity(m.group)
        cycle = []
        while True:
            cycle.append(current)
            current = current.compose(m)
            if current.is_identity:
                break
        powers.append(cycle)
    return powers


def enumerate_aut(key: GroupKey, budget: Optional[int] = None) -> AutomorphismSet:
    """
    All composites η^{i1}∘η'^{i2}∘Ad(g)∘α_{j,k,z}, deduplicated by generator images.

    Raises:
        SizeError: the group or its ambient group exceeds the budget
    """
    group = get_group(key, budget)
    ambient = get_group(key.ambient, budget)
    gens = group.generators
    index = group.index
    eta_cycles = _eta_powers(eta_maps(key))
    outer = [GroupMap.identity(group)]
    for cycle in eta_cycles:
        outer = [e.compose(o) for e in cycle for o in outer]
    outer_tables = [o.images for o in outer]
    signatures: set[tuple[int, ...]] = set()
    for params in valid_alpha_params(key):
        alpha_images = [alpha_apply(params, s) for s in gens]
        for h in ambient.elements:
            h_inv = invert(h)
            conjugated = [index[multiply(multiply(h, a), h_inv)] for a in alpha_images]
            for table in outer_tables:
                signatures.add(tuple(table[i] for i in conjugated))
    logger.info(f"Enumerated {len(signatures)} automorphisms of {key}")
    return AutomorphismSet(group, frozenset(signatures))


# Closed forms


_EXCEPTIONAL_C = {
    (1, 1, 2): Fraction(1),
    (2, 2, 2): Fraction(3),
    (2, 1, 2): Fraction(1),
    (4, 2, 2): Fraction(3, 2),
    (3, 3, 3): Fraction(4),
    (2, 2, 4): Fraction(6),
    (1, 1, 6): Fraction(2),
}
_EXCEPTIONAL_C_PRIME = {(1, 1, 2): Fraction(2), (2, 2, 2): Fraction(2)}


class AutOrder(NamedTuple):
    aut: int
    out: int
    center: int
    c: Fraction
    c_prime: Fraction
    e: int
    phi_r: int


def _constant_c(key: GroupKey) -> Fraction:
    triple = (key.r, key.p, key.n)
    if triple in _EXCEPTIONAL_C:
        return _EXCEPTIONAL_C[triple]
    if key.n == 2:
        return Fraction(1, 2)
    if key.r % 2:
        return Fraction(1)
    if key.p % 2 == 0 and key.index % 2 and key.n % 2:
        return Fraction(1)
    return Fraction(2)


def aut_order_formula(key: GroupKey) -> AutOrder:
    """|Aut|, |Out| and |Z| of G(r,p,n) in closed form."""
    phi_r = int(totient(key.r))
    if key.n == 1:
        phi = int(totient(key.index))
        return AutOrder(phi, phi, key.index, Fraction(1), Fraction(1), 1, phi_r)
    e = max(d for d in divisors(key.index) if gcd(d, key.n) == 1)
    c = _constant_c(key)
    c_prime = _EXCEPTIONAL_C_PRIME.get((key.r, key.p, key.n), Fraction(1))
    unit_part = Fraction(phi_r * int(totient(e)), e)
    aut = c / c_prime * unit_part * key.order
    out = c * unit_part * key.index * key.gcd_pn
    center = c_prime * key.index * key.gcd_pn
    for value in (aut, out, center):
        if value.denominator != 1:
            raise ParameterError(f"order formula for {key} is not integral: {value}")
    return AutOrder(int(aut), int(out), int(center), c, c_prime, e, phi_r)


# Classification


class GimDecision(NamedTuple):
    answer: bool
    reason: str


def gim_exists(key: GroupKey) -> GimDecision:
    """Whether G(r,p,n) has a generalized involution model, with the deciding clause."""
    if key.gcd_pn == 1:
        return GimDecision(True, "gcd-one")
    if key.n == 2 and key.index % 2:
        return GimDecision(True, "rank-two-odd-index")
    if key.gcd_pn > 2:
        return GimDecision(False, "degree-sum-inequality")
    if key.index % 2 == 0:
        return GimDecision(False, "commutator-obstruction")
    return GimDecision(False, "rank-above-two")
