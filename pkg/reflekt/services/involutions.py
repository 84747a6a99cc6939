"""Generalized involutions, twisted classes, model representations and involution models."""
from __future__ import annotations

import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, lcm, prod
from typing import NamedTuple, Optional

from reflekt.errors import (
    ConsistencyError,
    ParameterError,
    SizeError,
    UnsupportedKeyError,
)
from reflekt.services.characters import (
    ClassFunction,
    gamma_character,
    irr_degree_list,
    symmetric_count_check,
)
from reflekt.services.cyclotomic import CycloNumber
from reflekt.services.group import (
    GroupData,
    GroupKey,
    Perm,
    WreathElement,
    central_power,
    get_group,
    invert,
    multiply,
)
from reflekt.services.maps import GroupMap, inverse_transpose_map
from reflekt.services.subgroups import (
    LinearChar,
    abelianization_order,
    derived_subgroup,
    is_subgroup,
    linear_characters,
)
from reflekt.settings import settings

logger = logging.getLogger(__name__)


# Twisted classes


@dataclass(frozen=True, eq=False)
class TwistedOrbitDecomposition:
    """Orbits of g: ω ↦ g·ω·τ(g)⁻¹ on I_{G,τ} = {ω : ω·τ(ω) = 1}."""

    key: GroupKey
    tau: GroupMap
    involutions: frozenset[WreathElement]
    orbits: tuple[tuple[WreathElement, ...], ...]
    centralizers: dict[WreathElement, frozenset[WreathElement]]

    @property
    def reps(self) -> tuple[WreathElement, ...]:
        return tuple(orbit[0] for orbit in self.orbits)

    def orbit_index(self, omega: WreathElement) -> int:
        for i, orbit in enumerate(self.orbits):
            if omega in orbit:
                return i
        raise ParameterError(f"{omega} is not a generalized involution")


def _check_tau(key: GroupKey, tau: GroupMap) -> GroupData:
    if tau.key != key:
        raise ParameterError(f"automorphism on {tau.key} used for {key}")
    if not tau.is_involution:
        raise ParameterError(f"{tau.name or 'automorphism'} is not an involution")
    return tau.group


def _tau_inverse_table(tau: GroupMap) -> list[WreathElement]:
    """τ(g)⁻¹ for every element, in element order."""
    elements = tau.group.elements
    return [invert(elements[j]) for j in tau.images]


def twisted_decomposition(key: GroupKey, tau: GroupMap) -> TwistedOrbitDecomposition:
    """
    Decompose the generalized involutions of G(r,p,n) into twisted classes.

    Raises:
        ParameterError: τ is not involutive or belongs to another group
    """
    group = _check_tau(key, tau)
    elements, index = group.elements, group.index
    tau_inverse = _tau_inverse_table(tau)
    involutions = frozenset(
        w for i, w in enumerate(elements) if multiply(w, elements[tau.images[i]]).is_identity
    )
    gens = [(s, tau_inverse[index[s]]) for s in group.generators]
    assigned: set[WreathElement] = set()
    orbits = []
    for omega in sorted(involutions):
        if omega in assigned:
            continue
        orbit = {omega}
        frontier = [omega]
        while frontier:
            w = frontier.pop()
            for s, s_twist in gens:
                v = multiply(multiply(s, w), s_twist)
                if v not in orbit:
                    orbit.add(v)
                    frontier.append(v)
        assigned |= orbit
        orbits.append(tuple(sorted(orbit)))
    centralizers = {}
    for orbit in orbits:
        omega = orbit[0]
        stabilizer = frozenset(
            g for i, g in enumerate(elements) if multiply(multiply(g, omega), tau_inverse[i]) == omega
        )
        if len(stabilizer) * len(orbit) != group.order:
            raise ConsistencyError(f"orbit-stabilizer fails at {omega} in {key}")
        centralizers[omega] = stabilizer
    logger.debug(f"{key}: {len(involutions)} generalized involutions in {len(orbits)} twisted classes")
    return TwistedOrbitDecomposition(key, tau, involutions, tuple(orbits), centralizers)


def counting_char(key: GroupKey, tau: GroupMap) -> ClassFunction:
    """
    χ(g) = |{u : u·τ(u) = g}|.

    Raises:
        ConsistencyError: the counts are not constant on conjugacy classes
    """
    group = _check_tau(key, tau)
    elements = group.elements
    counts: dict[WreathElement, int] = defaultdict(int)
    for i, u in enumerate(elements):
        counts[multiply(u, elements[tau.images[i]])] += 1
    values = []
    for members in group.classes:
        value = counts.get(members[0], 0)
        if any(counts.get(g, 0) != value for g in members):
            raise ConsistencyError(f"counting function of {key} is not a class function")
        values.append(value)
    return ClassFunction.from_values(group, values)


# Signs


class PermStats(NamedTuple):
    inversions: frozenset[tuple[int, int]]
    pairs: frozenset[tuple[int, int]]
    fixed: tuple[int, ...]


def perm_stats(perm: Perm) -> PermStats:
    """(Inv(π), Pair(π), Fix(π)), 1-based."""
    return PermStats(perm.inversions(), perm.pairs(), perm.fixed_points())


def _sign(g: WreathElement, omega: WreathElement, odd_branch: bool = True) -> int:
    """(−1)^{|B|}·(−1)^{|Inv(|g|) ∩ Pair(|ω|)|}; B uses odd phases z = 2k+1 or even phases z = 2k."""
    r = g.modulus
    count = 0
    wperm, gperm = omega.perm, g.perm
    if r % 2 == 0:
        half = r // 2
        for i, j in enumerate(wperm):
            if i == j:
                z = omega.phases[i]
                if (z % 2 == 1) == odd_branch and half <= g.phases[i] + z // 2 <= r - 1:
                    count += 1
    for i, j in enumerate(wperm):
        if i < j and gperm[i] > gperm[j]:
            count += 1
    return -1 if count % 2 else 1


def _require_symmetric(omega: WreathElement) -> None:
    if omega.transpose() != omega:
        raise ParameterError(f"{omega} is not symmetric")


def sign_apr(g: WreathElement, omega: WreathElement, key: GroupKey) -> int:
    """
    The sign of g on the basis vector C_ω of the involution model of G(r,1,n).

    Raises:
        ParameterError: ω is not symmetric
    """
    _require_symmetric(omega)
    if g.modulus != key.r or omega.modulus != key.r:
        raise ParameterError(f"elements do not belong to {key}")
    return _sign(g, omega)


def _check_twisted_key(key: GroupKey) -> None:
    if key.p % 2 or key.index % 2 or key.gcd_pn != 1:
        raise ParameterError(f"{key} needs p and r/p even and gcd(p,n) = 1")


def _twisted_sign(g: WreathElement, omega: WreathElement, p: int) -> int:
    return _sign(g, omega, odd_branch=omega.delta % (2 * p) == 0)


def sign_twisted(g: WreathElement, omega: WreathElement, key: GroupKey) -> int:
    """
    The sign of the twisted model: odd phases when 2p divides Δ(ω), even phases otherwise.

    Raises:
        ParameterError: parity preconditions fail, or ω is not symmetric in G(r,p,n)
    """
    _check_twisted_key(key)
    _require_symmetric(omega)
    if omega.delta % key.p:
        raise ParameterError(f"{omega} is not in {key}")
    return _twisted_sign(g, omega, key.p)


def delta_parity_preserved(key: GroupKey) -> bool:
    """Δ(gωg^T) − Δ(ω) lies in 2pZ_r for all g and symmetric ω of G(r,p,n)."""
    group = get_group(key)
    modulus = gcd(2 * key.p, key.r)  # 2pZ_r is generated by gcd(2p, r)
    symmetric = [w for w in group.elements if w.is_symmetric]
    for g in group.elements:
        gt = g.transpose()
        for w in symmetric:
            if (multiply(multiply(g, w), gt).delta - w.delta) % key.r % modulus:
                return False
    return True


# Model representations


class ModelVariant(str, Enum):
    APR = "apr"
    RESTRICTED = "restricted"
    TWISTED = "twisted"


@dataclass(frozen=True, eq=False)
class ModelRep:
    """Signed permutation action g·C_ω = sign(g,ω)·C_{gωg^T} on symmetric elements."""

    variant: ModelVariant
    key: GroupKey
    group: GroupData
    basis: tuple[WreathElement, ...]
    basis_index: dict[WreathElement, int] = field(repr=False)

    def sign(self, g: WreathElement, omega: WreathElement) -> int:
        if self.variant is ModelVariant.TWISTED:
            return _twisted_sign(g, omega, self.key.p)
        return _sign(g, omega)

    def act(self, g: WreathElement, omega: WreathElement) -> tuple[WreathElement, int]:
        return multiply(multiply(g, omega), g.transpose()), self.sign(g, omega)

    def action(self, g: WreathElement) -> tuple[tuple[int, int], ...]:
        """(target basis index, sign) for each basis vector."""
        result = []
        for omega in self.basis:
            target, sign = self.act(g, omega)
            result.append((self.basis_index[target], sign))
        return tuple(result)

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _check_product(rep: ModelRep, g: WreathElement, h: WreathElement, omega: WreathElement) -> bool:
    """ρ(gh)C_ω = ρ(g)ρ(h)C_ω."""
    mid, sign_h = rep.act(h, omega)
    end, sign_g = rep.act(g, mid)
    direct, sign_gh = rep.act(multiply(g, h), omega)
    return direct == end and sign_gh == sign_g * sign_h


def _verify_homomorphism(rep: ModelRep) -> None:
    group = rep.group
    for s in group.generators:
        for g in group.elements:
            for omega in rep.basis:
                if not _check_product(rep, g, s, omega):
                    raise ConsistencyError(f"{rep.variant.value} model of {rep.key} fails at ({g}, {s}, {omega})")
    if group.order <= settings.exhaustive_pair_limit:
        triples = ((g, h, w) for g in group.elements for h in group.elements for w in rep.basis)
    else:
        rng = random.Random(settings.seed)
        triples = (
            (rng.choice(group.elements), rng.choice(group.elements), rng.choice(rep.basis))
            for _ in range(settings.sample_pairs)
        )
    for g, h, omega in triples:
        if not _check_product(rep, g, h, omega):
            raise ConsistencyError(f"{rep.variant.value} model of {rep.key} fails at ({g}, {h}, {omega})")


def build_model_rep(variant: ModelVariant | str, key: GroupKey, verify: bool = True) -> ModelRep:
    """
    Build the involution model representation on the symmetric elements of G(r,p,n).

    Raises:
        ParameterError: the variant's preconditions fail
        ConsistencyError: the action is not a homomorphism
    """
    variant = ModelVariant(variant)
    if variant is ModelVariant.APR and key.p != 1:
        raise ParameterError(f"the apr model needs p = 1, got {key}")
    if variant is ModelVariant.TWISTED:
        _check_twisted_key(key)
    group = get_group(key)
    basis = tuple(w for w in group.elements if w.is_symmetric)
    rep = ModelRep(variant, key, group, basis, {w: i for i, w in enumerate(basis)})
    if verify:
        _verify_homomorphism(rep)
    logger.info(f"Built {variant.value} model of {key}: dimension {rep.dimension}")
    return rep


def rep_character(rep: ModelRep) -> ClassFunction:
    """Trace of the signed permutation action."""
    values = []
    for g in rep.group.reps:
        gt = g.transpose()
        values.append(
            sum(rep.sign(g, w) for w in rep.basis if multiply(multiply(g, w), gt) == w)
        )
    return ClassFunction.from_values(rep.group, values)


class GelfandResult(NamedTuple):
    passed: bool
    model_character: ClassFunction
    counting_character: ClassFunction
    symmetric_equal: bool


def gelfand_check(variant: ModelVariant | str, key: GroupKey) -> GelfandResult:
    """
    Decide whether the variant's model is a Gelfand model of G(r,p,n).

    Raises:
        UnsupportedKeyError: gcd(p,n) > 2
        ParameterError: the variant's preconditions fail
    """
    if key.gcd_pn > 2:
        raise UnsupportedKeyError(f"{key}: gcd(p,n) = {key.gcd_pn} > 2")
    rep = build_model_rep(variant, key)
    model = rep_character(rep)
    counting = counting_char(key, inverse_transpose_map(rep.group))
    symmetric = symmetric_count_check(key)
    passed = model == counting and symmetric.equal
    logger.info(f"Gelfand check {ModelVariant(variant).value} on {key}: {passed}")
    return GelfandResult(passed, model, counting, symmetric.equal)


# Generalized involution models


@dataclass(frozen=True, eq=False)
class ModelCandidate:
    """One (representative, linear character) pair per twisted class."""

    entries: tuple[tuple[WreathElement, LinearChar], ...]

    def __len__(self) -> int:
        return len(self.entries)


def extract_gim(rep: ModelRep) -> ModelCandidate:
    """
    Read off λ_ω(g) = sign(g,ω) on each twisted centralizer.

    Raises:
        ConsistencyError: an extracted λ is not multiplicative
    """
    decomposition = twisted_decomposition(rep.key, inverse_transpose_map(rep.group))
    r = rep.key.r
    entries = []
    for omega in decomposition.reps:
        domain = decomposition.centralizers[omega]
        values = {g: CycloNumber.rational(rep.sign(g, omega), r) for g in domain}
        character = LinearChar(domain, values)
        character.check()
        entries.append((omega, character))
    return ModelCandidate(tuple(entries))


def induce_linear(character: LinearChar, key: GroupKey) -> ClassFunction:
    """
    Ind_H^G λ by the Frobenius formula, evaluated class by class.

    Raises:
        ParameterError: the domain is not a subgroup of G(r,p,n)
    """
    group = get_group(key)
    domain = character.domain
    if not domain <= group.index.keys() or not is_subgroup(domain):
        raise ParameterError(f"domain of the character is not a subgroup of {key}")
    sums: dict[int, CycloNumber] = {}
    for h in domain:
        c = group.class_of(h)
        sums[c] = sums[c] + character.values[h] if c in sums else character.values[h]
    values = []
    for c, members in enumerate(group.classes):
        if c in sums:
            values.append(sums[c] * Fraction(group.order // len(members), len(domain)))
        else:
            values.append(CycloNumber.rational(0, key.r))
    return ClassFunction(group, tuple(values))


def verify_gim(candidate: ModelCandidate, key: GroupKey, tau: GroupMap) -> bool:
    """
    Check that the induced characters of the candidate sum to the counting character.

    Raises:
        ParameterError: entries do not match the twisted classes one to one
    """
    decomposition = twisted_decomposition(key, tau)
    if sum(irr_degree_list(key)) != len(decomposition.involutions):
        logger.info(f"{key}: degree sum differs from |I|, no model with respect to {tau.name}")
        return False
    group = tau.group
    tau_inverse = _tau_inverse_table(tau)
    hit = [0] * len(decomposition.orbits)
    for omega, character in candidate.entries:
        if omega not in decomposition.involutions:
            raise ParameterError(f"{omega} is not a generalized involution of {key}")
        i = decomposition.orbit_index(omega)
        hit[i] += 1
        stabilizer = frozenset(
            g for j, g in enumerate(group.elements) if multiply(multiply(g, omega), tau_inverse[j]) == omega
        )
        if character.domain != stabilizer:
            raise ParameterError(f"character domain is not the twisted centralizer of {omega}")
    if any(count != 1 for count in hit):
        raise ParameterError("candidate does not meet every twisted class exactly once")
    total = sum((induce_linear(character, key) for _, character in candidate.entries), start=0)
    return total == counting_char(key, tau)


# Rank two


def _check_grp2(r: int, p: int) -> GroupKey:
    if r % 2 or p % 2 or r % p or (r // p) % 2 == 0:
        raise ParameterError(f"rank-two model needs r, p even, p | r and r/p odd; got r={r}, p={p}")
    return GroupKey(r, p, 2)


def _grp2_reps(r: int, p: int) -> tuple[WreathElement, ...]:
    return (
        WreathElement.of((0, 0), r=r),
        WreathElement.of((1, -1), r=r),
        WreathElement.of((0, 0), (2, 1), r=r),
        WreathElement.of((p // 2, p // 2), (2, 1), r=r),
    )


def gim_grp2(r: int, p: int) -> ModelCandidate:
    """
    The explicit involution model of G(r,p,2) for r, p even and r/p odd.

    Raises:
        ParameterError: parity preconditions fail
        ConsistencyError: a centralizer differs from its closed form
    """
    key = _check_grp2(r, p)
    group = get_group(key)
    tau_inverse = _tau_inverse_table(inverse_transpose_map(group))
    half = r // 2
    closed = grp2_centralizer_closed_forms(r, p)
    lambda2_table = {
        WreathElement.of((0, 0), r=r): 1,
        WreathElement.of((half, half), r=r): -1,
        WreathElement.of((-1, 1), (2, 1), r=r): -1,
        WreathElement.of((half - 1, half + 1), (2, 1), r=r): 1,
    }
    rules = (
        lambda g: 1,
        lambda g: lambda2_table[g],
        lambda g: g.permutation.sign,
        lambda g: g.permutation.sign * (-1) ** g.phases[0],
    )
    entries = []
    for i, (omega, rule) in enumerate(zip(_grp2_reps(r, p), rules), start=1):
        domain = frozenset(
            g for j, g in enumerate(group.elements) if multiply(multiply(g, omega), tau_inverse[j]) == omega
        )
        if domain != closed[i]:
            raise ConsistencyError(f"twisted centralizer of {omega} differs from its closed form")
        character = LinearChar(domain, {g: CycloNumber.rational(rule(g), r) for g in domain})
        character.check()
        entries.append((omega, character))
    return ModelCandidate(tuple(entries))


def grp2_centralizer_closed_forms(r: int, p: int) -> dict[int, frozenset[WreathElement]]:
    """C(ω_1), C(ω_2) of order 4 and C(ω_3) = C(ω_4) = G(r,r,2), as listed sets."""
    _check_grp2(r, p)
    half = r // 2
    same_rr = frozenset(g for g in get_group(GroupKey(r, r, 2)).elements)
    return {
        1: frozenset({
            WreathElement.of((0, 0), r=r),
            WreathElement.of((half, half), r=r),
            WreathElement.of((0, 0), (2, 1), r=r),
            WreathElement.of((half, half), (2, 1), r=r),
        }),
        2: frozenset({
            WreathElement.of((0, 0), r=r),
            WreathElement.of((half, half), r=r),
            WreathElement.of((-1, 1), (2, 1), r=r),
            WreathElement.of((half - 1, half + 1), (2, 1), r=r),
        }),
        3: same_rr,
        4: same_rr,
    }


def coset_representatives_grp2(r: int, p: int) -> dict[int, list[WreathElement]]:
    """h_ij = ((ip+j, −j), 1): i < r/p and j < r/2 for ω_1, ω_2; j = 0 for ω_3, ω_4."""
    _check_grp2(r, p)
    wide = [WreathElement.of((i * p + j, -j), r=r) for i in range(r // p) for j in range(r // 2)]
    narrow = [WreathElement.of((i * p, 0), r=r) for i in range(r // p)]
    return {1: wide, 2: wide, 3: narrow, 4: narrow}


def check_coset_representatives(r: int, p: int) -> bool:
    """Each h·C(ω_i) is disjoint from the others and together they cover G(r,p,2)."""
    key = _check_grp2(r, p)
    group = get_group(key)
    closed = grp2_centralizer_closed_forms(r, p)
    for i, reps in coset_representatives_grp2(r, p).items():
        covered: set[WreathElement] = set()
        for h in reps:
            coset = {multiply(h, c) for c in closed[i]}
            if covered & coset:
                return False
            covered |= coset
        if covered != set(group.elements):
            return False
    return True


def model_char_grp2(r: int, p: int, g: WreathElement) -> int:
    """(r²+2r)/p at 1; 2r/p at ((a,−a),1) with a ∈ 2Z_r∖{0}; 0 elsewhere."""
    key = _check_grp2(r, p)
    if g.modulus != r or g.n != 2 or g.delta % p:
        raise ParameterError(f"{g} is not in {key}")
    if g.is_identity:
        return (r * r + 2 * r) // p
    a, b = g.phases
    if g.perm == (0, 1) and (a + b) % r == 0 and a % 2 == 0:
        return 2 * r // p
    return 0


def lambda_closed_form(i: int, r: int, p: int, g: WreathElement) -> int:
    """Closed form of Ind λ_i at g = ((a,b),π) in G(r,p,2)."""
    _check_grp2(r, p)
    a, b = g.phases
    if (a + b) % r:
        return 0
    half = r // 2
    if g.perm == (0, 1):
        if i == 1:
            return r * r // (2 * p) if a == b else 0
        if i == 2:
            if a == b:
                return r * r // (2 * p) if a == 0 else -(r * r // (2 * p))
            return 0
        if i == 3:
            return r // p
        return r // p if a % 2 == 0 else -(r // p)
    if i == 1:
        if half % 2:
            return r // p
        return 2 * r // p if a % 2 == 0 else 0
    if i == 2:
        if half % 2 == 0:
            return 0
        return r // p if a % 2 == 0 else -(r // p)
    if i == 3:
        return -(r // p)
    return -(r // p) if a % 2 == 0 else r // p


# Obstructions and search


class PlusMinusResult(NamedTuple):
    passed: bool
    swapped: bool
    plus: ClassFunction
    minus: ClassFunction


def chi_pm_check(key: GroupKey) -> PlusMinusResult:
    """
    Split the involution model of G(r,1,n) by the parity of Δ(ω) and test γ⊗χ±.

    Raises:
        UnsupportedKeyError: r is odd
    """
    if key.r % 2:
        raise UnsupportedKeyError(f"{key}: the parity split needs r even")
    rep = build_model_rep(ModelVariant.APR, key.ambient)
    plus_values, minus_values = [], []
    for g in rep.group.reps:
        gt = g.transpose()
        plus = minus = 0
        for w in rep.basis:
            if multiply(multiply(g, w), gt) == w:
                if w.delta % 2:
                    minus += rep.sign(g, w)
                else:
                    plus += rep.sign(g, w)
        plus_values.append(plus)
        minus_values.append(minus)
    plus = ClassFunction.from_values(rep.group, plus_values)
    minus = ClassFunction.from_values(rep.group, minus_values)
    gamma = gamma_character(key)
    swapped = key.n % 2 == 1 and key.index % 2 == 1
    if swapped:
        passed = gamma * plus == minus and gamma * minus == plus
    else:
        passed = gamma * plus == plus and gamma * minus == minus
    return PlusMinusResult(passed, swapped, plus, minus)


def commutator_obstruction(key: GroupKey) -> bool:
    """
    True when c^{r/2} lies in [C, C] for the twisted centralizer C of every class.

    Raises:
        ParameterError: gcd(p,n) ≠ 2 or r/p odd
    """
    if key.gcd_pn != 2 or key.index % 2:
        raise ParameterError(f"{key} needs gcd(p,n) = 2 and r/p even")
    group = get_group(key)
    decomposition = twisted_decomposition(key, inverse_transpose_map(group))
    z = central_power(key.r, key.n, key.r // 2)
    for omega in decomposition.reps:
        if z not in derived_subgroup(decomposition.centralizers[omega]):
            logger.info(f"{key}: c^(r/2) escapes the commutator subgroup at {omega}")
            return False
    return True


def brute_gim_search(
    key: GroupKey, tau: GroupMap, budget: Optional[int] = None
) -> Optional[ModelCandidate]:
    """
    Search one linear character per twisted class whose inductions sum to the counting character.

    Raises:
        SizeError: the number of combinations exceeds the budget
    """
    budget = settings.search_budget if budget is None else budget
    decomposition = twisted_decomposition(key, tau)
    if sum(irr_degree_list(key)) != len(decomposition.involutions):
        logger.info(f"{key}: degree sum differs from |I|, search skipped")
        return None
    centralizers = decomposition.centralizers
    reps = sorted(decomposition.reps, key=lambda w: (-len(centralizers[w]), w))
    combinations = prod(abelianization_order(centralizers[w]) for w in reps)
    if combinations > budget:
        raise SizeError(f"model search on {key}", combinations, budget)
    modulus = lcm(key.r, *(abelianization_order(centralizers[w]) for w in reps))
    options = [
        [(chi, induce_linear(chi, key)) for chi in linear_characters(centralizers[w], modulus)]
        for w in reps
    ]
    target = counting_char(key, tau)
    target_degree = target.degree.as_rational()
    chosen: list[LinearChar] = []

    def extend(depth: int, partial: Optional[ClassFunction]) -> bool:
        if depth == len(reps):
            return partial == target
        for chi, induced in options[depth]:
            total = induced if partial is None else partial + induced
            if total.degree.as_rational() > target_degree:
                continue
            if total.inner(total) != total.inner(target):
                continue
            chosen.append(chi)
            if extend(depth + 1, total):
                return True
            chosen.pop()
        return False

    if not reps or not extend(0, None):
        logger.info(f"{key}: no generalized involution model with respect to {tau.name}")
        return None
    logger.info(f"{key}: found a generalized involution model with respect to {tau.name}")
    return ModelCandidate(tuple(zip(reps, chosen)))
