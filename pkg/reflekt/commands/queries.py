"""Per-key subcommands: group, chars, gelfand, gim, aut and cache."""
import argparse
from typing import Optional

from reflekt.commands.output import emit
from reflekt.errors import ParameterError
from reflekt.schemas.group import ElementModel, GroupKeyModel, GroupSummary
from reflekt.schemas.report import (
    AutFormula,
    AutPayload,
    CachePayload,
    CharsPayload,
    CycloModel,
    GelfandPayload,
    GimClass,
    GimPayload,
    IrrEntry,
    VariantOutcome,
)
from reflekt.services import automorphisms, characters, involutions
from reflekt.services.group import GroupKey, get_group, predicted_center
from reflekt.services.group_cache import cache_roundtrip, load_or_build, purge_stale
from reflekt.services.maps import inverse_transpose_map
from reflekt.services.suite import parse_grid
from reflekt.settings import settings


def _single_key(args: argparse.Namespace) -> GroupKey:
    return GroupKey.parse(args.key[0] if isinstance(args.key, list) else args.key)


def group(args: argparse.Namespace) -> int:
    key = _single_key(args)
    if settings.cache_enabled:
        data, cache_hit = load_or_build(key, settings.cache_dir)
    else:
        data, cache_hit = get_group(key), False
    emit(
        GroupSummary(
            key=GroupKeyModel.from_key(key),
            order=data.order,
            expected_order=key.order,
            class_count=len(data.classes),
            center=[ElementModel.from_element(g) for g in data.center],
            center_matches_prediction=frozenset(data.center) == predicted_center(key),
            cache_hit=cache_hit,
        ),
        args.json,
    )
    return 0


def chars(args: argparse.Namespace) -> int:
    key = _single_key(args)
    group_data = get_group(key)
    entries = []
    for orbit in characters.irr_orbits(key):
        values = None
        if args.values and orbit.stabilizer_order == 1:
            chi = characters.restrict(characters.chi_theta_character(orbit.representative), group_data)
            values = {c: CycloModel(**v) for c, v in chi.to_json().items()}
        entries.append(
            IrrEntry(
                theta=orbit.representative.to_json(),
                orbit_size=len(orbit.orbit),
                degree=orbit.degree,
                values=values,
            )
        )
    emit(
        CharsPayload(key=GroupKeyModel.from_key(key), degrees=characters.irr_degree_list(key), irr=entries),
        args.json,
    )
    return 0


def gelfand(args: argparse.Namespace) -> int:
    key = _single_key(args)
    symmetric = characters.symmetric_count_check(key)
    outcomes = []
    for variant in involutions.ModelVariant:
        try:
            result = involutions.gelfand_check(variant, key)
        except ParameterError as e:
            # preconditions of this variant do not hold for the key
            outcomes.append(VariantOutcome(variant=variant.value, reason=str(e)))
            continue
        outcomes.append(
            VariantOutcome(
                variant=variant.value,
                passed=result.passed,
                model_character=result.model_character.as_integers(),
                counting_character=result.counting_character.as_integers(),
            )
        )
    emit(
        GelfandPayload(
            key=GroupKeyModel.from_key(key),
            symmetric_count=symmetric.symmetric_count,
            degree_sum=symmetric.degree_sum,
            variants=outcomes,
        ),
        args.json,
    )
    return 0


def _find_model(key: GroupKey) -> Optional[involutions.ModelCandidate]:
    if key.n == 2 and key.r % 2 == 0 and key.p % 2 == 0 and key.index % 2 == 1:
        return involutions.gim_grp2(key.r, key.p)
    if key.gcd_pn == 1:
        variant = "restricted" if characters.reflection_gelfand_predicate(key) else "twisted"
        return involutions.extract_gim(involutions.build_model_rep(variant, key))
    return involutions.brute_gim_search(key, inverse_transpose_map(get_group(key)))


def gim(args: argparse.Namespace) -> int:
    key = _single_key(args)
    decision = automorphisms.gim_exists(key)
    tau = inverse_transpose_map(get_group(key))
    candidate = _find_model(key)
    classes = []
    verified = False
    if candidate is not None:
        verified = involutions.verify_gim(candidate, key, tau)
        for omega, character in candidate.entries:
            if character.is_sign_valued:
                signs = {str(g): s for g, s in sorted(character.signs().items())}
            else:
                signs = {str(g): str(v) for g, v in sorted(character.values.items(), key=lambda item: item[0])}
            classes.append(
                GimClass(
                    rep=ElementModel.from_element(omega),
                    centralizer_order=len(character.domain),
                    signs=signs,
                )
            )
    emit(
        GimPayload(
            key=GroupKeyModel.from_key(key),
            exists=decision.answer,
            reason=decision.reason,
            classes=classes,
            verified=verified,
        ),
        args.json,
    )
    return 0 if verified == decision.answer else 1


def aut(args: argparse.Namespace) -> int:
    key = _single_key(args)
    formula = automorphisms.aut_order_formula(key)
    enumerated = None
    if args.enumerate or key.order <= settings.aut_budget:
        enumerated = len(automorphisms.enumerate_aut(key))
    emit(
        AutPayload(
            key=GroupKeyModel.from_key(key),
            aut_order=formula.aut,
            out_order=formula.out,
            center_order=formula.center,
            formula=AutFormula(c=str(formula.c), c_prime=str(formula.c_prime), e=formula.e, phi_r=formula.phi_r),
            enumerated=enumerated,
            match=None if enumerated is None else enumerated == formula.aut,
        ),
        args.json,
    )
    return 1 if enumerated is not None and enumerated != formula.aut else 0


def cache(args: argparse.Namespace) -> int:
    purged = [str(p) for p in purge_stale(settings.cache_dir)] if args.purge else []
    keys = {GroupKey.parse(text) for text in args.key or []}
    if args.grid is not None:
        keys.update(parse_grid(args.grid))
    roundtrip = {key.label: cache_roundtrip(key, settings.cache_dir) for key in sorted(keys)}
    emit(CachePayload(cache_dir=str(settings.cache_dir), roundtrip=roundtrip, purged=purged), args.json)
    return 0 if all(roundtrip.values()) else 1
