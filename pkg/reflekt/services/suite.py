"""Verification suites over a grid of group keys."""
import logging
import re
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, NamedTuple, Optional, Union

from reflekt import __version__
from reflekt.errors import ParameterError, ReflektError, SizeError, UnsupportedKeyError
from reflekt.schemas.report import CheckResult, VerificationReport
from reflekt.services import automorphisms, characters, involutions
from reflekt.services.group import (
    GroupKey,
    generating_set,
    get_group,
    invert,
    multiply,
    predicted_center,
)
from reflekt.services.group_cache import load_or_build
from reflekt.services.maps import inverse_transpose_map
from reflekt.services.subgroups import closure
from reflekt.settings import settings

logger = logging.getLogger(__name__)

SUITES = ("group", "chars", "involutions", "gelfand", "gim", "aut", "classify")

DEFAULT_GRID = "r<=6,p|r,n<=3"
EXTRA_KEYS = (GroupKey(4, 2, 4), GroupKey(2, 2, 4), GroupKey(1, 1, 6), GroupKey(8, 2, 3))

_BOUND_PATTERN = re.compile(r"^\s*r\s*<=\s*(\d+)\s*,\s*p\s*\|\s*r\s*,\s*n\s*<=\s*(\d+)\s*$")

CheckOutcome = Union[bool, tuple[bool, dict]]


class CheckSpec(NamedTuple):
    name: str
    topic: str
    run: Optional[Callable[[], CheckOutcome]]
    skip_reason: Optional[str] = None


def parse_grid(text: str) -> list[GroupKey]:
    """
    Parse ``"r<=R,p|r,n<=N"`` or a ``;``-separated list of keys such as ``"4,2,2;2,2,4"``.

    Raises:
        ParameterError: the text matches neither form
    """
    text = text.strip()
    if not text:
        return []
    match = _BOUND_PATTERN.match(text)
    if match:
        max_r, max_n = int(match.group(1)), int(match.group(2))
        return [
            GroupKey(r, p, n)
            for r in range(1, max_r + 1)
            for p in range(1, r + 1)
            if r % p == 0
            for n in range(1, max_n + 1)
        ]
    return sorted({GroupKey.parse(part) for part in text.split(";") if part.strip()})


def parse_checks(text: str) -> list[str]:
    """
    Split a comma-separated suite list.

    Raises:
        ParameterError: an unknown suite name
    """
    suites = [s.strip() for s in text.split(",") if s.strip()]
    unknown = sorted(set(suites) - set(SUITES))
    if unknown:
        raise ParameterError(f"unknown suites: {', '.join(unknown)}")
    return suites


def default_grid() -> list[GroupKey]:
    return sorted(set(parse_grid(DEFAULT_GRID)) | set(EXTRA_KEYS))


def _check(name: str, topic: str, run: Callable[[], CheckOutcome]) -> CheckSpec:
    return CheckSpec(name, topic, run)


def _skip(name: str, topic: str, reason: str) -> CheckSpec:
    return CheckSpec(name, topic, None, reason)


# Suites


def _group_checks(key: GroupKey) -> list[CheckSpec]:
    def order() -> CheckOutcome:
        group = get_group(key)
        return group.order == key.order, {"order": group.order, "expected": key.order}

    def center() -> CheckOutcome:
        found = frozenset(get_group(key).center)
        return found == predicted_center(key), {"center_order": len(found)}

    def generators() -> CheckOutcome:
        group = get_group(key)
        span = closure(generating_set(key), group.identity)
        return len(span) == group.order and span <= group.index.keys()

    return [
        _check("group.order", "|G(r,p,n)| = n!·r^n/p", order),
        _check("group.center", "center is generated by c^{p/gcd(p,n)}", center),
        _check("group.generators", "s_1..s_{n-1}, s, t^p generate G(r,p,n)", generators),
    ]


def _chars_checks(key: GroupKey) -> list[CheckSpec]:
    def degrees() -> CheckOutcome:
        found = characters.irr_degree_list(key)
        return sum(d * d for d in found) == key.order, {"count": len(found), "degree_sum": sum(found)}

    def symmetric() -> CheckOutcome:
        result = characters.symmetric_count_check(key)
        expected = key.gcd_pn <= 2
        return result.equal == expected, result._asdict()

    def norms() -> CheckOutcome:
        table = characters.irreducible_characters(key)
        bad = [str(theta) for theta, chi in table if chi.inner(chi) != 1]
        return not bad, {"checked": len(table), "failed": bad}

    return [
        _check("chars.degrees", "squared irreducible degrees sum to |G|", degrees),
        _check("chars.symmetric-count", "symmetric elements = degree sum iff gcd(p,n) <= 2", symmetric),
        _check("chars.norms", "restrictions with trivial stabilizer stay irreducible", norms),
    ]


def _involution_checks(key: GroupKey) -> list[CheckSpec]:
    def decomposition() -> CheckOutcome:
        group = get_group(key)
        found = involutions.twisted_decomposition(key, inverse_transpose_map(group))
        symmetric = sum(1 for g in group.elements if g.is_symmetric)
        details = {"involutions": len(found.involutions), "classes": len(found.orbits)}
        return len(found.involutions) == symmetric, details

    checks = [_check("involutions.twisted-classes", "twisted classes of the inverse transpose", decomposition)]
    if key.r % 2 == 0:
        checks.append(
            _check(
                "involutions.delta-parity",
                "Δ(gωg^T) ≡ Δ(ω) mod 2p",
                lambda: involutions.delta_parity_preserved(key),
            )
        )
        checks.append(
            _check(
                "involutions.plus-minus",
                "γ⊗χ± fixes or swaps the parity halves of the model",
                lambda: involutions.chi_pm_check(key).passed,
            )
        )
    if key.n == 2 and key.r % 2 == 0 and key.p % 2 == 0 and key.index % 2 == 1:
        checks.append(_check("involutions.rank-two", "explicit rank-two model", lambda: _rank_two(key)))
    return checks


def _rank_two(key: GroupKey) -> CheckOutcome:
    r, p = key.r, key.p
    group = get_group(key)
    candidate = involutions.gim_grp2(r, p)
    verified = involutions.verify_gim(candidate, key, inverse_transpose_map(group))
    covers = involutions.check_coset_representatives(r, p)
    closed = all(
        sum(involutions.lambda_closed_form(i, r, p, g) for i in range(1, 5))
        == involutions.model_char_grp2(r, p, g)
        for g in group.reps
    )
    induced = all(
        involutions.induce_linear(character, key).as_integers()
        == [involutions.lambda_closed_form(i, r, p, g) for g in group.reps]
        for i, (_, character) in enumerate(candidate.entries, start=1)
    )
    details = {
        "verified": verified,
        "cosets": covers,
        "closed_forms": closed,
        "induced": induced,
        "degree": involutions.model_char_grp2(r, p, group.identity),
    }
    return verified and covers and closed and induced, details


def _gelfand_checks(key: GroupKey) -> list[CheckSpec]:
    if key.gcd_pn > 2:
        return [_skip("gelfand", "model characters", f"gcd(p,n) = {key.gcd_pn} > 2")]
    checks = []
    if key.p == 1:
        checks.append(
            _check("gelfand.apr", "the involution model of G(r,1,n) is a Gelfand model",
                   lambda: involutions.gelfand_check("apr", key).passed)
        )
    if key.gcd_pn == 1:
        expected = characters.reflection_gelfand_predicate(key)

        def restricted() -> CheckOutcome:
            passed = involutions.gelfand_check("restricted", key).passed
            return passed == expected, {"gelfand": passed, "expected": expected}

        checks.append(
            _check("gelfand.restricted", "restricted model is Gelfand iff p or r/p is odd", restricted)
        )
    else:
        checks.append(_skip("gelfand.restricted", "restricted model", "gcd(p,n) = 2"))
    if _twisted_applies(key):
        checks.append(
            _check("gelfand.twisted", "the twisted model is a Gelfand model",
                   lambda: involutions.gelfand_check("twisted", key).passed)
        )
    return checks


def _twisted_applies(key: GroupKey) -> bool:
    return key.p % 2 == 0 and key.index % 2 == 0 and key.gcd_pn == 1


def _gim_checks(key: GroupKey) -> list[CheckSpec]:
    checks = []
    if key.gcd_pn == 1:
        variant = "restricted" if characters.reflection_gelfand_predicate(key) else "twisted"

        def extracted() -> CheckOutcome:
            rep = involutions.build_model_rep(variant, key)
            candidate = involutions.extract_gim(rep)
            tau = inverse_transpose_map(rep.group)
            return involutions.verify_gim(candidate, key, tau), {"variant": variant, "classes": len(candidate)}

        checks.append(_check("gim.extract", "signs of a Gelfand model form an involution model", extracted))
    if key.gcd_pn == 2 and key.index % 2 == 0:
        checks.append(
            _check("gim.commutator", "c^{r/2} lies in every twisted centralizer's commutator subgroup",
                   lambda: involutions.commutator_obstruction(key))
        )

    def search() -> CheckOutcome:
        group = get_group(key)
        found = involutions.brute_gim_search(key, inverse_transpose_map(group))
        expected = automorphisms.gim_exists(key).answer
        return (found is not None) == expected, {"found": found is not None}

    checks.append(_check("gim.search", "exhaustive model search agrees with the classification", search))
    return checks


def _aut_checks(key: GroupKey) -> list[CheckSpec]:
    if key.order > settings.aut_budget:
        return [_skip("aut", "automorphism group", f"|G| = {key.order} exceeds aut budget {settings.aut_budget}")]

    def count() -> CheckOutcome:
        formula = automorphisms.aut_order_formula(key)
        found = automorphisms.enumerate_aut(key)
        return len(found) == formula.aut, {"enumerated": len(found), "formula": formula.aut}

    def center() -> CheckOutcome:
        formula = automorphisms.aut_order_formula(key)
        return formula.center == len(get_group(key).center)

    def inner() -> CheckOutcome:
        group = get_group(key)
        ambient = get_group(key.ambient)
        inner_images = set()
        for h in group.elements:
            h_inv = invert(h)
            inner_images.add(tuple(multiply(multiply(h, s), h_inv) for s in group.generators))
        mismatched = 0
        for g in ambient.elements:
            g_inv = invert(g)
            images = tuple(multiply(multiply(g, s), g_inv) for s in group.generators)
            if (images in inner_images) != automorphisms.is_inner_element(g, key):
                mismatched += 1
        return mismatched == 0, {"mismatched": mismatched}

    def inverse_transpose() -> CheckOutcome:
        tau = inverse_transpose_map(get_group(key))
        alpha = automorphisms.alpha_map(automorphisms.AlphaParams.of(-1, 0, 0, key), key)
        identity = automorphisms.alpha_map(automorphisms.AlphaParams.of(1, 0, 0, key), key)
        return alpha == tau and identity.is_identity and tau.is_involution

    expected_eta = 2 if (key.r, key.p, key.n) == (3, 3, 3) else int((key.r, key.p, key.n) in automorphisms.ETA_TABLES)

    def eta() -> CheckOutcome:
        maps = automorphisms.eta_maps(key)
        details = {"maps": [m.name for m in maps]}
        if maps:
            details["s_i'"] = "(e_i - e_{i+1}, (i i+1)) for every i"
        return len(maps) == expected_eta, details

    def compose() -> CheckOutcome:
        failed = automorphisms.composition_law_violations(key)
        return not failed, {"failed": failed}

    return [
        _check("aut.count", "|Aut| matches the closed formula", count),
        _check("aut.compose", "β∘β, γ∘γ and β∘γ = γ∘β = α as table identities", compose),
        _check("aut.center", "|Z| matches the closed formula", center),
        _check("aut.inner", "Ad(g) is inner iff Δ(g) ∈ gcd(p,n)Z_r", inner),
        _check("aut.alpha", "α_{1,0,1} = id and α_{-1,0,1} = inverse transpose", inverse_transpose),
        _check("aut.eta", "exceptional automorphisms extend from generators", eta),
    ]


def _model_evidence(key: GroupKey) -> tuple[str, bool]:
    """
    Decide model existence without gim_exists: (source, found).

    Raises:
        SizeError: only an exhaustive search could decide and it exceeds the budget
    """
    tau = inverse_transpose_map(get_group(key))
    if key.gcd_pn > 2:
        return "degree-sum", characters.symmetric_count_check(key).equal
    if key.gcd_pn == 1:
        variant = "restricted" if characters.reflection_gelfand_predicate(key) else "twisted"
        rep = involutions.build_model_rep(variant, key)
        return f"extracted-{variant}", involutions.verify_gim(involutions.extract_gim(rep), key, tau)
    if key.index % 2 == 0:
        return "commutator", not involutions.commutator_obstruction(key)
    if key.n == 2:
        return "rank-two-model", involutions.verify_gim(involutions.gim_grp2(key.r, key.p), key, tau)
    return "search", involutions.brute_gim_search(key, tau) is not None


def _classify_checks(key: GroupKey) -> list[CheckSpec]:
    def classify() -> CheckOutcome:
        decision = automorphisms.gim_exists(key)
        details = {"exists": decision.answer, "reason": decision.reason}
        details["evidence"], found = _model_evidence(key)
        details["model_found"] = found
        return found == decision.answer, details

    return [_check("classify.gim-exists", "existence of an involution model", classify)]


_SUITE_BUILDERS = {
    "group": _group_checks,
    "chars": _chars_checks,
    "involutions": _involution_checks,
    "gelfand": _gelfand_checks,
    "gim": _gim_checks,
    "aut": _aut_checks,
    "classify": _classify_checks,
}


# Runner


def _run_check(spec: CheckSpec, key: GroupKey) -> CheckResult:
    name = f"{spec.name}[{key.label}]"
    if spec.run is None:
        logger.warning(f"Skipping {name}: {spec.skip_reason}")
        return CheckResult(name=name, topic=spec.topic, status="skipped", reason=spec.skip_reason)
    started = time.perf_counter()
    status, reason, details = "fail", None, {}
    try:
        outcome = spec.run()
        passed, details = outcome if isinstance(outcome, tuple) else (outcome, {})
        status = "pass" if passed else "fail"
    except (SizeError, UnsupportedKeyError) as e:
        status, reason = "skipped", str(e)
        logger.warning(f"Skipping {name}: {e}")
    except ReflektError as e:
        reason = f"{type(e).__name__}: {e}"
        logger.error(f"Check {name} raised {reason}")
    elapsed = (time.perf_counter() - started) * 1000
    logger.debug(f"{name}: {status} in {elapsed:.1f} ms")
    return CheckResult(
        name=name,
        topic=spec.topic,
        status=status,
        reason=reason,
        elapsed_ms=round(elapsed, 3) if settings.report_timings else None,
        details=details,
    )


def _run_key(key: GroupKey, suites: tuple[str, ...]) -> list[CheckResult]:
    try:
        if settings.cache_enabled:
            load_or_build(key, settings.cache_dir)
        else:
            get_group(key)
    except SizeError as e:
        logger.warning(f"Skipping {key}: {e}")
        return [CheckResult(name=f"group.enumerate[{key.label}]", topic="enumeration", status="skipped", reason=str(e))]
    results = []
    for suite in suites:
        for spec in _SUITE_BUILDERS[suite](key):
            results.append(_run_check(spec, key))
    return results


def _config_snapshot() -> dict:
    return {
        "budget": settings.budget,
        "search_budget": settings.search_budget,
        "aut_budget": settings.aut_budget,
        "exhaustive_pair_limit": settings.exhaustive_pair_limit,
        "sample_pairs": settings.sample_pairs,
        "seed": settings.seed,
    }


def run_suite(grid: Iterable[GroupKey], suites: Iterable[str] = SUITES) -> VerificationReport:
    """
    Run the selected suites on every key; results are ordered by key, then by check.

    Raises:
        ParameterError: an unknown suite name
    """
    requested = set(suites)
    unknown = requested - set(SUITES)
    if unknown:
        raise ParameterError(f"unknown suites: {', '.join(sorted(unknown))}")
    selected = tuple(s for s in SUITES if s in requested)
    keys = sorted(set(grid))
    logger.info(f"Running {', '.join(selected) or 'no suites'} on {len(keys)} keys")
    with ThreadPoolExecutor(max_workers=max(1, settings.workers)) as pool:
        per_key = list(pool.map(lambda k: _run_key(k, selected), keys))
    checks = [result for results in per_key for result in results]
    names = [c.name for c in checks]
    if len(names) != len(set(names)):
        raise ParameterError("duplicate check names in report")
    report = VerificationReport(
        version=__version__,
        keys=[k.label for k in keys],
        checks=checks,
        config=_config_snapshot(),
    )
    logger.info(f"Finished: {len(checks)} checks, {len(report.failed)} failed")
    return report
