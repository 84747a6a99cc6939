import json

import pytest

from reflekt.errors import ParameterError
from reflekt.schemas.report import REPORT_SCHEMA
from reflekt.services import automorphisms
from reflekt.services.group import GroupKey
from reflekt.services.suite import EXTRA_KEYS, default_grid, parse_grid, run_suite
from reflekt.settings import settings


def test_parse_grid_bounds():
    grid = parse_grid("r<=2,p|r,n<=2")
    assert len(grid) == 6
    assert GroupKey(2, 2, 2) in grid
    assert len(parse_grid(" r <= 6 , p | r , n <= 3 ")) == 42


def test_parse_grid_list():
    assert parse_grid("4,2,2;2,2,4;4,2,2") == [GroupKey(2, 2, 4), GroupKey(4, 2, 2)]
    assert parse_grid("") == []
    with pytest.raises(ParameterError):
        parse_grid("r<6")
    with pytest.raises(ParameterError):
        parse_grid("4,3,2")


def test_default_grid():
    grid = default_grid()
    assert grid == sorted(grid)
    assert set(EXTRA_KEYS) <= set(grid)


def test_empty_grid_passes():
    report = run_suite([])
    assert report.checks == []
    assert report.exit_code == 0


def test_unknown_suite():
    with pytest.raises(ParameterError):
        run_suite([GroupKey(2, 1, 2)], ["group", "mirrors"])


def test_small_run():
    grid = parse_grid("r<=2,p|r,n<=2")
    report = run_suite(grid, ["group", "chars", "involutions", "classify"])
    assert report.exit_code == 0, [c for c in report.failed]
    names = [c.name for c in report.checks]
    assert len(names) == len(set(names))
    assert "group.order[G(2,1,2)]" in names
    assert report.keys == [k.label for k in sorted(grid)]
    assert all(c.elapsed_ms is None for c in report.checks)
    assert run_suite(grid, ["group", "chars", "involutions", "classify"]).to_json() == report.to_json()


def test_report_json():
    report = run_suite([GroupKey(2, 2, 2)], ["group"])
    data = json.loads(report.to_json())
    assert data["schema"] == REPORT_SCHEMA
    assert data["keys"] == ["G(2,2,2)"]
    assert {c["status"] for c in data["checks"]} == {"pass"}
    assert "elapsed_ms" not in data["checks"][0]
    assert data["config"]["seed"] == settings.seed


def test_timings_are_opt_in():
    settings.report_timings = True
    report = run_suite([GroupKey(2, 1, 2)], ["group"])
    assert all(c.elapsed_ms is not None for c in report.checks)


def test_gelfand_suite():
    report = run_suite([GroupKey(2, 1, 2), GroupKey(2, 1, 3), GroupKey(3, 1, 2)], ["gelfand"])
    assert report.exit_code == 0
    assert {c.status for c in report.checks} == {"pass"}


def test_large_gcd_is_skipped():
    report = run_suite([GroupKey(3, 3, 3)], ["gelfand", "classify"])
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["gelfand[G(3,3,3)]"] == "skipped"
    assert statuses["classify.gim-exists[G(3,3,3)]"] == "pass"


def test_gim_suite():
    report = run_suite([GroupKey(2, 2, 2), GroupKey(6, 2, 2), GroupKey(4, 2, 2)], ["gim"])
    assert report.exit_code == 0, [c.name for c in report.failed]
    names = {c.name for c in report.checks}
    assert "gim.commutator[G(4,2,2)]" in names
    assert "gim.search[G(6,2,2)]" in names


def test_gim_search_runs_on_every_rank():
    report = run_suite([GroupKey(2, 2, 3)], ["gim"])
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["gim.search[G(2,2,3)]"] == "pass"
    assert statuses["gim.extract[G(2,2,3)]"] == "pass"


def test_search_budget_skips():
    settings.search_budget = 1
    report = run_suite([GroupKey(6, 2, 2)], ["gim"])
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["gim.search[G(6,2,2)]"] == "skipped"


def test_aut_suite():
    report = run_suite([GroupKey(2, 2, 2), GroupKey(4, 2, 2)], ["aut"])
    assert report.exit_code == 0, [c.name for c in report.failed]
    assert len(report.checks) == 12
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["aut.compose[G(4,2,2)]"] == "pass"


def test_aut_budget_skips():
    settings.aut_budget = 10
    report = run_suite([GroupKey(4, 2, 2)], ["aut"])
    assert [(c.name, c.status) for c in report.checks] == [("aut[G(4,2,2)]", "skipped")]


def test_size_budget_skips_key():
    settings.budget = 10
    report = run_suite([GroupKey(3, 1, 2)], ["group"])
    assert [c.status for c in report.checks] == ["skipped"]
    assert report.exit_code == 0


def test_workers_keep_order():
    grid = parse_grid("r<=3,p|r,n<=2")
    settings.workers = 4
    parallel = run_suite(grid, ["group"])
    settings.workers = 1
    assert parallel.to_json() == run_suite(grid, ["group"]).to_json()


@pytest.mark.parametrize(
    "key, evidence",
    [
        (GroupKey(3, 1, 2), "extracted-restricted"),
        (GroupKey(4, 2, 1), "extracted-twisted"),
        (GroupKey(6, 2, 2), "rank-two-model"),
        (GroupKey(4, 2, 2), "commutator"),
        (GroupKey(3, 3, 3), "degree-sum"),
    ],
)
def test_classify_uses_independent_evidence(key, evidence):
    (check,) = run_suite([key], ["classify"]).checks
    assert check.status == "pass"
    assert check.details["evidence"] == evidence
    assert check.details["model_found"] == check.details["exists"]


def test_classify_catches_a_wrong_decision(monkeypatch):
    def flipped(key):
        decision = automorphisms.GimDecision(True, "gcd-one")
        return decision if key.gcd_pn != 1 else decision._replace(answer=False)

    monkeypatch.setattr(automorphisms, "gim_exists", flipped)
    report = run_suite([GroupKey(4, 2, 2), GroupKey(3, 3, 3), GroupKey(3, 1, 2)], ["classify"])
    assert {c.status for c in report.checks} == {"fail"}
    assert report.exit_code == 1
