from dataclasses import asdict
from test.mock_checks.foo import SkippedCheck

from bs4 import BeautifulSoup
from dependency_injector import providers
from dependency_injector.containers import DynamicContainer

from product_structure_checker import schema
from product_structure_checker.core import ClaimCheck, Core, Section
from product_structure_checker.discovery import discover_sections
from product_structure_checker.errors import ResourceError
from product_structure_checker.template import template

from . import mock_checks


def test_report():
    """High level test similar to what happens in the suite command."""
    dependencies = DynamicContainer()
    dependencies.test_dependency = providers.Object("test value")
    sections = discover_sections(mock_checks)
    core = Core(sections=sections, dependencies=dependencies)
    report = core.generate_report()

    assert report.result is False
    by_name = {section.name: section for section in report.sections}
    assert by_name["Paths"].result is True
    assert by_name["Cliques"].result is False
    assert [check.name for check in by_name["Paths"].checks] == [
        "Radius of P_5",
        "Queue-number of P_5",
    ]
    assert by_name["Paths"].checks[0].check.measured == "0 violations over 1 claims"
    html = BeautifulSoup(template(data=asdict(report)), features="html.parser")
    assert html.find("section", id="paths")["class"] == ["passed"]


def test_skip_check():
    """Skip a single check by returning None."""
    check = SkippedCheck()
    report = check.generate_report()
    assert report is None


def test_skip_all_checks_in_section():
    """Skip all checks in the section."""

    class TestSection(Section):
        name = "Mock section"
        description = ""
        checks = [SkippedCheck, SkippedCheck, SkippedCheck]

    section = TestSection()
    report = section.generate_report()
    assert report is None


def test_empty_report_fails():
    report = Core(sections=[], dependencies=DynamicContainer()).generate_report()
    assert report.result is False
    assert report.sections == []


class Violations(ClaimCheck):
    name = "Violations"
    description = ""

    def claims(self):
        yield schema.Claim("width", 3, 2)
        yield schema.Claim("width", 3, 5)
        yield schema.Claim("exact", 1, 0, "==")


def test_claim_check_reports_first_violation():
    result = Violations().perform_check()
    assert result == schema.CheckResult(
        False, "2 violations over 3 claims (first: width 5 <= 3)", "0 violations"
    )


def test_claim_check_without_claims_is_skipped():
    class NoClaims(ClaimCheck):
        name = "No claims"
        description = ""

        def claims(self):
            return iter(())

    assert NoClaims().generate_report() is None


def test_over_budget_check_fails_without_raising():
    class OverBudget(ClaimCheck):
        name = "Over budget"
        description = ""

        def claims(self):
            raise ResourceError("too many vertices")

    report = OverBudget().generate_report()
    assert report.check == schema.CheckResult(
        False, "Over budget", "Within oracle limits", "Oracle limit: too many vertices"
    )
    assert report.duration >= 0


def test_unexpected_error_is_reported():
    class Broken(ClaimCheck):
        name = "Broken"
        description = ""

        def claims(self):
            raise RuntimeError("boom")

    report = Broken().generate_report()
    assert report.check.result is False
    assert report.check.measured == "Internal error"
