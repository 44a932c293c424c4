import json

import dacite.core
import pytest

from product_structure_checker.schema import Claim, Report


@pytest.mark.parametrize(
    "file_name",
    [
        ("test/mock_data/valid_report.json"),
        ("test/mock_data/valid_report_empty_sections.json"),
        ("test/mock_data/valid_report_with_major_problem.json"),
    ],
)
def test_valid(file_name):
    with open(file_name) as file:
        data = json.load(file)
    dacite.core.from_dict(Report, data)


def test_missing_result_is_rejected():
    with open("test/mock_data/invalid_report_missing_result.json") as file:
        data = json.load(file)
    with pytest.raises(dacite.MissingValueError):
        dacite.core.from_dict(Report, data)


@pytest.mark.parametrize(
    "claim,holds",
    [
        (Claim("width", 3, 3), True),
        (Claim("width", 3, 4), False),
        (Claim("lower", 3, 4, ">="), True),
        (Claim("exact", 2, 3, "=="), False),
    ],
)
def test_claim_relations(claim: Claim, holds: bool):
    assert claim.holds is holds
