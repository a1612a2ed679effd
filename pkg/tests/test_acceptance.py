"""Acceptance criteria 1-9, all exact.

Each test prints one ``[PASS]``/``[FAIL]`` line.  Run directly with
``python3 tests/test_acceptance.py`` for the lines alone.
"""
import pytest

from lambda_orders import acceptance

CRITERIA = [
    (1, acceptance.group_ring_is_maximal),
    (2, acceptance.character_group_ring_not_maximal),
    (3, acceptance.criterion_matches_oracle),
    (4, acceptance.points_round_trip),
    (5, acceptance.maximal_orders_verify),
    (6, acceptance.maximality_certificates),
    (7, acceptance.intersections),
    (8, acceptance.crt_round_trip),
    (9, acceptance.rational_factor_from_zero_image),
]


@pytest.mark.parametrize("number,check", CRITERIA, ids=[f"criterion_{n}" for n, _ in CRITERIA])
def test_criterion(number, check, capsys):
    result = check()
    with capsys.disabled():
        print(f"\n{number}. {result.line()}")
    assert result.passed, result.detail


if __name__ == "__main__":
    import sys

    results = [(n, check()) for n, check in CRITERIA]
    for n, res in results:
        print(f"{n}. {res.line()}")
    sys.exit(0 if all(res.passed for _, res in results) else 1)
