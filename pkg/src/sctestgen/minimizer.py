"""Test suite reduction.

Two modes:

* subsumption: a case is dropped when another case of the suite contains
  its edge sequence as a contiguous run (its NC set is non-empty); what is
  left is the *effective set*;
* set cover: greedily keep the case adding the most uncovered items until
  the reduced suite matches the full suite's coverage.
"""
from __future__ import annotations

from typing import Iterable

from .coverage import STRUCTURAL, measure_suite, occurs_in
from .graph import TransitionGraph
from .testgen import TestCase, TestSuite

NCMap = dict[str, list[str]]


def covers(small: TestCase, big: TestCase) -> bool:
    """True when ``big`` runs through all of ``small`` and is a different walk."""
    return small.edge_seq != big.edge_seq and occurs_in(small.edge_seq, big.edge_seq)


def compute_nc(suite: Iterable[TestCase]) -> NCMap:
    """For each case id, the ids of the cases covering it, in suite order."""
    cases = list(suite)
    return {tc.id: [other.id for other in cases if covers(tc, other)] for tc in cases}


def effective_set(suite: TestSuite) -> TestSuite:
    """The cases nothing else covers, in their original order."""
    nc = compute_nc(suite)
    return TestSuite(tc for tc in suite if not nc[tc.id])


def _items(report, criteria) -> set[tuple[str, str]]:
    return {(name, item) for name in criteria for item in report[name].covered}


def setcover_reduce(suite: TestSuite, g: TransitionGraph,
                    criteria: Iterable[str] = ("transition",)) -> TestSuite:
    """Greedy coverage-preserving reduction.

    Each round picks the case covering the most still-uncovered items,
    summed over ``criteria``; ties go to the earlier case.  Stops once the
    chosen cases cover everything the whole suite covers.  Output is in
    selection order.
    """
    criteria = tuple(criteria)
    if not criteria:
        raise ValueError("at least one criterion is needed")
    unknown = set(criteria) - set(STRUCTURAL)
    if unknown:
        raise ValueError(f"unknown criteria {sorted(unknown)}")
    per_case = [_items(measure_suite([tc], g), criteria) for tc in suite]
    remaining = set().union(*per_case) if per_case else set()
    chosen = []
    while remaining:
        gains = [len(items & remaining) for items in per_case]
        best = max(range(len(gains)), key=lambda i: (gains[i], -i))
        chosen.append(best)
        remaining -= per_case[best]
    return TestSuite(suite[i] for i in chosen)


def nc_table(nc: NCMap) -> str:
    """The NC map as ``NC(tc1) = {tc9, tc10}`` lines."""
    return "".join(f"NC({tid}) = {{{', '.join(ids)}}}\n" for tid, ids in nc.items())
