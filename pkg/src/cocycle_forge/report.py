"""Failure rows shared by all verification sweeps.

A verification returns a list of Failure rows; the empty list means pass.
Rows serialize to JSON objects with sorted keys so that identical runs
produce byte-identical reports.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Failure:
    condition: str
    generator: str = ""
    monomial: str = ""
    lhs: str = ""
    rhs: str = ""


def failures_to_json(failures) -> str:
    return json.dumps([asdict(f) for f in failures], sort_keys=True, indent=2)


def stderr_progress(stream):
    """Progress callback printing one line per monomial-degree stratum."""

    def report(label: str, degree: int, count: int) -> None:
        print("[%s] degree %d: %d monomials" % (label, degree, count), file=stream)

    return report
