"""Resource caps for enumerations and searches.

Every potentially exponential routine takes a Budgets value and raises
BudgetExceeded when it would do more work than allowed.  Exhausting a budget
is a distinct outcome from "property holds" / "property fails": callers that
run verification pipelines map it to an inconclusive verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Budgets:
    # Largest explicit closed-set family we will materialize.
    family_cap: int = 2**20
    # Backtracking search nodes (orthocomplementation and automorphism search)
    # and row-assignment enumerations.
    node_cap: int = 10**8
    # Subspace enumeration cap for finite-field models.
    subspace_cap: int = 10**6
    # Largest family rendered to DOT.
    dot_node_cap: int = 5000
    # P3 subset scans on implicit backends enumerate 2^{factor universe}
    # candidate sections; refuse above this universe size.
    p3_universe_cap: int = 14

    def with_overrides(self, **kwargs: int) -> "Budgets":
        return replace(self, **kwargs)


DEFAULT_BUDGETS = Budgets()
