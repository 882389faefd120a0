"""Exception taxonomy shared across the package.

The distinction that matters operationally: InputError means the caller
handed us something malformed, ContractViolation means a precondition on
otherwise well-formed data was broken, BudgetExceeded means a search or
enumeration hit its configured cap and the result is *inconclusive* (it
must never be read as "property is false").
"""

from __future__ import annotations


class QllError(Exception):
    """Base class for all package errors."""


class InputError(QllError):
    """Malformed input: bad JSON, mismatched universes, invalid field data."""


class UniverseMismatch(InputError):
    """Two atom sets (or a set and a space) disagree on universe size."""


class ContractViolation(QllError):
    """A documented precondition was violated (e.g. non-closed input to join)."""


class UnsupportedRepresentation(QllError):
    """Operation needs an explicit family but the space is implicit (or vice versa)."""


class BudgetExceeded(QllError):
    """A cap (family size, search nodes, subspace enumeration) was hit.

    Carries enough context to report which budget and at what value, so a
    harness can downgrade a verdict to "inconclusive-budget" instead of
    silently passing or failing.
    """

    def __init__(self, budget_name: str, cap: int, message: str | None = None):
        self.budget_name = budget_name
        self.cap = cap
        super().__init__(message or f"budget '{budget_name}' exceeded (cap={cap})")


class DegenerateFormError(InputError):
    """The bilinear form has nontrivial radical; orthogonality is ill-defined."""


class IsotropicAtomError(InputError):
    """Some projective point p has form(p, p) = 0, so p would be orthogonal
    to itself and the atom orthogonality relation cannot be irreflexive."""


class DecompositionFailed(QllError):
    """A product automorphism did not split into factor isomorphisms.

    For products built here this falsifies the decomposition theorem on the
    instance, so the failure carries a witness for the report.
    """

    def __init__(self, message: str, witness: dict | None = None):
        self.witness = witness or {}
        super().__init__(message)


class InducedMapNotAutomorphism(QllError):
    """A pair map induced by factor symmetries failed to preserve the family
    (a P4 failure witness)."""

    def __init__(self, message: str, witness: dict | None = None):
        self.witness = witness or {}
        super().__init__(message)
