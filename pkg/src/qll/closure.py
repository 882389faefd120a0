"""Simple closure spaces over a finite atom universe.

A family of subsets of {0..n-1} is a simple closure space when it is closed
under arbitrary intersections and contains the empty set, the full universe,
and every singleton.  Such a family, ordered by inclusion, is a complete
atomistic lattice: meet is intersection, join is the closure of the union,
and the atoms are the singletons.

Two backends share one interface:

* ExplicitSpace holds the sorted family (canonical order: cardinality, then
  lexicographic member list) and supports every operation.
* ImplicitSpace holds a membership predicate and a closure procedure; family
  enumeration raises UnsupportedRepresentation unless an enumerator was
  attached.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .atomset import AtomSet, bit_members, canonical_mask_key
from .budgets import DEFAULT_BUDGETS, Budgets
from .errors import (
    BudgetExceeded,
    ContractViolation,
    InputError,
    UniverseMismatch,
    UnsupportedRepresentation,
)

# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    """One failed axiom clause, with the sets that witness it."""

    kind: str
    sets: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "sets": [list(s) for s in self.sets]}


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    universe_size: int
    violations: tuple[Violation, ...]

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "universe": self.universe_size,
            "violations": [v.to_json() for v in self.violations],
        }


def validate_simple_closure_space(family: Iterable[AtomSet]) -> ValidationReport:
    """Check the defining axioms clause by clause and report every failure.

    The family must be nonempty and share a universe (those are input errors,
    not verdicts).  Intersection closure is checked pairwise, which suffices
    for finite families.
    """
    sets = list(family)
    if not sets:
        raise InputError("empty family: universe size is undeterminable")
    n = sets[0].universe_size
    for s in sets:
        if s.universe_size != n:
            raise UniverseMismatch(
                f"family mixes universe sizes {n} and {s.universe_size}"
            )
    masks = [s.mask for s in sets]
    mask_set = set(masks)
    full = (1 << n) - 1

    violations: list[Violation] = []
    seen: set[int] = set()
    for m in masks:
        if m in seen:
            violations.append(Violation("duplicate", (bit_members(m),)))
        seen.add(m)
    if 0 not in mask_set:
        violations.append(Violation("missing_empty", ()))
    if full not in mask_set:
        violations.append(Violation("missing_universe", ()))
    for i in range(n):
        if (1 << i) not in mask_set:
            violations.append(Violation("missing_singleton", ((i,),)))
    uniq = sorted(mask_set)
    for i, a in enumerate(uniq):
        for b in uniq[i + 1 :]:
            c = a & b
            if c not in mask_set:
                violations.append(
                    Violation(
                        "intersection_missing",
                        (bit_members(a), bit_members(b), bit_members(c)),
                    )
                )
    return ValidationReport(not violations, n, tuple(violations))


# ---------------------------------------------------------------------------
# spaces


class ClosureSpace:
    """Interface shared by both backends."""

    universe_size: int
    atom_labels: tuple[str, ...] | None

    @property
    def is_explicit(self) -> bool:
        raise NotImplementedError

    @property
    def family(self) -> tuple[AtomSet, ...]:
        raise NotImplementedError

    def contains_mask(self, mask: int) -> bool:
        raise NotImplementedError

    def closure_mask(self, mask: int) -> int:
        raise NotImplementedError

    # -- AtomSet-level conveniences -----------------------------------------

    def _check_universe(self, a: AtomSet) -> None:
        if a.universe_size != self.universe_size:
            raise UniverseMismatch(
                f"set lives in universe {a.universe_size}, space has {self.universe_size}"
            )

    def contains(self, a: AtomSet) -> bool:
        self._check_universe(a)
        return self.contains_mask(a.mask)

    def closure(self, a: AtomSet) -> AtomSet:
        self._check_universe(a)
        return AtomSet(self.universe_size, self.closure_mask(a.mask))

    def full_mask(self) -> int:
        return (1 << self.universe_size) - 1

    def atoms(self) -> tuple[AtomSet, ...]:
        return tuple(
            AtomSet.singleton(self.universe_size, i) for i in range(self.universe_size)
        )

    def label(self, atom: int) -> str:
        if self.atom_labels is not None:
            return self.atom_labels[atom]
        return str(atom)


class ExplicitSpace(ClosureSpace):
    """Closure space given by its full family of closed sets.

    The constructor deduplicates and sorts into canonical order but does not
    validate the axioms; call validate_simple_closure_space (or construct via
    space_from_json, which does) when the family is of unknown provenance.
    """

    def __init__(
        self,
        family: Iterable[AtomSet],
        atom_labels: Iterable[str] | None = None,
        budgets: Budgets = DEFAULT_BUDGETS,
    ):
        sets = list(family)
        if not sets:
            raise InputError("empty family")
        n = sets[0].universe_size
        for s in sets:
            if s.universe_size != n:
                raise UniverseMismatch(
                    f"family mixes universe sizes {n} and {s.universe_size}"
                )
        masks = sorted(set(s.mask for s in sets), key=canonical_mask_key)
        if len(masks) > budgets.family_cap:
            raise BudgetExceeded("family_cap", budgets.family_cap)
        self.universe_size = n
        self.atom_labels = tuple(atom_labels) if atom_labels is not None else None
        if self.atom_labels is not None and len(self.atom_labels) != n:
            raise InputError("atom_labels length does not match universe size")
        self._masks: tuple[int, ...] = tuple(masks)
        self._mask_set: frozenset[int] = frozenset(masks)
        self._family: tuple[AtomSet, ...] = tuple(AtomSet(n, m) for m in masks)
        self._coatom_masks: tuple[int, ...] | None = None

    @property
    def is_explicit(self) -> bool:
        return True

    @property
    def family(self) -> tuple[AtomSet, ...]:
        return self._family

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    def contains_mask(self, mask: int) -> bool:
        return mask in self._mask_set

    def closure_mask(self, mask: int) -> int:
        """Intersection of all closed supersets (the universe if none other)."""
        acc = self.full_mask()
        for m in self._masks:
            if mask & ~m == 0:
                acc &= m
                if acc == mask:
                    return acc
        return acc

    def coatom_masks(self) -> tuple[int, ...]:
        """Maximal proper closed sets, cached."""
        if self._coatom_masks is None:
            full = self.full_mask()
            proper = [m for m in self._masks if m != full]
            out = []
            for m in proper:
                if not any(c != m and m & ~c == 0 for c in proper):
                    out.append(m)
            self._coatom_masks = tuple(out)
        return self._coatom_masks

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExplicitSpace):
            return NotImplemented
        return (
            self.universe_size == other.universe_size and self._masks == other._masks
        )

    def __hash__(self) -> int:
        return hash((self.universe_size, self._masks))

    def __repr__(self) -> str:
        return f"ExplicitSpace(n={self.universe_size}, |family|={len(self._masks)})"


class ImplicitSpace(ClosureSpace):
    """Closure space given by a membership predicate and closure procedure.

    enumerator, when provided, yields every closed mask exactly once (used to
    materialize the space under a budget).
    """

    def __init__(
        self,
        universe_size: int,
        membership: Callable[[int], bool],
        closure: Callable[[int], int],
        enumerator: Callable[[], Iterator[int]] | None = None,
        atom_labels: Iterable[str] | None = None,
        description: str = "",
    ):
        self.universe_size = universe_size
        self.atom_labels = tuple(atom_labels) if atom_labels is not None else None
        self._membership = membership
        self._closure = closure
        self._enumerator = enumerator
        self.description = description

    @property
    def is_explicit(self) -> bool:
        return False

    @property
    def family(self) -> tuple[AtomSet, ...]:
        raise UnsupportedRepresentation(
            "implicit space has no materialized family; materialize it first"
        )

    def contains_mask(self, mask: int) -> bool:
        return self._membership(mask)

    def closure_mask(self, mask: int) -> int:
        return self._closure(mask)

    def enumerate_masks(self) -> Iterator[int]:
        if self._enumerator is None:
            raise UnsupportedRepresentation("no enumerator attached to this space")
        return self._enumerator()

    def __repr__(self) -> str:
        tag = f" {self.description}" if self.description else ""
        return f"ImplicitSpace(n={self.universe_size}{tag})"


def materialize(space: ClosureSpace, budgets: Budgets = DEFAULT_BUDGETS) -> ExplicitSpace:
    """Explicit copy of a space (identity on explicit input)."""
    if isinstance(space, ExplicitSpace):
        return space
    if not isinstance(space, ImplicitSpace):
        raise UnsupportedRepresentation(f"cannot materialize {type(space).__name__}")
    n = space.universe_size
    out: set[int] = set()
    for m in space.enumerate_masks():
        out.add(m)
        if len(out) > budgets.family_cap:
            raise BudgetExceeded("family_cap", budgets.family_cap)
    return ExplicitSpace(
        (AtomSet(n, m) for m in out), atom_labels=space.atom_labels, budgets=budgets
    )


def powerset_space(universe_size: int, atom_labels: Iterable[str] | None = None) -> ExplicitSpace:
    """The Boolean lattice of all subsets of the universe."""
    if universe_size < 1:
        raise InputError("universe must have at least one atom")
    if universe_size > 20:
        raise BudgetExceeded("family_cap", DEFAULT_BUDGETS.family_cap)
    n = universe_size
    return ExplicitSpace(
        (AtomSet(n, m) for m in range(1 << n)), atom_labels=atom_labels
    )


# ---------------------------------------------------------------------------
# lattice operations


def _require_closed(space: ClosureSpace, a: AtomSet, role: str) -> None:
    if not space.contains(a):
        raise ContractViolation(f"{role} {a!r} is not a closed set of the space")


def join(space: ClosureSpace, a: AtomSet, b: AtomSet) -> AtomSet:
    """Least closed superset of a ∪ b.  Inputs must be closed."""
    _require_closed(space, a, "left join argument")
    _require_closed(space, b, "right join argument")
    return AtomSet(space.universe_size, space.closure_mask(a.mask | b.mask))


def meet(space: ClosureSpace, a: AtomSet, b: AtomSet) -> AtomSet:
    """Intersection (closed sets are intersection-closed).  Inputs must be closed."""
    _require_closed(space, a, "left meet argument")
    _require_closed(space, b, "right meet argument")
    return AtomSet(space.universe_size, a.mask & b.mask)


def _require_explicit(space: ClosureSpace, op: str) -> ExplicitSpace:
    if not isinstance(space, ExplicitSpace):
        raise UnsupportedRepresentation(f"{op} requires an explicit family")
    return space


def covers(space: ClosureSpace, lower: AtomSet, upper: AtomSet) -> bool:
    """True iff upper covers lower: lower < upper with nothing strictly between."""
    sp = _require_explicit(space, "covers")
    _require_closed(sp, lower, "lower")
    _require_closed(sp, upper, "upper")
    lo, hi = lower.mask, upper.mask
    if lo == hi or lo & ~hi:
        return False
    for m in sp.masks:
        if m != lo and m != hi and lo & ~m == 0 and m & ~hi == 0:
            return False
    return True


def upper_covers(space: ClosureSpace, a: AtomSet) -> tuple[AtomSet, ...]:
    """Minimal closed sets strictly above a, in canonical order."""
    sp = _require_explicit(space, "upper_covers")
    _require_closed(sp, a, "argument")
    lo = a.mask
    above = [m for m in sp.masks if m != lo and lo & ~m == 0]
    out = [
        m
        for m in above
        if not any(c != m and lo & ~c == 0 and c & ~m == 0 for c in above)
    ]
    return tuple(AtomSet(sp.universe_size, m) for m in out)


def coatoms(space: ClosureSpace) -> tuple[AtomSet, ...]:
    """Lower covers of the universe (maximal proper closed sets)."""
    sp = _require_explicit(space, "coatoms")
    return tuple(AtomSet(sp.universe_size, m) for m in sp.coatom_masks())


# ---------------------------------------------------------------------------
# structural predicates


@dataclass(frozen=True)
class CoveringViolation:
    """Witness that join(a, p) fails to cover a: c sits strictly between."""

    a: tuple[int, ...]
    atom: int
    joined: tuple[int, ...]
    between: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "a": list(self.a),
            "atom": self.atom,
            "join": list(self.joined),
            "between": list(self.between),
        }


def find_covering_violation(space: ClosureSpace) -> CoveringViolation | None:
    """First (canonical order) failure of the covering property, if any.

    Covering property: for every closed a and atom p outside a, the join
    a ∨ p covers a.
    """
    sp = _require_explicit(space, "covering property")
    n = sp.universe_size
    masks = sp.masks
    for lo in masks:
        for p in range(n):
            if lo >> p & 1:
                continue
            hi = sp.closure_mask(lo | (1 << p))
            for m in masks:
                if m != lo and m != hi and lo & ~m == 0 and m & ~hi == 0:
                    return CoveringViolation(
                        bit_members(lo), p, bit_members(hi), bit_members(m)
                    )
    return None


def has_covering_property(space: ClosureSpace) -> bool:
    return find_covering_violation(space) is None


def is_atomistic(space: ClosureSpace) -> bool:
    """Every closed set is the join of the atoms below it.

    True by construction for simple closure spaces (each closed set is
    literally a set of atoms); kept as a cheap sanity predicate.
    """
    sp = _require_explicit(space, "is_atomistic")
    for m in sp.masks:
        if sp.closure_mask(m) != m:
            return False
    return True


def is_coatomistic(space: ClosureSpace) -> bool:
    """Every closed set is an intersection of coatoms (the universe being the
    empty intersection)."""
    sp = _require_explicit(space, "is_coatomistic")
    cms = sp.coatom_masks()
    full = sp.full_mask()
    for m in sp.masks:
        acc = full
        for c in cms:
            if m & ~c == 0:
                acc &= c
        if acc != m:
            return False
    return True


@dataclass(frozen=True)
class DualCoveringViolation:
    """Witness that the order dual fails covering: coatom x with
    join(a, x) = universe, yet a ∩ x is not a lower cover of a."""

    a: tuple[int, ...]
    coatom: tuple[int, ...]
    met: tuple[int, ...]
    between: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "a": list(self.a),
            "coatom": list(self.coatom),
            "meet": list(self.met),
            "between": list(self.between),
        }


def find_dual_covering_violation(space: ClosureSpace) -> DualCoveringViolation | None:
    """Covering property of the order dual, computed on the reversed order.

    Dual atoms are the coatoms, dual join is intersection, dual bottom is the
    universe.  The dual covering property therefore reads: for every closed a
    and coatom x with a ∨ x = universe, a ∩ x is covered by a (in the primal
    order, nothing sits strictly between a ∩ x and a).
    """
    sp = _require_explicit(space, "dual covering property")
    full = sp.full_mask()
    masks = sp.masks
    for a in masks:
        for x in sp.coatom_masks():
            if sp.closure_mask(a | x) != full:
                continue
            lo = a & x
            for m in masks:
                if m != lo and m != a and lo & ~m == 0 and m & ~a == 0:
                    return DualCoveringViolation(
                        bit_members(a), bit_members(x), bit_members(lo), bit_members(m)
                    )
    return None


def is_dac(space: ClosureSpace) -> bool:
    """True iff the lattice and its order dual are both atomistic with the
    covering property."""
    return (
        is_atomistic(space)
        and has_covering_property(space)
        and is_coatomistic(space)
        and find_dual_covering_violation(space) is None
    )


# ---------------------------------------------------------------------------
# JSON


def space_to_json(space: ClosureSpace) -> dict:
    sp = _require_explicit(space, "space_to_json")
    out: dict = {
        "universe": sp.universe_size,
        "closed_sets": [list(s.members) for s in sp.family],
    }
    if sp.atom_labels is not None:
        out["atom_labels"] = list(sp.atom_labels)
    return out


def space_from_json(data: dict, budgets: Budgets = DEFAULT_BUDGETS) -> ExplicitSpace:
    """Parse and validate a closure space; invalid families are input errors."""
    try:
        n = int(data["universe"])
        closed = data["closed_sets"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed closure-space JSON: {exc}") from exc
    labels = data.get("atom_labels")
    sets = []
    for entry in closed:
        sets.append(AtomSet.from_members(n, entry))
    report = validate_simple_closure_space(sets)
    if not report.valid:
        raise InputError(
            "closed_sets do not form a simple closure space: "
            + "; ".join(v.kind for v in report.violations[:5])
        )
    return ExplicitSpace(sets, atom_labels=labels, budgets=budgets)
