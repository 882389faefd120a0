"""Orthocomplementations on simple closure spaces.

An orthocomplementation is an order-reversing involution a -> a' with
a ∧ a' = 0 and a ∨ a' = 1.  On an atomistic lattice it is determined by its
restriction to atoms, which it maps bijectively onto the coatoms; OrthoMap
stores exactly that restriction (one coatom per atom) and derives the
complement of any closed set as the intersection of the images of its atoms.

The search for all orthocomplementations is a backtracking enumeration of
injective atom -> coatom assignments.  Two facts prune it:

* counting certificate: an orthocomplementation forces |atoms| = |coatoms|,
  so unequal counts prove there are none before any search;
* symmetry: q <= p' iff p <= q', so fixing p' splits every other atom's
  candidate list by whether it contains p.

Each completed assignment is then checked against all four laws over the
whole family, so the search can only over-approximate, never miss.
"""

from __future__ import annotations

from dataclasses import dataclass

from .atomset import AtomSet, bit_members
from .budgets import DEFAULT_BUDGETS, Budgets
from .closure import ClosureSpace, ExplicitSpace, _require_explicit
from .errors import BudgetExceeded, ContractViolation, InputError


@dataclass(frozen=True)
class OrthogonalityRelation:
    """Symmetric irreflexive relation on atoms; perp_masks[p] is the mask of
    atoms orthogonal to p."""

    universe_size: int
    perp_masks: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.universe_size
        if len(self.perp_masks) != n:
            raise InputError("perp_masks length does not match universe size")
        for p, m in enumerate(self.perp_masks):
            if m >> p & 1:
                raise InputError(f"orthogonality is not irreflexive: {p} ⊥ {p}")
            if m < 0 or m >> n:
                raise InputError(f"perp mask of atom {p} leaves the universe")
        for p in range(n):
            for q in bit_members(self.perp_masks[p]):
                if not self.perp_masks[q] >> p & 1:
                    raise InputError(
                        f"orthogonality is not symmetric: {p} ⊥ {q} but not {q} ⊥ {p}"
                    )

    @classmethod
    def from_pairs(
        cls, universe_size: int, pairs: "list[tuple[int, int]] | tuple"
    ) -> "OrthogonalityRelation":
        masks = [0] * universe_size
        for p, q in pairs:
            if not (0 <= p < universe_size and 0 <= q < universe_size):
                raise InputError(f"pair ({p},{q}) outside universe")
            masks[p] |= 1 << q
            masks[q] |= 1 << p
        return cls(universe_size, tuple(masks))

    def are_orthogonal(self, p: int, q: int) -> bool:
        return bool(self.perp_masks[p] >> q & 1)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        out = []
        for p in range(self.universe_size):
            for q in bit_members(self.perp_masks[p]):
                if p < q:
                    out.append((p, q))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "universe": self.universe_size,
            "pairs": [list(pq) for pq in self.pairs()],
        }


@dataclass(frozen=True)
class OrthoMap:
    """Candidate orthocomplementation, given by the image of each atom."""

    space: ClosureSpace
    atom_image: tuple[AtomSet, ...]

    def __post_init__(self) -> None:
        n = self.space.universe_size
        if len(self.atom_image) != n:
            raise InputError("atom_image length does not match universe size")
        for img in self.atom_image:
            if img.universe_size != n:
                raise InputError("atom_image entry lives in a different universe")

    def complement_mask(self, mask: int) -> int:
        """Intersection of the images of the atoms of mask (universe if empty)."""
        acc = (1 << self.space.universe_size) - 1
        for p in bit_members(mask):
            acc &= self.atom_image[p].mask
        return acc

    def complement(self, a: AtomSet) -> AtomSet:
        return AtomSet(self.space.universe_size, self.complement_mask(a.mask))

    def image_masks(self) -> tuple[int, ...]:
        return tuple(img.mask for img in self.atom_image)

    def to_json(self) -> dict:
        return {"atom_image": [list(img.members) for img in self.atom_image]}

    @classmethod
    def from_json(cls, space: ClosureSpace, data: dict) -> "OrthoMap":
        try:
            images = data["atom_image"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed ortho-map JSON: {exc}") from exc
        return cls(
            space,
            tuple(AtomSet.from_members(space.universe_size, ms) for ms in images),
        )


@dataclass(frozen=True)
class OrthoVerification:
    ok: bool
    law: str | None = None
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out: dict = {"ok": self.ok}
        if self.law is not None:
            out["law"] = self.law
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def verify_orthocomplementation(
    space: ClosureSpace, candidate: OrthoMap
) -> OrthoVerification:
    """Check all four laws over every closed set; report the first failure.

    The candidate's atom images must be coatoms (that much is an input error,
    not a verdict: a non-coatom image is not even a candidate).
    """
    sp = _require_explicit(space, "verify_orthocomplementation")
    coatom_set = set(sp.coatom_masks())
    for p, img in enumerate(candidate.atom_image):
        if img.mask not in coatom_set:
            raise InputError(f"image of atom {p} is not a coatom: {img!r}")
    full = sp.full_mask()
    masks = sp.masks
    comp = {m: candidate.complement_mask(m) for m in masks}
    for m in masks:
        c = comp[m]
        if c not in sp._mask_set:
            return OrthoVerification(
                False,
                "complement_closed",
                {"a": list(bit_members(m)), "a_prime": list(bit_members(c))},
            )
        if m & c:
            return OrthoVerification(
                False,
                "meet_is_bottom",
                {"a": list(bit_members(m)), "a_prime": list(bit_members(c))},
            )
        if sp.closure_mask(m | c) != full:
            return OrthoVerification(
                False,
                "join_is_top",
                {"a": list(bit_members(m)), "a_prime": list(bit_members(c))},
            )
        if candidate.complement_mask(c) != m:
            return OrthoVerification(
                False,
                "involution",
                {
                    "a": list(bit_members(m)),
                    "a_prime": list(bit_members(c)),
                    "a_double_prime": list(bit_members(candidate.complement_mask(c))),
                },
            )
    for a in masks:
        for b in masks:
            if a & ~b == 0 and comp[b] & ~comp[a]:
                return OrthoVerification(
                    False,
                    "order_reversal",
                    {"a": list(bit_members(a)), "b": list(bit_members(b))},
                )
    return OrthoVerification(True)


@dataclass(frozen=True)
class OrthoSearchResult:
    """Outcome of an exhaustive orthocomplementation search.

    exhaustive is False only when an explicit result limit stopped the
    enumeration early; a budget overrun raises instead.  certificate records
    a counting proof when one settles the question without search.
    """

    maps: tuple[OrthoMap, ...]
    exhaustive: bool
    nodes: int
    certificate: dict | None = None

    def to_json(self) -> dict:
        out: dict = {
            "count": len(self.maps),
            "exhaustive": self.exhaustive,
            "nodes": self.nodes,
            "maps": [m.to_json() for m in self.maps],
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def find_orthocomplementations(
    space: ClosureSpace,
    limit: int | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
    force_search: bool = False,
) -> OrthoSearchResult:
    """Enumerate every orthocomplementation of an explicit space.

    Returns all verified maps in a deterministic order.  An empty result with
    exhaustive=True is a proof there are none (via the counting certificate
    or via completed search).  force_search runs the backtracking even when
    the counting certificate already settles the answer, so the two proofs
    can be cross-checked; the certificate is attached either way.  Hitting
    the node budget raises BudgetExceeded.
    """
    sp = _require_explicit(space, "find_orthocomplementations")
    n = sp.universe_size
    cms = list(sp.coatom_masks())
    k = len(cms)
    certificate = None
    if n != k:
        certificate = {
            "kind": "atom_coatom_count_mismatch",
            "atoms": n,
            "coatoms": k,
            "reason": "an orthocomplementation maps atoms bijectively onto coatoms",
        }
        if not force_search:
            return OrthoSearchResult((), exhaustive=True, nodes=0, certificate=certificate)

    # contains[p]: bitmask over coatom indices of the coatoms containing atom p
    contains = [0] * n
    for ci, cm in enumerate(cms):
        for p in bit_members(cm):
            contains[p] |= 1 << ci
    all_coatoms = (1 << k) - 1

    # process atoms in descending degree (ties by id) for earlier conflicts
    degree = [contains[p].bit_count() for p in range(n)]
    order = sorted(range(n), key=lambda p: (-degree[p], p))

    initial = [all_coatoms & ~contains[p] for p in range(n)]  # p not in p'
    image = [-1] * n
    found: list[OrthoMap] = []
    nodes = 0
    truncated = False

    def assign(pos: int, allowed: list[int]) -> bool:
        """Returns False when a result limit stops the search."""
        nonlocal nodes, truncated
        if pos == n:
            candidate = OrthoMap(
                sp, tuple(AtomSet(n, cms[image[p]]) for p in range(n))
            )
            if verify_orthocomplementation(sp, candidate).ok:
                found.append(candidate)
                if limit is not None and len(found) >= limit:
                    truncated = True
                    return False
            return True
        p = order[pos]
        options = allowed[p]
        while options:
            low = options & -options
            options ^= low
            ci = low.bit_length() - 1
            nodes += 1
            if nodes > budgets.node_cap:
                raise BudgetExceeded("node_cap", budgets.node_cap)
            cm = cms[ci]
            image[p] = ci
            nxt = list(allowed)
            nxt[p] = low
            ok = True
            for q in range(n):
                if q == p:
                    continue
                # symmetry: q in p' forces p in q' (and conversely), and the
                # assignment must stay injective
                if cm >> q & 1:
                    nxt[q] &= contains[p]
                else:
                    nxt[q] &= ~contains[p]
                nxt[q] &= ~low
                if nxt[q] == 0 and image[q] < 0:
                    ok = False
                    break
            if ok and not assign(pos + 1, nxt):
                return False
            image[p] = -1
        return True

    completed = assign(0, initial)
    found.sort(key=lambda om: om.image_masks())
    return OrthoSearchResult(
        tuple(found),
        exhaustive=completed and not truncated,
        nodes=nodes,
        certificate=certificate,
    )


@dataclass(frozen=True)
class OrthoConstruction:
    """Result of inducing an orthocomplementation from atom orthogonality."""

    ortho: OrthoMap | None
    failure: dict | None = None

    @property
    def ok(self) -> bool:
        return self.ortho is not None


def ortho_from_atom_orthogonality(
    space: ClosureSpace, relation: OrthogonalityRelation
) -> OrthoConstruction:
    """Try p' := {q : q ⊥ p}; succeed iff every image is a coatom and the
    induced map satisfies all four laws.  Failure is a result, not an error."""
    sp = _require_explicit(space, "ortho_from_atom_orthogonality")
    if relation.universe_size != sp.universe_size:
        raise InputError("relation universe does not match space")
    coatom_set = set(sp.coatom_masks())
    images = []
    for p in range(sp.universe_size):
        m = relation.perp_masks[p]
        if m not in coatom_set:
            return OrthoConstruction(
                None,
                {
                    "law": "image_not_coatom",
                    "atom": p,
                    "image": list(bit_members(m)),
                },
            )
        images.append(AtomSet(sp.universe_size, m))
    candidate = OrthoMap(sp, tuple(images))
    verdict = verify_orthocomplementation(sp, candidate)
    if not verdict.ok:
        return OrthoConstruction(
            None, {"law": verdict.law, "counterexample": verdict.counterexample}
        )
    return OrthoConstruction(candidate)


@dataclass(frozen=True)
class OrthomodularityViolation:
    a: tuple[int, ...]
    b: tuple[int, ...]
    rejoined: tuple[int, ...]

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "rejoin": list(self.rejoined)}


def find_orthomodularity_violation(
    space: ClosureSpace, ortho: OrthoMap
) -> OrthomodularityViolation | None:
    """First pair a <= b with b != a ∨ (b ∧ a'), or None.

    The ortho map must verify; feeding an unverified candidate is a contract
    violation because the law only makes sense for a genuine complement.
    """
    sp = _require_explicit(space, "orthomodularity")
    verdict = verify_orthocomplementation(sp, ortho)
    if not verdict.ok:
        raise ContractViolation(
            f"ortho map fails law '{verdict.law}'; orthomodularity is undefined"
        )
    masks = sp.masks
    comp = {m: ortho.complement_mask(m) for m in masks}
    for a in masks:
        ca = comp[a]
        for b in masks:
            if a & ~b:
                continue
            rejoined = sp.closure_mask(a | (b & ca))
            if rejoined != b:
                return OrthomodularityViolation(
                    bit_members(a), bit_members(b), bit_members(rejoined)
                )
    return None


def is_orthomodular(space: ClosureSpace, ortho: OrthoMap) -> bool:
    return find_orthomodularity_violation(space, ortho) is None


# ---------------------------------------------------------------------------
# atom-configuration conditions used as theorem hypotheses


def third_atom_condition(space: ClosureSpace) -> bool:
    """Two atoms p, q whose join contains a third atom r and covers all of
    p, q, r."""
    sp = _require_explicit(space, "third_atom_condition")
    n = sp.universe_size
    for p in range(n):
        for q in range(p + 1, n):
            j = sp.closure_mask((1 << p) | (1 << q))
            others = j & ~(1 << p) & ~(1 << q)
            if not others:
                continue
            ja = AtomSet(n, j)
            if not covers_atom(sp, p, ja) or not covers_atom(sp, q, ja):
                continue
            for r in bit_members(others):
                if covers_atom(sp, r, ja):
                    return True
    return False


def four_atom_condition(space: ClosureSpace) -> bool:
    """Four distinct atoms p, q, r, s with p ∨ q covering every one of them."""
    sp = _require_explicit(space, "four_atom_condition")
    n = sp.universe_size
    for p in range(n):
        for q in range(p + 1, n):
            j = sp.closure_mask((1 << p) | (1 << q))
            ja = AtomSet(n, j)
            if not covers_atom(sp, p, ja) or not covers_atom(sp, q, ja):
                continue
            others = [
                r
                for r in bit_members(j & ~(1 << p) & ~(1 << q))
                if covers_atom(sp, r, ja)
            ]
            if len(others) >= 2:
                return True
    return False


def covers_atom(space: ExplicitSpace, atom: int, upper: AtomSet) -> bool:
    """True iff upper covers the singleton {atom}."""
    lo = 1 << atom
    hi = upper.mask
    if lo & ~hi or lo == hi:
        return False
    for m in space.masks:
        if m != lo and m != hi and lo & ~m == 0 and m & ~hi == 0:
            return False
    return True


def cal0sym_condition(space: ClosureSpace) -> bool:
    """For any coatoms x, y and atoms p, q there are an atom r outside x ∪ y
    and a coatom z avoiding both p and q.

    The two witnesses are independent, so the check splits: no coatom pair
    may cover the universe, and every atom pair must miss some coatom.
    """
    sp = _require_explicit(space, "cal0sym_condition")
    cms = sp.coatom_masks()
    full = sp.full_mask()
    for i, x in enumerate(cms):
        for y in cms[i:]:
            if x | y == full:
                return False
    n = sp.universe_size
    for p in range(n):
        for q in range(p, n):
            pq = (1 << p) | (1 << q)
            if not any(cm & pq == 0 for cm in cms):
                return False
    return True
