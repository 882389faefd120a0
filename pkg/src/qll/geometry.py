"""Finite-field stand-ins for Hilbert-space structure.

A SubspaceModel is GF(q)^n equipped with a nondegenerate symmetric bilinear
form.  Its projective points are the atoms of a simple closure space whose
closed sets are the point sets of linear subspaces; the form supplies both
the atom orthogonality relation and orthogonal complements of subspaces.

Over a prime field every field automorphism is trivial, so "antilinear" maps
are plain linear maps here, and the unitary group is replaced by the group
of similitudes (matrices preserving the form up to a nonzero multiplier).

MO lattices (2n atoms, closed sets: empty, singletons, everything) are the
small non-Boolean test factors; mo_lattice(2) is isomorphic to the projective
space of GF(3)^2 with the identity form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .atomset import AtomSet
from .budgets import DEFAULT_BUDGETS, Budgets
from .closure import ClosureSpace, ExplicitSpace
from .errors import (
    BudgetExceeded,
    DegenerateFormError,
    InputError,
    IsotropicAtomError,
)
from .gf import (
    Mat,
    Vec,
    check_prime_field,
    count_subspaces,
    dot,
    identity,
    in_row_space,
    kernel_basis,
    kron,
    kron_vec,
    mat_mul,
    mat_vec,
    normalize_point,
    projective_points,
    rank,
    rref,
    rref_matrices,
    transpose,
)
from .automorphisms import AtomPermutation


@dataclass(frozen=True)
class SubspaceModel:
    """GF(q)^n with a symmetric nondegenerate bilinear form."""

    q: int
    n: int
    form: Mat
    factors: "tuple[SubspaceModel, SubspaceModel] | None" = field(
        default=None, compare=False
    )

    @classmethod
    def create(cls, q: int, n: int, form: Mat | None = None) -> "SubspaceModel":
        check_prime_field(q)
        if n < 1:
            raise InputError(f"dimension must be >= 1, got {n}")
        if form is None:
            form = identity(n)
        form = tuple(tuple(x % q for x in row) for row in form)
        if len(form) != n or any(len(row) != n for row in form):
            raise InputError("form must be an n x n matrix")
        if form != tuple(zip(*form)):
            raise InputError("form must be symmetric")
        if rank(form, q) != n:
            raise DegenerateFormError(
                f"form has rank {rank(form, q)} < {n}; orthogonality is degenerate"
            )
        return cls(q=q, n=n, form=form)

    @cached_property
    def atom_table(self) -> tuple[Vec, ...]:
        return projective_points(self.q, self.n)

    @cached_property
    def atom_index(self) -> dict[Vec, int]:
        return {v: i for i, v in enumerate(self.atom_table)}

    @property
    def atom_count(self) -> int:
        return len(self.atom_table)

    def form_value(self, u: Vec, v: Vec) -> int:
        return dot(u, mat_vec(self.form, v, self.q), self.q)

    def index_of(self, v: Vec) -> int:
        return self.atom_index[normalize_point(v, self.q)]

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "form": [list(r) for r in self.form]}

    @classmethod
    def from_json(cls, data: dict) -> "SubspaceModel":
        try:
            q, n = int(data["q"]), int(data["n"])
            form = tuple(tuple(int(x) for x in row) for row in data["form"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed model JSON: {exc}") from exc
        return cls.create(q, n, form)


@dataclass(frozen=True)
class Subspace:
    """Linear subspace in canonical RREF basis (() is the zero subspace)."""

    model: SubspaceModel
    basis: Mat

    @classmethod
    def span(cls, model: SubspaceModel, vectors: "list[Vec] | tuple[Vec, ...]") -> "Subspace":
        for v in vectors:
            if len(v) != model.n:
                raise InputError(
                    f"vector of length {len(v)} in a dimension-{model.n} model"
                )
        return cls(model, rref(vectors, model.q))

    @classmethod
    def zero(cls, model: SubspaceModel) -> "Subspace":
        return cls(model, ())

    @classmethod
    def whole(cls, model: SubspaceModel) -> "Subspace":
        return cls(model, identity(model.n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vec) -> bool:
        if self.dim == 0:
            return not any(x % self.model.q for x in v)
        return in_row_space(self.basis, v, self.model.q)

    def atom_set(self) -> AtomSet:
        """Projective points lying in the subspace, as atoms of the model."""
        m = 0
        for i, v in enumerate(self.model.atom_table):
            if self.contains(v):
                m |= 1 << i
        return AtomSet(self.model.atom_count, m)

    def to_json(self) -> dict:
        return {"basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, model: SubspaceModel, data: dict) -> "Subspace":
        try:
            basis = [tuple(int(x) for x in row) for row in data["basis"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed subspace JSON: {exc}") from exc
        return cls.span(model, basis)


def orthogonal_complement(s: Subspace) -> Subspace:
    """{x : form(b, x) = 0 for all basis b}; dimension n - dim by nondegeneracy."""
    model = s.model
    if s.dim == 0:
        return Subspace.whole(model)
    pairing = tuple(mat_vec(model.form, b, model.q) for b in s.basis)
    return Subspace(model, kernel_basis(pairing, model.q))


def enumerate_subspaces(
    model: SubspaceModel, budgets: Budgets = DEFAULT_BUDGETS
) -> list[Subspace]:
    """All subspaces of the model, every dimension, canonical order."""
    total = count_subspaces(model.q, model.n)
    if total > budgets.subspace_cap:
        raise BudgetExceeded("subspace_cap", budgets.subspace_cap)
    out = []
    for dim in range(model.n + 1):
        for basis in rref_matrices(model.q, model.n, dim):
            out.append(Subspace(model, basis))
    return out


def build_projective_space(
    model: SubspaceModel,
    budgets: Budgets = DEFAULT_BUDGETS,
    require_anisotropic: bool = True,
) -> tuple[ExplicitSpace, "OrthogonalityRelation | None"]:
    """Closure space of subspace point-sets plus the form's atom orthogonality.

    Atom orthogonality must be irreflexive, so an isotropic point (form(p,p)=0,
    as happens for every identity-form model over GF(2) in dimension >= 2) is
    an error unless require_anisotropic=False, in which case no relation is
    returned and only form-free structure is available.
    """
    from .ortho import OrthogonalityRelation

    atoms = model.atom_table
    relation: OrthogonalityRelation | None = None
    isotropic = [v for v in atoms if model.form_value(v, v) == 0]
    if isotropic and require_anisotropic:
        raise IsotropicAtomError(
            f"point {isotropic[0]} is orthogonal to itself (q={model.q}); "
            "atom orthogonality cannot be irreflexive"
        )
    if not isotropic:
        masks = []
        for u in atoms:
            m = 0
            for j, v in enumerate(atoms):
                if model.form_value(u, v) == 0:
                    m |= 1 << j
            masks.append(m)
        relation = OrthogonalityRelation(len(atoms), tuple(masks))
    family = []
    seen = set()
    for s in enumerate_subspaces(model, budgets):
        a = s.atom_set()
        if a.mask not in seen:
            seen.add(a.mask)
            family.append(a)
    labels = ["(" + ",".join(map(str, v)) + ")" for v in atoms]
    space = ExplicitSpace(family, atom_labels=labels, budgets=budgets)
    return space, relation


def tensor_model(m1: SubspaceModel, m2: SubspaceModel) -> SubspaceModel:
    """GF(q)^{n1 n2} with the Kronecker form, remembering its factors."""
    if m1.q != m2.q:
        raise InputError(f"field mismatch: q={m1.q} vs q={m2.q}")
    q = m1.q
    model = SubspaceModel(
        q=q, n=m1.n * m2.n, form=kron(m1.form, m2.form, q), factors=(m1, m2)
    )
    return model


def product_atom_table(m1: SubspaceModel, m2: SubspaceModel) -> tuple[int, ...]:
    """For each factor atom pair (i1, i2), the tensor-model atom index of
    v1 ⊗ v2.  Pair index is i1 * |atoms2| + i2.  The map is injective: its
    image is exactly the set of product (rank-one) atoms."""
    t = tensor_model(m1, m2)
    out = []
    for v1 in m1.atom_table:
        for v2 in m2.atom_table:
            out.append(t.index_of(kron_vec(v1, v2, t.q)))
    return tuple(out)


def sigma_down(v: Subspace) -> AtomSet:
    """Factor atom pairs (p1, p2) whose product vector lies in v.

    v must live in a tensor model built by tensor_model, so the pairing
    convention is known.
    """
    model = v.model
    if model.factors is None:
        raise InputError("subspace does not live in a tensor model with factors")
    m1, m2 = model.factors
    n2 = m2.atom_count
    mask = 0
    for i1, v1 in enumerate(m1.atom_table):
        for i2, v2 in enumerate(m2.atom_table):
            if v.contains(kron_vec(v1, v2, model.q)):
                mask |= 1 << (i1 * n2 + i2)
    return AtomSet(m1.atom_count * n2, mask)


def mo_lattice(n: int) -> tuple[ExplicitSpace, "OrthogonalityRelation"]:
    """MO_n: 2n atoms, closed sets are empty, singletons and the universe;
    atom 2k is orthogonal to atom 2k+1."""
    from .ortho import OrthogonalityRelation

    if n < 2:
        raise InputError("mo_lattice needs n >= 2 (n=1 would be Boolean)")
    size = 2 * n
    family = [AtomSet.empty(size), AtomSet.full(size)]
    family.extend(AtomSet.singleton(size, i) for i in range(size))
    rel = OrthogonalityRelation.from_pairs(
        size, [(2 * k, 2 * k + 1) for k in range(n)]
    )
    return ExplicitSpace(family), rel


def _group_from_matrices(
    model: SubspaceModel, keep: "callable", budgets: Budgets
) -> list[AtomPermutation]:
    q, n = model.q, model.n
    total = q ** (n * n)
    if total > budgets.node_cap:
        raise BudgetExceeded("node_cap", budgets.node_cap)
    atoms = model.atom_table
    index = model.atom_index
    perms = set()
    for entries in product(range(q), repeat=n * n):
        g = tuple(entries[i * n : (i + 1) * n] for i in range(n))
        if rank(g, q) != n:
            continue
        if not keep(g):
            continue
        image = tuple(
            index[normalize_point(mat_vec(g, v, q), q)] for v in atoms
        )
        perms.add(image)
    return [AtomPermutation(img) for img in sorted(perms)]


def _form_multiplier(model: SubspaceModel, g: Mat) -> int | None:
    """The scalar c with g^T F g = c F, or None if no such scalar exists."""
    q = model.q
    m = mat_mul(transpose(g), mat_mul(model.form, g, q), q)
    c = None
    for i in range(model.n):
        for j in range(model.n):
            f = model.form[i][j]
            if f:
                cand = m[i][j] * pow(f, q - 2, q) % q
                if c is None:
                    c = cand
                elif cand != c:
                    return None
            elif m[i][j]:
                return None
    if c == 0:
        return None
    return c


def similitude_group(
    model: SubspaceModel, budgets: Budgets = DEFAULT_BUDGETS
) -> list[AtomPermutation]:
    """Projective action of all invertible g with g^T F g = c F, c != 0."""
    return _group_from_matrices(
        model, lambda g: _form_multiplier(model, g) is not None, budgets
    )


def isometry_group(
    model: SubspaceModel, budgets: Budgets = DEFAULT_BUDGETS
) -> list[AtomPermutation]:
    """Projective action of the form-preserving matrices (multiplier 1)."""
    return _group_from_matrices(
        model, lambda g: _form_multiplier(model, g) == 1, budgets
    )


def tensor_similitudes(
    m1: SubspaceModel, m2: SubspaceModel, budgets: Budgets = DEFAULT_BUDGETS
) -> list[AtomPermutation]:
    """Pairs action on factor atom pairs: (p1, p2) -> (g1 p1, g2 p2), for g1,
    g2 ranging over the factor similitude groups."""
    g1s = similitude_group(m1, budgets)
    g2s = similitude_group(m2, budgets)
    n1, n2 = m1.atom_count, m2.atom_count
    perms = set()
    for g1 in g1s:
        for g2 in g2s:
            image = tuple(
                g1.image[i1] * n2 + g2.image[i2]
                for i1 in range(n1)
                for i2 in range(n2)
            )
            perms.add(image)
    return [AtomPermutation(img) for img in sorted(perms)]


def linear_map_coatom(a: Mat, m1: SubspaceModel, m2: SubspaceModel) -> AtomSet:
    """{(p, s) : form2(s, A p) = 0} over factor atom pairs, for a nonzero
    linear map A from the first model's space to the second's.

    Rows with A p = 0 are full; every other row is the hyperplane (A p)^perp.
    Proportional maps give the same set.
    """
    if len(a) != m2.n or any(len(row) != m1.n for row in a):
        raise InputError(f"map must be {m2.n} x {m1.n}")
    if all(x % m1.q == 0 for row in a for x in row):
        raise InputError("zero map does not define a coatom")
    if m1.q != m2.q:
        raise InputError("factor models must share the field")
    q = m1.q
    n2 = m2.atom_count
    mask = 0
    for i1, v1 in enumerate(m1.atom_table):
        w = mat_vec(a, v1, q)
        for i2, v2 in enumerate(m2.atom_table):
            if m2.form_value(v2, w) == 0:
                mask |= 1 << (i1 * n2 + i2)
    return AtomSet(m1.atom_count * n2, mask)
