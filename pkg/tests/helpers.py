"""Independent oracles used to freeze expected values.

Everything here works on frozensets of points (product points are (i, j)
tuples), never on the library's bitmask representation, so agreement between
the two is meaningful.
"""

from __future__ import annotations

from itertools import combinations, permutations, product


def naive_close_under_intersections(seeds, universe):
    """Close a collection of sets under pairwise intersection, plus the
    universe itself."""
    family = {frozenset(universe)}
    family.update(frozenset(s) for s in seeds)
    changed = True
    while changed:
        changed = False
        current = list(family)
        for a, b in combinations(current, 2):
            c = a & b
            if c not in family:
                family.add(c)
                changed = True
    return family


def naive_closure(family, subset):
    subset = frozenset(subset)
    best = None
    for member in family:
        if subset <= member and (best is None or len(member) < len(best)):
            best = member
    return best


def naive_is_simple_closure_space(family, universe):
    universe = frozenset(universe)
    if frozenset() not in family or universe not in family:
        return False
    for x in universe:
        if frozenset([x]) not in family:
            return False
    for a, b in combinations(family, 2):
        if a & b not in family:
            return False
    return True


def cross(a1, a2, u1, u2):
    return frozenset((x, y) for x in a1 for y in u2) | frozenset(
        (x, y) for x in u1 for y in a2
    )


def naive_sep_family(f1, f2, u1, u2):
    seeds = [cross(a1, a2, u1, u2) for a1 in f1 for a2 in f2]
    return naive_close_under_intersections(seeds, set(product(u1, u2)))


def naive_top_family(f1, f2, u1, u2):
    """All subsets of the grid with every section closed; exponential, only
    for tiny factors."""
    points = sorted(product(u1, u2))
    family = set()
    for code in range(1 << len(points)):
        r = frozenset(p for i, p in enumerate(points) if code >> i & 1)
        ok = True
        for x in u1:
            if frozenset(y for (a, y) in r if a == x) not in f2:
                ok = False
                break
        if ok:
            for y in u2:
                if frozenset(x for (x, b) in r if b == y) not in f1:
                    ok = False
                    break
        if ok:
            family.add(r)
    return family


def naive_star_generators(f1, f2, u1, u2):
    """Proper subsets whose row sections are coatoms-or-full of the second
    factor and column sections coatoms-or-full of the first; exponential."""
    co1 = naive_coatoms(f1, u1) | {frozenset(u1)}
    co2 = naive_coatoms(f2, u2) | {frozenset(u2)}
    points = sorted(product(u1, u2))
    full = frozenset(points)
    gens = set()
    for code in range(1 << len(points)):
        r = frozenset(p for i, p in enumerate(points) if code >> i & 1)
        if r == full:
            continue
        ok = all(
            frozenset(y for (a, y) in r if a == x) in co2 for x in u1
        ) and all(frozenset(x for (x, b) in r if b == y) in co1 for y in u2)
        if ok:
            gens.add(r)
    return gens


def naive_star_family(f1, f2, u1, u2):
    gens = naive_star_generators(f1, f2, u1, u2)
    return naive_close_under_intersections(gens, set(product(u1, u2)))


def naive_coatoms(family, universe):
    universe = frozenset(universe)
    proper = [m for m in family if m != universe]
    return {
        m
        for m in proper
        if not any(m < other for other in proper)
    }


def naive_atom_check(family, universe):
    """Every member is the closure of its points (atomistic)."""
    for member in family:
        if naive_closure(family, member) != member:
            return False
    return True


def naive_orthocomplementations(family, universe):
    """Brute force over all injective atom-to-coatom assignments, checking
    the four laws on the induced map directly.  Exponential; tiny inputs only.
    """
    universe = frozenset(universe)
    atoms = sorted(universe)
    coatoms = sorted(naive_coatoms(family, universe), key=sorted)
    if len(coatoms) != len(atoms):
        return []

    def comp(member, image):
        out = universe
        for x in member:
            out = out & image[x]
        return out

    found = []
    for perm in permutations(range(len(coatoms))):
        image = {atoms[i]: coatoms[perm[i]] for i in range(len(atoms))}
        ok = True
        for member in family:
            c = comp(member, image) if member else universe
            if c not in family:
                ok = False
                break
            if member & c:
                ok = False
                break
            if naive_closure(family, member | c) != universe:
                ok = False
                break
            back = comp(c, image) if c else universe
            if back != member:
                ok = False
                break
        if ok:
            for a, b in combinations(family, 2):
                ca = comp(a, image) if a else universe
                cb = comp(b, image) if b else universe
                if (a <= b and not cb <= ca) or (b <= a and not ca <= cb):
                    ok = False
                    break
        if ok:
            found.append(image)
    return found


def naive_span(vectors, q):
    """All linear combinations, by closing under addition and scaling."""
    vecs = {tuple(v) for v in vectors}
    n = len(next(iter(vecs))) if vecs else 0
    span = {tuple([0] * n)} | vecs
    changed = True
    while changed:
        changed = False
        current = list(span)
        for u in current:
            for v in current:
                w = tuple((a + b) % q for a, b in zip(u, v))
                if w not in span:
                    span.add(w)
                    changed = True
            for c in range(2, q):
                w = tuple((c * a) % q for a in u)
                if w not in span:
                    span.add(w)
                    changed = True
    return span


def grid_set(space_masks_or_mask, n1, n2):
    """Bitmask over an n1*n2 grid to a frozenset of (i, j) pairs."""
    mask = space_masks_or_mask
    out = set()
    k = 0
    while mask:
        if mask & 1:
            out.add((k // n2, k % n2))
        mask >>= 1
        k += 1
    return frozenset(out)


def family_as_sets(space):
    """Explicit space to a set of frozensets of atom indices."""
    return {frozenset(a.members) for a in space.family}


def product_family_as_sets(space, n1, n2):
    return {grid_set(m, n1, n2) for m in space.masks}
