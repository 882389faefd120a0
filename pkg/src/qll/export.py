"""DOT rendering of the cover relation of an explicit closure space."""

from __future__ import annotations

from .budgets import DEFAULT_BUDGETS, Budgets
from .closure import ClosureSpace, _require_explicit
from .errors import BudgetExceeded


def _node_label(space, mask_members: tuple[int, ...]) -> str:
    if not mask_members:
        return "{}"
    return "{" + ",".join(space.label(i) for i in mask_members) + "}"


def export_dot(
    space: ClosureSpace, name: str = "closure_space", budgets: Budgets = DEFAULT_BUDGETS
) -> str:
    """Hasse diagram as a DOT digraph: one node per closed set, one edge per
    cover pair (lower -> upper), atoms grouped on one rank.  Node order and
    edge order follow the canonical family order, so output is reproducible.
    """
    sp = _require_explicit(space, "export_dot")
    if len(sp.masks) > budgets.dot_node_cap:
        raise BudgetExceeded("dot_node_cap", budgets.dot_node_cap)
    masks = sp.masks
    idx = {m: i for i, m in enumerate(masks)}

    # cover pairs: lo < hi with nothing properly between
    edges: list[tuple[int, int]] = []
    for lo in masks:
        ups = [m for m in masks if m != lo and lo & ~m == 0]
        for hi in ups:
            if not any(c != hi and lo & ~c == 0 and c & ~hi == 0 for c in ups):
                edges.append((idx[lo], idx[hi]))

    lines = [f"digraph {name} {{", "  rankdir=BT;", '  node [shape=box, fontsize=10];']
    for i, s in enumerate(sp.family):
        lines.append(f'  n{i} [label="{_node_label(sp, s.members)}"];')
    atom_nodes = [idx[1 << a] for a in range(sp.universe_size) if (1 << a) in idx]
    if atom_nodes:
        lines.append("  { rank=same; " + " ".join(f"n{i};" for i in atom_nodes) + " }")
    for lo, hi in edges:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def count_dot_elements(dot: str) -> tuple[int, int]:
    """(nodes, edges) of a digraph produced by export_dot; used in tests."""
    nodes = sum(1 for line in dot.splitlines() if "[label=" in line)
    edges = sum(1 for line in dot.splitlines() if "->" in line)
    return nodes, edges
