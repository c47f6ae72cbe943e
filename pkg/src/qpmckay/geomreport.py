"""Geometric dictionary for mutated QPs: dual graphs, curve types and flops.

A non-trivial vertex is an exceptional curve; its loop count fixes the
normal-bundle degrees: 0 loops (-1,-1), 1 loop (-2,0), 2 loops (-3,1). Two
curves meet iff some arrow joins their vertices. Floppable curves are the
(-1,-1)-curves, which are exactly the mutable vertices.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .errors import UnexpectedLoopCount
from .mutclass import MutationGraph
from .qp import QP

__all__ = [
    "CURVE_TYPES",
    "DualGraph",
    "dual_graph",
    "floppable_set",
    "flop_graph_check",
    "UnexpectedLoopCount",
]

CURVE_TYPES = {0: (-1, -1), 1: (-2, 0), 2: (-3, 1)}


@dataclass(frozen=True)
class DualGraph:
    nodes: tuple[tuple[str, tuple[int, int]], ...]
    edges: tuple[tuple[str, str], ...]

    def curve_type(self, v: str) -> tuple[int, int]:
        return dict(self.nodes)[v]

    def type_multiset(self) -> Counter:
        return Counter(t for _, t in self.nodes)

    def degree(self, v: str) -> int:
        return sum(v in e for e in self.edges)

    def is_path(self) -> bool:
        """True iff the graph is a single chain through all nodes."""
        n = len(self.nodes)
        if n == 1:
            return not self.edges
        if len(self.edges) != n - 1 or any(self.degree(v) > 2 for v, _ in self.nodes):
            return False
        return self._connected()

    def _connected(self) -> bool:
        ids = [v for v, _ in self.nodes]
        seen, stack = {ids[0]}, [ids[0]]
        while stack:
            x = stack.pop()
            for a, b in self.edges:
                for y, z in ((a, b), (b, a)):
                    if y == x and z not in seen:
                        seen.add(z)
                        stack.append(z)
        return len(seen) == len(ids)

    def to_dict(self) -> dict:
        return {
            "nodes": [{"id": v, "curveType": list(t)} for v, t in self.nodes],
            "edges": [list(e) for e in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def to_dot(self) -> str:
        lines = ["graph dual {"]
        for v, t in self.nodes:
            lines.append(f'  "{v}" [label="{v} ({t[0]},{t[1]})"];')
        for a, b in self.edges:
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def dual_graph(qp: QP) -> DualGraph:
    q = qp.quiver
    ids = [v for v in q.vertex_ids() if v != qp.trivial]
    nodes = []
    for v in ids:
        loops = q.loops_at(v)
        if loops not in CURVE_TYPES:
            raise UnexpectedLoopCount(f"vertex {v} carries {loops} loops")
        nodes.append((v, CURVE_TYPES[loops]))
    pos = {v: k for k, v in enumerate(ids)}
    edges = set()
    for a in q.arrows:
        if a.tail != a.head and a.tail in pos and a.head in pos:
            edges.add(tuple(sorted((a.tail, a.head), key=pos.__getitem__)))
    return DualGraph(tuple(nodes), tuple(sorted(edges, key=lambda e: (pos[e[0]], pos[e[1]]))))


def floppable_set(qp: QP) -> set[str]:
    return {v for v, t in dual_graph(qp).nodes if t == CURVE_TYPES[0]}


def flop_graph_check(g: MutationGraph) -> bool:
    """Flops of each node are exactly its mutations, and flopping back returns."""
    out: dict[int, dict[str, int]] = {}
    for e in g.edges:
        out.setdefault(e.source, {})
        if e.vertex in out[e.source]:
            return False
        out[e.source][e.vertex] = e.target
    for node in g.nodes:
        moves = out.get(node.index, {})
        if set(moves) != floppable_set(node.qp):
            return False
        for k, t in moves.items():
            if out.get(t, {}).get(k) != node.index:
                return False
    return True
