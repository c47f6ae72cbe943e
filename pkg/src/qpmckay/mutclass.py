"""Finite mutation classes of McKay QPs under the rules of the game.

Never mutate at the trivial vertex or at a vertex carrying a loop. Nodes are
deduplicated by the labelled adjacency signature together with the dimension
vector (for the tetrahedral group the mutations at 1 and at 2 give quivers with
equal arrow multiplicities that differ only in dimensions).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import BudgetExceeded, NotAutomorphism
from .grouprep import GroupSpec
from .qp import QP, adjacency_signature, mutate, qp_to_dict

__all__ = [
    "MutationNode",
    "MutationEdge",
    "MutationGraph",
    "mutable_vertices",
    "enumerate_class",
    "count_up_to_symmetry",
    "expected_class_size",
    "apply_word",
    "node_key",
    "graph_to_dict",
    "graph_to_dot",
    "BudgetExceeded",
    "NotAutomorphism",
]

Signature = tuple[tuple[int, ...], ...]
NodeKey = tuple[Signature, tuple[int, ...]]


def node_key(qp: QP) -> NodeKey:
    q = qp.quiver
    return adjacency_signature(q), tuple(v.dim for v in q.vertices)


@dataclass(frozen=True)
class MutationNode:
    index: int
    signature: Signature
    qp: QP
    word: tuple[str, ...]

    @property
    def key(self) -> NodeKey:
        return self.signature, tuple(v.dim for v in self.qp.quiver.vertices)


@dataclass(frozen=True)
class MutationEdge:
    source: int
    target: int
    vertex: str


@dataclass
class MutationGraph:
    nodes: list[MutationNode] = field(default_factory=list)
    edges: list[MutationEdge] = field(default_factory=list)

    @property
    def root(self) -> MutationNode:
        return self.nodes[0]

    def vertex_ids(self) -> list[str]:
        return self.root.qp.quiver.vertex_ids()

    def out_edges(self, index: int) -> list[MutationEdge]:
        return [e for e in self.edges if e.source == index]

    def undirected_edges(self) -> list[tuple[int, int, str]]:
        seen = set()
        for e in self.edges:
            a, b = sorted((e.source, e.target))
            seen.add((a, b, e.vertex))
        return sorted(seen)

    def node_by_word(self, word: Sequence[str]) -> MutationNode:
        idx = 0
        for k in word:
            nxt = [e.target for e in self.out_edges(idx) if e.vertex == k]
            if not nxt:
                raise KeyError(f"no mutation at {k} from node {idx}")
            idx = nxt[0]
        return self.nodes[idx]


def mutable_vertices(qp: QP) -> set[str]:
    q = qp.quiver
    return {v for v in q.vertex_ids() if v != qp.trivial and q.loops_at(v) == 0}


def expected_class_size(spec: GroupSpec) -> int:
    """Node counts of the labelled mutation classes."""
    if spec.family == "Cyclic":
        return 1
    if spec.family == "Tetrahedral":
        return 5
    if spec.family == "Dihedral":
        m = spec.param // 2
        return m + 1 if spec.param % 2 else (m + 1) ** 2
    raise ValueError(f"no mutation class for {spec.family}")


def enumerate_class(root: QP, expected: Optional[int] = None) -> MutationGraph:
    """BFS closure under mutation; representatives carry the least shortest word."""
    budget = 10 * expected if expected else 10 * len(root.quiver.vertices) ** 2
    graph = MutationGraph()
    index: dict[NodeKey, int] = {}

    def add(qp: QP, word: tuple[str, ...]) -> int:
        key = node_key(qp)
        if key in index:
            return index[key]
        if len(graph.nodes) >= budget:
            raise BudgetExceeded(f"more than {budget} mutation QPs")
        node = MutationNode(len(graph.nodes), key[0], qp, word)
        graph.nodes.append(node)
        index[key] = node.index
        queue.append(node.index)
        return node.index

    queue: deque[int] = deque()
    add(root, ())
    while queue:
        node = graph.nodes[queue.popleft()]
        for k in sorted(mutable_vertices(node.qp)):
            target = add(mutate(node.qp, k), node.word + (k,))
            graph.edges.append(MutationEdge(node.index, target, k))
    return graph


def apply_word(qp: QP, word: Iterable[str]) -> QP:
    for k in word:
        qp = mutate(qp, k)
    return qp


def _permute_signature(sig: Signature, perm: Sequence[int]) -> Signature:
    # new[perm[i]][perm[j]] = old[i][j]
    n = len(sig)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[perm[i]][perm[j]] = sig[i][j]
    return tuple(tuple(r) for r in out)


def _permute_key(key: NodeKey, perm: Sequence[int]) -> NodeKey:
    dims = [0] * len(perm)
    for i, d in enumerate(key[1]):
        dims[perm[i]] = d
    return _permute_signature(key[0], perm), tuple(dims)


def count_up_to_symmetry(g: MutationGraph, auts: Iterable[Mapping[str, str]]) -> int:
    """Number of node orbits under vertex-label permutations of the root."""
    ids = g.vertex_ids()
    pos = {v: i for i, v in enumerate(ids)}
    perms = []
    for aut in auts:
        full = {v: aut.get(v, v) for v in ids}
        if sorted(full.values()) != sorted(ids):
            raise NotAutomorphism(f"{dict(aut)} is not a permutation of the vertices")
        perm = [pos[full[v]] for v in ids]
        if _permute_key(g.root.key, perm) != g.root.key:
            raise NotAutomorphism(f"{dict(aut)} is not an automorphism of the root quiver")
        perms.append(perm)
    by_key = {n.key: n.index for n in g.nodes}
    parent = list(range(len(g.nodes)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for n in g.nodes:
        for perm in perms:
            other = by_key.get(_permute_key(n.key, perm))
            if other is not None:
                parent[find(n.index)] = find(other)
    return len({find(i) for i in range(len(g.nodes))})


def _word_label(word: Sequence[str]) -> str:
    return ",".join(word) if word else "()"


def graph_to_dict(g: MutationGraph, with_qps: bool = False) -> dict:
    nodes = []
    for n in g.nodes:
        item = {"index": n.index, "word": list(n.word), "dims": list(n.key[1]), "signature": [list(r) for r in n.signature]}
        if with_qps:
            item["qp"] = qp_to_dict(n.qp)
        nodes.append(item)
    return {
        "vertices": g.vertex_ids(),
        "nodes": nodes,
        "edges": [{"source": e.source, "target": e.target, "vertex": e.vertex} for e in g.edges],
    }


def graph_to_dot(g: MutationGraph) -> str:
    """Undirected DOT graph; each edge is labelled with the mutated vertex."""
    lines = ["graph mutations {"]
    for n in g.nodes:
        lines.append(f'  n{n.index} [label="{_word_label(n.word)}"];')
    for a, b, k in g.undirected_edges():
        lines.append(f'  n{a} -- n{b} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
