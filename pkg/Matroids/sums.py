"""
2-sums and the canonical tree decomposition of a connected matroid.

Decomposition splits recursively on the 2-separation with the
lexicographically least side, then merges adjacent nodes that are both
rank-one uniform or both corank-one uniform. Fresh basepoints are "#1",
"#2", ... in split order.
"""
import logging
from dataclasses import dataclass
from itertools import count

import networkx as nx
from django.conf import settings

from .core import (
    GroundSet,
    Matroid,
    compress,
    connectivity,
    coloops,
    derived,
    least_word,
    loops,
    popcount,
    separation_sides,
)
from .exceptions import BasepointDegenerate, GroundSetOverflow, InvalidTree, LabelCollision, NotConnected
from .minors import contains_minor, invariants, isomorphic

logger = logging.getLogger(__name__)


def twosum(M1, M2, p1, p2, name=None):
    bit1 = 1 << M1.ground.index(p1)
    bit2 = 1 << M2.ground.index(p2)
    for M, bit, label in ((M1, bit1, p1), (M2, bit2, p2)):
        if M.size < 3:
            raise BasepointDegenerate(f"{M.describe()} has fewer than three elements", label=label)
        if loops(M) & bit or coloops(M) & bit:
            raise BasepointDegenerate(f"basepoint {label} is a loop or coloop of {M.describe()}", label=label)
    labels1 = tuple(label for label in M1.labels if label != p1)
    labels2 = tuple(label for label in M2.labels if label != p2)
    shared = set(labels1) & set(labels2)
    if shared:
        raise LabelCollision(f"shared labels: {' '.join(sorted(shared))}", labels=sorted(shared))
    total = len(labels1) + len(labels2)
    if total > settings.MATROID_EXPLICIT_LIMIT:
        raise GroundSetOverflow(f"2-sum has {total} elements", size=total)
    keep1, keep2 = M1.full ^ bit1, M2.full ^ bit2

    def split(M, bit, keep):
        avoiding = {compress(b, keep) for b in M.bases if not b & bit}
        through = {compress(b ^ bit, keep) for b in M.bases if b & bit}
        return avoiding, through

    deleted1, contracted1 = split(M1, bit1, keep1)
    deleted2, contracted2 = split(M2, bit2, keep2)
    shift = len(labels1)
    bases = {a | b << shift for a in deleted1 for b in contracted2}
    bases |= {a | b << shift for a in contracted1 for b in deleted2}
    return derived(Matroid(GroundSet(labels1 + labels2), bases, name))


def is_rank_one_uniform(M):
    return M.r == 1 and not loops(M)


def is_corank_one_uniform(M):
    return M.r == M.size - 1 and not coloops(M)


def node_kind(M):
    if M.size >= 3 and is_rank_one_uniform(M):
        return f"U1,{M.size}"
    if M.size >= 3 and is_corank_one_uniform(M):
        return f"U{M.r},{M.size}"
    if connectivity(M).is_three_connected:
        return "3-connected"
    return "other"


@dataclass(frozen=True)
class TreeDecomposition:
    nodes: tuple      # Matroid per node
    edges: tuple      # (i, j, basepoint label)

    def graph(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.nodes)))
        for i, j, label in self.edges:
            graph.add_edge(i, j, basepoint=label)
        return graph

    def problems(self):
        """Canonical-form violations, empty when the tree is canonical."""
        found = []
        graph = self.graph()
        if len(self.nodes) and not nx.is_tree(graph):
            found.append("not a tree")
        whole = sum(node.size for node in self.nodes) - 2 * len(self.edges)
        for i, j, label in self.edges:
            first, second = self.nodes[i], self.nodes[j]
            if set(first.labels) & set(second.labels) != {label}:
                found.append(f"nodes {i} and {j} share more than {label}")
            for node in (first, second):
                bit = 1 << node.ground.index(label) if label in node.ground else 0
                if not bit or node.connectivity_table[bit] == 0:
                    found.append(f"basepoint {label} is a separator of a node")
            if is_rank_one_uniform(first) and is_rank_one_uniform(second):
                found.append(f"adjacent rank-one nodes {i}, {j}")
            if is_corank_one_uniform(first) and is_corank_one_uniform(second):
                found.append(f"adjacent corank-one nodes {i}, {j}")
        adjacent = {frozenset((i, j)) for i, j, _ in self.edges}
        for i in range(len(self.nodes)):
            for j in range(i + 1, len(self.nodes)):
                if frozenset((i, j)) not in adjacent and set(self.nodes[i].labels) & set(self.nodes[j].labels):
                    found.append(f"non-adjacent nodes {i}, {j} share elements")
        for i, node in enumerate(self.nodes):
            if whole >= 3 and node.size < 3:
                found.append(f"node {i} has fewer than three elements")
            if whole >= 3 and node_kind(node) == "other":
                found.append(f"node {i} is neither 3-connected nor uniform of rank or corank one")
        return found

    def signature(self):
        """Node iso-invariants paired with degrees, sorted."""
        graph = self.graph()
        return sorted((invariants(node), graph.degree(i)) for i, node in enumerate(self.nodes))

    def render(self):
        if not self.nodes:
            return ""
        graph = self.graph()
        lines = []

        def walk(i, parent, depth, via):
            node = self.nodes[i]
            prefix = "  " * depth + (f"[{via}] " if via else "")
            lines.append(
                f"{prefix}node {i}: {node_kind(node)}, rank {node.r}, elements {' '.join(node.labels)}"
            )
            for j in sorted(graph.neighbors(i)):
                if j != parent:
                    walk(j, i, depth + 1, graph.edges[i, j]["basepoint"])

        walk(0, None, 0, None)
        return "\n".join(lines)


def _part(M, side, basepoint):
    """The part on side A of an exact 2-separation, with a fresh basepoint.

    Bases: r(A)-sets independent in A, plus X + p for independent X in A
    with |X| = r(A) - 1 and X spanning M together with the other side.
    """
    rank = M.rank_table
    other = M.full ^ side
    target = int(rank[side])
    keep = side
    p = 1 << popcount(side)
    bases = set()
    sub = side
    while True:
        size = popcount(sub)
        if rank[sub] == size:
            if size == target:
                bases.add(compress(sub, keep))
            elif size == target - 1 and rank[sub | other] == M.r:
                bases.add(compress(sub, keep) | p)
        if not sub:
            break
        sub = (sub - 1) & side
    labels = M.ground.labels_of(side) + (basepoint,)
    return derived(Matroid(GroundSet(labels), bases))


def _split(M, fresh):
    if M.size < 4:
        return [M], []
    sides = separation_sides(M, 2)
    if not sides.size:
        return [M], []
    side = least_word(sides)
    label = f"#{next(fresh)}"
    left_nodes, left_edges = _split(_part(M, side, label), fresh)
    right_nodes, right_edges = _split(_part(M, M.full ^ side, label), fresh)
    offset = len(left_nodes)
    i = next(index for index, node in enumerate(left_nodes) if label in node.ground)
    j = offset + next(index for index, node in enumerate(right_nodes) if label in node.ground)
    edges = left_edges + [(a + offset, b + offset, p) for a, b, p in right_edges] + [(i, j, label)]
    return left_nodes + right_nodes, edges


def _merge(nodes, edges):
    while True:
        for position, (i, j, label) in enumerate(edges):
            first, second = nodes[i], nodes[j]
            if (is_rank_one_uniform(first) and is_rank_one_uniform(second)) or (
                is_corank_one_uniform(first) and is_corank_one_uniform(second)
            ):
                break
        else:
            return nodes, edges
        nodes = list(nodes)
        nodes[i] = twosum(first, second, label, label)
        del nodes[j]
        remaining = []
        for index, (a, b, p) in enumerate(edges):
            if index == position:
                continue
            a, b = (i if a == j else a), (i if b == j else b)
            a, b = (a - 1 if a > j else a), (b - 1 if b > j else b)
            remaining.append((a, b, p))
        edges = remaining


def tree_decompose(M):
    if M.size == 0 or not connectivity(M).is_connected:
        raise NotConnected(f"{M.describe()} is not connected")
    nodes, edges = _split(M, count(1))
    nodes, edges = _merge(nodes, edges)
    logger.debug("decomposed %s into %d nodes", M.describe(), len(nodes))
    return TreeDecomposition(tuple(nodes), tuple(edges))


def reconstruct(T):
    """Glue the nodes back together, folding 2-sums outward from node 0."""
    if not T.nodes:
        raise InvalidTree("empty tree")
    graph = T.graph()
    if not nx.is_tree(graph):
        raise InvalidTree("node graph is not a tree")
    for i, j, label in T.edges:
        if label not in T.nodes[i].ground or label not in T.nodes[j].ground:
            raise InvalidTree(f"basepoint {label} missing from an endpoint")
    result = T.nodes[0]
    for i, j in nx.dfs_edges(graph, 0):
        label = graph.edges[i, j]["basepoint"]
        result = twosum(result, T.nodes[j], label, label)
    return result


def tree_minor_check(T, M):
    """(i, j, found) for every node pair: is the path 2-sum of nodes i and j a minor of M?"""
    graph = T.graph()
    report = []
    for i in range(len(T.nodes)):
        for j in range(i + 1, len(T.nodes)):
            path = nx.shortest_path(graph, i, j)
            first = graph.edges[path[0], path[1]]["basepoint"]
            last = graph.edges[path[-2], path[-1]]["basepoint"]
            glued = twosum(T.nodes[i], T.nodes[j], first, last)
            report.append((i, j, contains_minor(M, glued)))
    return report


def same_shape(T1, T2):
    """Trees agree on their multiset of (node iso-class, degree)."""
    if len(T1.nodes) != len(T2.nodes):
        return False
    graph1, graph2 = T1.graph(), T2.graph()
    unmatched = list(range(len(T2.nodes)))
    for i, node in enumerate(T1.nodes):
        for position, j in enumerate(unmatched):
            if graph1.degree(i) == graph2.degree(j) and isomorphic(node, T2.nodes[j]) is not None:
                del unmatched[position]
                break
        else:
            return False
    return True
