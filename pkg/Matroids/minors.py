"""
Isomorphism and minor search over explicit matroids.

Minor search fixes |C| = r(M) - r(N) and |D| = r*(M) - r*(N): C runs over
independent sets and D over sets avoided by some basis through C, which is
exactly the set of (C, D) pairs whose minor can have N's rank and corank.
"""
import hashlib
import logging
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx
from django.core.cache import caches
from networkx.algorithms.isomorphism import GraphMatcher

from .core import Matroid, bits, compress, connectivity, contract, delete, popcount

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinorWitness:
    contract: int
    delete: int
    iso: dict = field(hash=False)   # N label -> M label

    def describe(self, M):
        mapping = " ".join(f"{source}={target}" for source, target in self.iso.items())
        return (
            f"contract {M.ground.render(self.contract) or '-'}\n"
            f"delete {M.ground.render(self.delete) or '-'}\n"
            f"map {mapping}"
        )


# -------------------------------------------------------------------
# Isomorphism
# -------------------------------------------------------------------
def invariants(M):
    return (
        M.size,
        M.r,
        len(M.bases),
        tuple(sorted(M.element_profile)),
        tuple(sorted(popcount(circuit) for circuit in M.circuits)),
    )


def incidence_graph(M):
    """Bipartite element/circuit graph; elements carry their profile, circuits their size."""
    graph = nx.Graph()
    for e, profile in enumerate(M.element_profile):
        graph.add_node(("element", e), tag=("element", profile))
    for circuit in M.circuits:
        graph.add_node(("circuit", circuit), tag=("circuit", popcount(circuit)))
        graph.add_edges_from((("element", e), ("circuit", circuit)) for e in bits(circuit))
    return graph


def isomorphic(M1, M2):
    """A label bijection M1 -> M2 carrying bases to bases, or None."""
    if invariants(M1) != invariants(M2):
        return None
    matcher = GraphMatcher(
        incidence_graph(M1),
        incidence_graph(M2),
        node_match=lambda left, right: left["tag"] == right["tag"],
    )
    if not matcher.is_isomorphic():
        return None
    image = {e: matcher.mapping[("element", e)][1] for e in range(M1.size)}
    if {sum(1 << image[e] for e in bits(basis)) for basis in M1.bases} != M2.bases:
        logger.error("circuit-preserving map failed on bases: %r -> %r", M1, M2)
        return None
    return {M1.labels[e]: M2.labels[image[e]] for e in range(M1.size)}


def fingerprint(M):
    """Digest of the basis family after ordering elements by their profile."""
    order = sorted(range(M.size), key=lambda e: (M.element_profile[e], e))
    position = {e: rank for rank, e in enumerate(order)}
    relabelled = sorted(sum(1 << position[e] for e in bits(basis)) for basis in M.bases)
    payload = repr((M.size, M.r, relabelled)).encode()
    return hashlib.sha1(payload).hexdigest()


# -------------------------------------------------------------------
# Minor search
# -------------------------------------------------------------------
def minor_witnesses(M, N, using=0):
    """Yield every (C, D) embedding of N in M whose survivors include using."""
    n = M.size
    k_contract = M.r - N.r
    k_delete = (n - M.r) - (N.size - N.r)
    if N.size > n or k_contract < 0 or k_delete < 0:
        return
    free = [e for e in range(n) if not using >> e & 1]
    target_count = len(N.bases)
    for chosen in combinations(free, k_contract):
        C = sum(1 << e for e in chosen)
        if not M.is_independent(C):
            continue
        through = [basis ^ C for basis in M.bases if basis & C == C]
        rest = [e for e in free if not C >> e & 1]
        for dropped in combinations(rest, k_delete):
            D = sum(1 << e for e in dropped)
            surviving = [basis for basis in through if not basis & D]
            if len(surviving) != target_count:
                continue
            keep = M.full ^ C ^ D
            candidate = Matroid(M.ground.restrict(keep), {compress(b, keep) for b in surviving})
            iso = isomorphic(N, candidate)
            if iso is not None:
                yield MinorWitness(C, D, iso)


def has_minor(M, N):
    return next(minor_witnesses(M, N), None)


def has_minor_using(M, N, e):
    return next(minor_witnesses(M, N, 1 << M.ground.index(e)), None)


def contains_minor(M, N):
    """Memoised boolean has_minor, keyed by fingerprints in the "minors" cache."""
    memo = caches["minors"]
    key = f"minor:{fingerprint(M)}:{fingerprint(N)}"
    found = memo.get(key)
    if found is None:
        found = has_minor(M, N) is not None
        memo.set(key, found)
    return found


def is_fragile(M, N):
    for label in M.labels:
        if contains_minor(delete(M, label), N) and contains_minor(contract(M, label), N):
            return False
    return True


@dataclass
class RoundednessReport:
    checked: int = 0
    violations: list = field(default_factory=list)   # (matroid, element label)

    @property
    def ok(self):
        return not self.violations


def roundedness_check(family, corpus):
    """Every connected corpus member with a family minor has one through each element."""
    report = RoundednessReport()
    for M in corpus:
        if not connectivity(M).is_connected:
            continue
        fitting = [N for N in family if N.size <= M.size]
        if not any(contains_minor(M, N) for N in fitting):
            continue
        report.checked += 1
        for label in M.labels:
            if not any(has_minor_using(M, N, label) for N in fitting):
                report.violations.append((M, label))
    return report
