"""
Deterministic test corpus of small matroids, one representative per
isomorphism class.
"""
import logging
from itertools import combinations

import numpy as np

from Matroids import constants
from Matroids.catalog import named
from Matroids.core import GroundSet, Matroid, contract, default_labels, delete, direct_sum, dual, relabel
from Matroids.exceptions import BasepointDegenerate, MatroidError
from Matroids.gf2 import BinaryMatrix, is_binary, vector_matroid
from Matroids.minors import invariants, isomorphic
from Matroids.relaxed import circuit_hyperplanes, relax
from Matroids.sums import twosum

logger = logging.getLogger(__name__)


class Corpus:
    """Matroids bucketed by invariants, deduplicated up to isomorphism."""

    def __init__(self, max_elements):
        self.max_elements = max_elements
        self.buckets = {}
        self.members = []

    def add(self, M, name=None):
        if M.size > self.max_elements:
            return False
        bucket = self.buckets.setdefault(invariants(M), [])
        if any(isomorphic(M, other) is not None for other in bucket):
            return False
        if name or not M.name:
            M = M.renamed(name or f"corpus{len(self.members)}")
        bucket.append(M)
        self.members.append(M)
        return True

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def catalog_members(max_elements):
    found = []
    for name in constants.catalog_names:
        M = named(name)
        if isinstance(M, Matroid) and M.size <= max_elements:
            found.append(M)
    return found


def _small_minors(M):
    for e in M.labels:
        yield delete(M, e), f"{M.name}\\{e}"
        yield contract(M, e), f"{M.name}/{e}"
    for e, f in combinations(M.labels, 2):
        yield delete(delete(M, e), f), f"{M.name}\\{e}{f}"
        yield contract(contract(M, e), f), f"{M.name}/{e}{f}"
        yield delete(contract(M, e), f), f"{M.name}/{e}\\{f}"
        yield contract(delete(M, e), f), f"{M.name}\\{e}/{f}"


def _relaxations(M):
    for H in sorted(circuit_hyperplanes(M)):
        yield relax(M, H), f"{M.name}+relax{M.ground.render(H)}"


def _random_binary(rng, r, n):
    entries = rng.integers(0, 2, size=(r, n))
    rows = [sum(1 << j for j in range(n) if entries[i, j]) for i in range(r)]
    return BinaryMatrix(r, tuple(rows), GroundSet(default_labels(n)))


def _with_fresh_labels(M, suffix):
    return relabel(M, {label: f"{label}{suffix}" for label in M.labels})


def corpus(seed=0, max_elements=10, samples_per_shape=24):
    """Catalog matroids with their small minors, duals and relaxations,
    random binary matroids and their relaxations, and sums of catalog pairs."""
    pool = Corpus(max_elements)
    catalog = catalog_members(max_elements)
    for M in catalog:
        pool.add(M, M.name)
    for M in catalog:
        pool.add(dual(M), f"{M.name}*")
    for M in catalog:
        for minor, name in _small_minors(M):
            pool.add(minor, name)
    for M in catalog:
        if is_binary(M)[0]:
            for relaxed, name in _relaxations(M):
                pool.add(relaxed, name)

    rng = np.random.default_rng(seed)
    for n in range(4, max_elements + 1):
        for r in range(2, n - 1):
            for sample in range(samples_per_shape):
                M = vector_matroid(_random_binary(rng, r, n), f"bin{r},{n}.{sample}")
                pool.add(M)
                for relaxed, name in _relaxations(M):
                    pool.add(relaxed, name)

    small = [M for M in catalog if M.size <= max_elements - 1]
    for M1, M2 in combinations(small, 2):
        if M1.size + M2.size <= max_elements:
            pool.add(direct_sum(M1, _with_fresh_labels(M2, "'")), f"{M1.name}+{M2.name}")
        if M1.size + M2.size - 2 <= max_elements:
            try:
                glued = twosum(M1, _with_fresh_labels(M2, "'"), M1.labels[0], f"{M2.labels[0]}'")
            except BasepointDegenerate:
                continue
            except MatroidError as exc:
                logger.debug("skipping 2-sum of %s and %s: %s", M1.name, M2.name, exc)
                continue
            pool.add(glued, f"{M1.name}(+)2{M2.name}")
    logger.info("corpus seed=%d max=%d: %d isomorphism classes", seed, max_elements, len(pool))
    return pool
