"""
Circuit-hyperplane relaxation, tightening of free bases, and the lazy
RelaxedBinaryMatroid: a GF(2) matrix plus up to two relaxed sets, queried
through a rank oracle instead of an explicit basis family.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations

from django.conf import settings

from .core import Matroid, bits, compress, contract, delete, derived, lex_key, popcount, validate
from .exceptions import (
    ElementNotInGroundSet,
    GroundSetOverflow,
    NotACircuitHyperplane,
    NotAFreeBasis,
    PreconditionViolated,
)
from .gf2 import BinaryMatrix, contract_column, delete_column, vector_matroid

logger = logging.getLogger(__name__)


def is_circuit_hyperplane(rank, word, full, r):
    """Check word against any rank function (table lookup or oracle)."""
    if popcount(word) != r or rank(word) != r - 1:
        return False
    if any(rank(word ^ 1 << x) != r - 1 for x in bits(word)):
        return False
    return all(rank(word | 1 << e) == r for e in bits(full ^ word))


# -------------------------------------------------------------------
# Explicit matroids
# -------------------------------------------------------------------
def circuit_hyperplanes(M):
    return M.circuits & M.hyperplanes


def relax(M, H):
    if H not in circuit_hyperplanes(M):
        raise NotACircuitHyperplane(
            f"{M.ground.render(H) or '{}'} is not a circuit-hyperplane of {M.describe()}", word=H
        )
    return derived(Matroid(M.ground, M.bases | {H}))


@dataclass(frozen=True, order=True)
class FreeBasis:
    B: int


def is_free_basis(M, B):
    outside = M.full ^ B
    if B not in M.bases or not B or not outside:
        return False
    # B + e is a circuit iff every B - f + e is a basis.
    return all(B ^ 1 << f | 1 << e in M.bases for e in bits(outside) for f in bits(B))


def free_bases(M):
    return tuple(FreeBasis(B) for B in sorted(M.bases, key=lex_key) if is_free_basis(M, B))


def tighten(M, B):
    word = B.B if isinstance(B, FreeBasis) else B
    if not is_free_basis(M, word):
        raise NotAFreeBasis(f"{M.ground.render(word) or '{}'} is not a free basis of {M.describe()}", word=word)
    return derived(Matroid(M.ground, M.bases - {word}))


# -------------------------------------------------------------------
# Lazy representation
# -------------------------------------------------------------------
@dataclass(frozen=True)
class RelaxedBinaryMatroid:
    base: BinaryMatrix
    relaxed_sets: tuple = ()
    name: str = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "relaxed_sets", tuple(self.relaxed_sets))
        if len(self.relaxed_sets) > 2:
            raise PreconditionViolated("at most two relaxed sets are supported")
        if len(self.relaxed_sets) == 2 and self.relaxed_sets[0] & self.relaxed_sets[1]:
            raise PreconditionViolated("relaxed sets must be disjoint")

    @property
    def ground(self):
        return self.base.ground

    @property
    def labels(self):
        return self.base.labels

    @property
    def size(self):
        return self.base.width

    @property
    def full(self):
        return self.base.ground.full

    @property
    def r(self):
        return self.rank(self.full)

    def rank(self, word):
        """Matrix rank, raised by one on exactly the relaxed sets."""
        return self.base.rank(word) + (word in self.relaxed_sets)

    def describe(self):
        return self.name or f"<lazy, {self.size} columns, {len(self.relaxed_sets)} relaxed>"


def _chain_is_valid(base, relaxed_sets):
    full = base.ground.full
    r = base.rank()
    for count, X in enumerate(relaxed_sets):
        partial = RelaxedBinaryMatroid(base, relaxed_sets[:count])
        if not is_circuit_hyperplane(partial.rank, X, full, r):
            return False
    return True


def relax_lazy(M, H):
    """Relax H in a lazy matroid, checking it through the rank oracle."""
    if not is_circuit_hyperplane(M.rank, H, M.full, M.r):
        raise NotACircuitHyperplane(f"{M.ground.render(H)} is not a circuit-hyperplane", word=H)
    return RelaxedBinaryMatroid(M.base, M.relaxed_sets + (H,), M.name)


def _collapse(base, relaxed_sets, name=None):
    """Explicit matroid read off the rank oracle of (base, relaxed_sets)."""
    if base.width > settings.MATROID_EXPLICIT_LIMIT:
        raise GroundSetOverflow(
            f"collapsing {base.width} columns exceeds the explicit limit", size=base.width
        )
    oracle = RelaxedBinaryMatroid(base, relaxed_sets)
    r = oracle.r
    bases = set()
    for chosen in combinations(range(base.width), r):
        word = sum(1 << i for i in chosen)
        if oracle.rank(word) == r:
            bases.add(word)
    logger.info("collapsed lazy matroid on %d columns to %d bases", base.width, len(bases))
    return validate(bases, base.ground, name)


def _rebuilt(base, relaxed_sets, name):
    if _chain_is_valid(base, relaxed_sets):
        return RelaxedBinaryMatroid(base, relaxed_sets, name)
    return _collapse(base, relaxed_sets, name)


def _contract_one(M, label):
    if isinstance(M, Matroid):
        return contract(M, label)
    bit = 1 << M.ground.index(label)
    if bit in M.relaxed_sets:
        return _collapse(M.base, M.relaxed_sets, M.name)
    keep = M.full ^ bit
    # Sets avoiding e are absorbed: M'/e = M/e there.
    relaxed = tuple(compress(X ^ bit, keep) for X in M.relaxed_sets if X & bit)
    return _rebuilt(contract_column(M.base, label), relaxed, M.name)


def _delete_one(M, label):
    if isinstance(M, Matroid):
        return delete(M, label)
    bit = 1 << M.ground.index(label)
    keep = M.full ^ bit
    relaxed = tuple(compress(X, keep) for X in M.relaxed_sets if not X & bit)
    return _rebuilt(delete_column(M.base, label), relaxed, M.name)


def lazy_minor(M, C, D):
    """M / C \\ D, one element at a time, keeping the lazy form while it stays valid."""
    if C & D:
        raise PreconditionViolated("contract and delete sets must be disjoint", overlap=C & D)
    if (C | D) & ~M.full:
        raise ElementNotInGroundSet("minor sets leave the ground set", word=(C | D) & ~M.full)
    result = M
    for label in M.ground.labels_of(C):
        result = _contract_one(result, label)
    for label in M.ground.labels_of(D):
        result = _delete_one(result, label)
    return result


def materialize(M):
    if isinstance(M, Matroid):
        return M
    if M.size > settings.MATROID_EXPLICIT_LIMIT:
        raise GroundSetOverflow(f"{M.size} columns exceed the explicit limit", size=M.size)
    explicit = vector_matroid(M.base)
    return validate(explicit.bases | set(M.relaxed_sets), M.ground, M.name)
