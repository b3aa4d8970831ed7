"""
Explicit matroid kernel.

A matroid is stored as the family of its bases over a labelled ground set of
at most MATROID_EXPLICIT_LIMIT elements. Subsets are int words: bit i stands
for the i-th label. Rank, independence, circuits and flats are read off
whole-powerset numpy tables that are built once per matroid.
"""
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations

import numpy as np
from django.conf import settings

from .exceptions import (
    ElementNotInGroundSet,
    EmptyBases,
    ExchangeFailure,
    GroundSetOverflow,
    InvalidLabel,
    LabelCollision,
    MixedCardinality,
    PreconditionViolated,
)


# -------------------------------------------------------------------
# Subset words
# -------------------------------------------------------------------
def bits(word):
    """Positions of the set bits of word, ascending."""
    while word:
        low = word & -word
        yield low.bit_length() - 1
        word ^= low


def popcount(word):
    return word.bit_count()


def lex_key(word):
    return tuple(bits(word))


def compress(word, keep):
    """Pack the bits of word selected by keep into a dense word."""
    out = 0
    for target, position in enumerate(bits(keep)):
        if word >> position & 1:
            out |= 1 << target
    return out


def expand(word, keep):
    """Inverse of compress: spread a dense word over the positions of keep."""
    out = 0
    for source, position in enumerate(bits(keep)):
        if word >> source & 1:
            out |= 1 << position
    return out


@lru_cache(maxsize=None)
def subset_sizes(n):
    sizes = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int16)
    sizes.flags.writeable = False
    return sizes


# -------------------------------------------------------------------
# Ground sets
# -------------------------------------------------------------------
@dataclass(frozen=True)
class GroundSet:
    labels: tuple

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        object.__setattr__(self, "labels", labels)
        for label in labels:
            if not label or "." in label or any(ch.isspace() for ch in label):
                raise InvalidLabel(f"invalid element label {label!r}", label=label)
        if len(set(labels)) != len(labels):
            repeated = sorted(label for label, count in Counter(labels).items() if count > 1)
            raise LabelCollision(f"repeated labels: {' '.join(repeated)}", labels=repeated)

    @property
    def size(self):
        return len(self.labels)

    @property
    def full(self):
        return (1 << len(self.labels)) - 1

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self._positions

    @cached_property
    def _positions(self):
        return {label: position for position, label in enumerate(self.labels)}

    def index(self, label):
        try:
            return self._positions[label]
        except KeyError:
            raise ElementNotInGroundSet(f"{label!r} is not an element", label=label) from None

    def subset(self, labels):
        word = 0
        for label in labels:
            word |= 1 << self.index(label)
        return word

    def labels_of(self, word):
        return tuple(self.labels[position] for position in bits(word))

    def restrict(self, keep):
        return GroundSet(self.labels_of(keep))

    def render(self, word):
        """A subset as a file-format word."""
        labels = self.labels_of(word)
        if any(len(label) > 1 for label in self.labels):
            return ".".join(labels)
        return "".join(labels)


# -------------------------------------------------------------------
# Matroids
# -------------------------------------------------------------------
class Matroid:
    """Basis-family matroid on a small labelled ground set.

    Instances are immutable by convention; derived tables are cached on
    first use. Build through validate() for unchecked input.
    """

    def __init__(self, ground, bases, name=None):
        if not isinstance(ground, GroundSet):
            ground = GroundSet(tuple(ground))
        if ground.size > settings.MATROID_EXPLICIT_LIMIT:
            raise GroundSetOverflow(
                f"{ground.size} elements exceed the explicit limit of {settings.MATROID_EXPLICIT_LIMIT}",
                size=ground.size,
            )
        self.ground = ground
        self.bases = frozenset(bases)
        self.name = name
        self.r = popcount(next(iter(self.bases))) if self.bases else 0

    @property
    def size(self):
        return self.ground.size

    @property
    def labels(self):
        return self.ground.labels

    @property
    def full(self):
        return self.ground.full

    def renamed(self, name):
        return Matroid(self.ground, self.bases, name)

    def describe(self):
        return self.name or f"<{self.size} elements, rank {self.r}>"

    def __repr__(self):
        return f"Matroid({self.describe()}, {' '.join(self.labels)})"

    # Equality ignores label order: same labels, same bases as label sets.
    @cached_property
    def _key(self):
        return (
            frozenset(self.labels),
            frozenset(frozenset(self.ground.labels_of(basis)) for basis in self.bases),
        )

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    # -- powerset tables ---------------------------------------------
    @cached_property
    def independent_table(self):
        table = np.zeros(1 << self.size, dtype=bool)
        table[list(self.bases)] = True
        for e in range(self.size):
            view = table.reshape(-1, 2, 1 << e)
            view[:, 0, :] |= view[:, 1, :]
        table.flags.writeable = False
        return table

    @cached_property
    def rank_table(self):
        rank = np.where(self.independent_table, subset_sizes(self.size), 0).astype(np.int16)
        for e in range(self.size):
            view = rank.reshape(-1, 2, 1 << e)
            np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
        rank.flags.writeable = False
        return rank

    @cached_property
    def connectivity_table(self):
        """lambda(A) = r(A) + r(E - A) - r(M) for every subset A."""
        table = self.rank_table + self.rank_table[::-1] - self.r
        table.flags.writeable = False
        return table

    def rank(self, word):
        return int(self.rank_table[word])

    def is_independent(self, word):
        return bool(self.independent_table[word])

    def closure(self, word):
        rank = self.rank_table
        base = rank[word]
        return word | sum(1 << e for e in bits(self.full ^ word) if rank[word | 1 << e] == base)

    # -- derived structure -------------------------------------------
    @cached_property
    def circuits(self):
        independent = self.independent_table
        minimal = ~independent
        for e in range(self.size):
            minimal.reshape(-1, 2, 1 << e)[:, 1, :] &= independent.reshape(-1, 2, 1 << e)[:, 0, :]
        return frozenset(int(word) for word in np.flatnonzero(minimal))

    @cached_property
    def flats(self):
        rank = self.rank_table
        closed = np.ones(1 << self.size, dtype=bool)
        for e in range(self.size):
            view = rank.reshape(-1, 2, 1 << e)
            closed.reshape(-1, 2, 1 << e)[:, 0, :] &= view[:, 1, :] > view[:, 0, :]
        return frozenset(int(word) for word in np.flatnonzero(closed))

    @cached_property
    def hyperplanes(self):
        return frozenset(flat for flat in self.flats if self.rank_table[flat] == self.r - 1)

    @cached_property
    def cocircuits(self):
        return frozenset(self.full ^ hyperplane for hyperplane in self.hyperplanes)

    @cached_property
    def element_profile(self):
        """Per element: (bases through it, circuit sizes through it)."""
        basis_counts = [0] * self.size
        for basis in self.bases:
            for e in bits(basis):
                basis_counts[e] += 1
        sizes = [Counter() for _ in range(self.size)]
        for circuit in self.circuits:
            length = popcount(circuit)
            for e in bits(circuit):
                sizes[e][length] += 1
        return tuple(
            (basis_counts[e], tuple(sorted(sizes[e].items()))) for e in range(self.size)
        )


# -------------------------------------------------------------------
# Construction and validation
# -------------------------------------------------------------------
def validate(bases, ground, name=None):
    """Build a Matroid from an arbitrary family, checking every axiom."""
    if not isinstance(ground, GroundSet):
        ground = GroundSet(tuple(ground))
    bases = frozenset(bases)
    if not bases:
        raise EmptyBases("a matroid needs at least one basis")
    sizes = sorted({popcount(basis) for basis in bases})
    if len(sizes) > 1:
        raise MixedCardinality(
            f"bases have sizes {', '.join(map(str, sizes))}", sizes=sizes
        )
    stray = [basis for basis in bases if basis & ~ground.full]
    if stray:
        raise ElementNotInGroundSet(f"basis word {stray[0]:b} leaves the ground set", word=stray[0])
    matroid = Matroid(ground, bases, name)
    check_exchange(matroid)
    return matroid


def check_exchange(M):
    """Raise ExchangeFailure unless the basis-exchange axiom holds.

    For a basis B1 and x in B1 let S be the y outside B1 with B1 - x + y a
    basis. Exchange holds for (B1, x) iff no basis avoids both x and S,
    i.e. the complement of S + x has rank below r.
    """
    rank = M.rank_table
    full = M.full
    ordered = sorted(M.bases, key=lex_key)
    for first in ordered:
        outside = full ^ first
        for x in bits(first):
            without = first ^ (1 << x)
            swaps = 0
            for y in bits(outside):
                if without | 1 << y in M.bases:
                    swaps |= 1 << y
            blocked = full ^ (swaps | 1 << x)
            if rank[blocked] == M.r:
                second = next(basis for basis in ordered if basis | blocked == blocked)
                raise ExchangeFailure(
                    f"exchange fails for {M.ground.render(first)} and {M.ground.render(second)}"
                    f" at {M.labels[x]}",
                    first=first,
                    second=second,
                    element=M.labels[x],
                )


def derived(M):
    """Return M, re-checking the axioms when MATROID_VALIDATE_RESULTS is on."""
    if settings.MATROID_VALIDATE_RESULTS:
        check_exchange(M)
    return M


def empty():
    return Matroid(GroundSet(()), {0}, "U0,0")


def uniform(m, n, labels=None, name=None):
    if not 0 <= m <= n:
        raise PreconditionViolated(f"U{m},{n} needs 0 <= m <= n", m=m, n=n)
    labels = labels or default_labels(n)
    bases = {sum(1 << i for i in chosen) for chosen in combinations(range(n), m)}
    return Matroid(GroundSet(tuple(labels)), bases, name or f"U{m},{n}")


def default_labels(n):
    if n <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    return tuple(f"e{i}" for i in range(1, n + 1))


def relabel(M, mapping, name=None):
    """Rename elements; mapping may cover only some labels."""
    labels = tuple(mapping.get(label, label) for label in M.labels)
    return Matroid(GroundSet(labels), M.bases, name or M.name)


# -------------------------------------------------------------------
# Duality, minors, sums
# -------------------------------------------------------------------
def dual(M):
    name = None
    if M.name:
        name = M.name[:-1] if M.name.endswith("*") else f"{M.name}*"
    return derived(Matroid(M.ground, {M.full ^ basis for basis in M.bases}, name))


def delete(M, e):
    bit = 1 << M.ground.index(e)
    keep = M.full ^ bit
    avoiding = [basis for basis in M.bases if not basis & bit]
    if not avoiding:
        # e is a coloop
        avoiding = [basis ^ bit for basis in M.bases]
    return derived(Matroid(M.ground.restrict(keep), {compress(b, keep) for b in avoiding}))


def contract(M, e):
    bit = 1 << M.ground.index(e)
    keep = M.full ^ bit
    through = [basis ^ bit for basis in M.bases if basis & bit]
    if not through:
        # loops contract like deletions
        return delete(M, e)
    return derived(Matroid(M.ground.restrict(keep), {compress(b, keep) for b in through}))


def minor(M, C, D):
    """M / C \\ D for disjoint subset words C and D."""
    if C & D:
        raise PreconditionViolated(
            f"contract and delete sets meet in {M.ground.render(C & D)}", overlap=C & D
        )
    if (C | D) & ~M.full:
        raise ElementNotInGroundSet("minor sets leave the ground set", word=(C | D) & ~M.full)
    result = M
    for label in M.ground.labels_of(C):
        result = contract(result, label)
    for label in M.ground.labels_of(D):
        result = delete(result, label)
    return result


def direct_sum(M1, M2, name=None):
    shared = set(M1.labels) & set(M2.labels)
    if shared:
        raise LabelCollision(f"shared labels: {' '.join(sorted(shared))}", labels=sorted(shared))
    shift = M1.size
    bases = {first | second << shift for first in M1.bases for second in M2.bases}
    if name is None and M1.name and M2.name:
        name = f"{M1.name}+{M2.name}"
    return derived(Matroid(GroundSet(M1.labels + M2.labels), bases, name))


# -------------------------------------------------------------------
# Connectivity
# -------------------------------------------------------------------
@dataclass(frozen=True)
class ConnectivityReport:
    is_connected: bool
    is_three_connected: bool
    witness_separation: tuple = None   # (side word, order)


def least_word(words):
    return min((int(word) for word in words), key=lex_key)


def separation_sides(M, order):
    """Sides A of exact order-k separations: lambda(A) = k - 1, |A|, |E - A| >= k."""
    sizes = subset_sizes(M.size)
    mask = (M.connectivity_table == order - 1) & (sizes >= order) & (sizes <= M.size - order)
    return np.flatnonzero(mask)


def connectivity(M):
    lam = M.connectivity_table
    sizes = subset_sizes(M.size)
    proper = (sizes > 0) & (sizes < M.size)
    separators = np.flatnonzero(proper & (lam == 0))
    if separators.size:
        return ConnectivityReport(False, False, (least_word(separators), 1))
    sides = separation_sides(M, 2)
    if sides.size:
        return ConnectivityReport(True, False, (least_word(sides), 2))
    return ConnectivityReport(True, True, None)


# -------------------------------------------------------------------
# Loops, coloops, series and parallel structure
# -------------------------------------------------------------------
def loops(M):
    spanned = 0
    for basis in M.bases:
        spanned |= basis
    return M.full ^ spanned


def coloops(M):
    common = M.full
    for basis in M.bases:
        common &= basis
    return common


def parallel_classes(M):
    """Parallel classes of the non-loop elements, ordered by least element."""
    rank = M.rank_table
    classes = []
    for e in bits(M.full ^ loops(M)):
        for position, members in enumerate(classes):
            first = (members & -members).bit_length() - 1
            if rank[1 << e | 1 << first] == 1:
                classes[position] = members | 1 << e
                break
        else:
            classes.append(1 << e)
    return classes


def series_classes(M):
    return parallel_classes(Matroid(M.ground, {M.full ^ basis for basis in M.bases}))


def _parallel_element(M, e, label):
    bit = 1 << M.ground.index(e)
    new = 1 << M.size
    bases = set(M.bases) | {basis ^ bit | new for basis in M.bases if basis & bit}
    return Matroid(GroundSet(M.labels + (label,)), bases, M.name)


def _series_element(M, e, label):
    bit = 1 << M.ground.index(e)
    new = 1 << M.size
    bases = {basis | new for basis in M.bases} | {basis | bit for basis in M.bases if not basis & bit}
    return Matroid(GroundSet(M.labels + (label,)), bases, M.name)


def series_parallel_extend(M, plan):
    """Add series and parallel mates; plan maps label -> (series, parallel).

    The i-th series mate of e is labelled "e" + "s<i>", parallel mates "p<i>".
    """
    for label, (series, parallel) in plan.items():
        M.ground.index(label)
        if series < 0 or parallel < 0:
            raise PreconditionViolated(f"negative extension count for {label}", label=label)
    total = M.size + sum(series + parallel for series, parallel in plan.values())
    if total > settings.MATROID_EXPLICIT_LIMIT:
        raise GroundSetOverflow(
            f"extension needs {total} elements, limit is {settings.MATROID_EXPLICIT_LIMIT}", size=total
        )
    result = M
    for label in M.labels:
        series, parallel = plan.get(label, (0, 0))
        for i in range(1, series + 1):
            result = _series_element(result, label, f"{label}s{i}")
        for i in range(1, parallel + 1):
            result = _parallel_element(result, label, f"{label}p{i}")
    return derived(result)
