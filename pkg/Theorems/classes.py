"""
Membership in the classes Z (every element has a binary deletion or
contraction), R (binary, or one relaxation away from binary) and D (two
complementary relaxations of a connected binary matroid), the structural
classifier for non-binary members of Z, and excluded-minor checks.
"""
import logging
from dataclasses import dataclass, field, replace

from django.conf import settings
from django.core.cache import caches

from Matroids import constants
from Matroids.catalog import named
from Matroids.core import (
    Matroid,
    bits,
    connectivity,
    contract,
    delete,
    dual,
    minor,
    parallel_classes,
    popcount,
    series_classes,
    uniform,
    validate,
)
from Matroids.exceptions import BudgetExceeded, ExchangeFailure, NotAFreeBasis, PreconditionViolated
from Matroids.gf2 import is_binary, is_connected_binary, vector_matroid
from Matroids.minors import fingerprint, has_minor, isomorphic
from Matroids.relaxed import (
    RelaxedBinaryMatroid,
    circuit_hyperplanes,
    free_bases,
    is_circuit_hyperplane,
    is_free_basis,
    materialize,
    relax,
    tighten,
)

logger = logging.getLogger(__name__)


def binary(M):
    return is_binary(M)[0]


def _check_budget(M):
    if M.size > settings.MATROID_SEARCH_BUDGET:
        logger.warning("refusing %s: %d elements over the search budget", M.describe(), M.size)
        raise BudgetExceeded(
            f"{M.describe()} has {M.size} elements, search budget is {settings.MATROID_SEARCH_BUDGET}",
            size=M.size,
        )


# -------------------------------------------------------------------
# Z and R
# -------------------------------------------------------------------
def in_Z(M):
    """(True, None) or (False, label) for an element with both minors non-binary."""
    for label in M.labels:
        if not binary(delete(M, label)) and not binary(contract(M, label)):
            return False, label
    return True, None


def in_R(M):
    """(True, None) if binary; (True, (parent matrix, X)) if a tightening is binary; else (False, None)."""
    ok, _ = is_binary(M)
    if ok:
        return True, None
    for free in free_bases(M):
        ok, matrix = is_binary(tighten(M, free))
        if ok:
            return True, (matrix, free.B)
    return False, None


# -------------------------------------------------------------------
# D
# -------------------------------------------------------------------
@dataclass(frozen=True)
class DMembership:
    X: int
    Y: int
    parent: object    # Matroid, or BinaryMatrix for lazy input


def _in_D_explicit(M):
    free = {fb.B for fb in free_bases(M)}
    for X in sorted(free):
        Y = M.full ^ X
        if Y not in free or Y < X:
            continue
        for first, second in ((X, Y), (Y, X)):
            try:
                middle = tighten(M, first)
                if not is_free_basis(middle, second):
                    continue
                parent = validate(tighten(middle, second).bases, M.ground)
            except (NotAFreeBasis, ExchangeFailure):
                continue
            if not binary(parent) or not connectivity(parent).is_connected:
                continue
            hyperplanes = circuit_hyperplanes(parent)
            if X not in hyperplanes or Y not in hyperplanes:
                continue
            if relax(relax(parent, first), second) != M:
                continue
            return DMembership(X, Y, parent)
    return None


def _in_D_lazy(M):
    """Certify D-membership straight from a lazy representation's relaxed pair."""
    if len(M.relaxed_sets) != 2:
        return None
    first, second = M.relaxed_sets
    if first | second != M.full or first & second:
        return None
    if not is_connected_binary(M.base):
        return None
    r = M.base.rank()
    if not is_circuit_hyperplane(M.base.rank, first, M.full, r):
        return None
    once = RelaxedBinaryMatroid(M.base, (first,))
    if not is_circuit_hyperplane(once.rank, second, M.full, r):
        return None
    for B in (first, second):
        outside = M.full ^ B
        if popcount(B) != r or M.rank(B) != r:
            return None
        for e in bits(outside):
            circuit = B | 1 << e
            if M.rank(circuit) != r or any(M.rank(circuit ^ 1 << f) != r for f in bits(circuit)):
                return None
    return DMembership(min(first, second), max(first, second), M.base)


def in_D(M):
    if isinstance(M, RelaxedBinaryMatroid):
        if M.size > settings.MATROID_EXPLICIT_LIMIT:
            return _in_D_lazy(M)
        M = materialize(M)
    if M.size < 8 or M.size % 2:
        # members have 2r >= 8 elements
        return None
    return _in_D_explicit(M)


def find_d_minor(M):
    """(contract word, delete word, DMembership) for a minor of M in D, or None."""
    seen = set()

    def search(current, contracted, deleted):
        key = fingerprint(current)
        if key in seen or current.size < 8 or binary(current):
            return None
        seen.add(key)
        membership = in_D(current)
        if membership is not None:
            return M.ground.subset(contracted), M.ground.subset(deleted), membership
        for label in current.labels:
            found = search(delete(current, label), contracted, deleted + (label,))
            if found is None:
                found = search(contract(current, label), contracted + (label,), deleted)
            if found is not None:
                return found
        return None

    return search(M, (), ())


# -------------------------------------------------------------------
# Minor-based deciders
# -------------------------------------------------------------------
def _avoids(M, excluded, tag):
    """True iff no minor of M is isomorphic to a member of excluded or lies in D.

    Answers are memoised in the "minors" cache under the class tag.
    """
    if M.size < 5:
        return True
    memo = caches["minors"]
    key = f"avoids:{tag}:{fingerprint(M)}"
    found = memo.get(key)
    if found is not None:
        return found
    if binary(M):
        memo.set(key, True)
        return True
    result = True
    if any(N.size == M.size and isomorphic(N, M) is not None for N in excluded):
        result = False
    elif in_D(M) is not None:
        result = False
    else:
        for label in M.labels:
            if not _avoids(delete(M, label), excluded, tag) or not _avoids(contract(M, label), excluded, tag):
                result = False
                break
    memo.set(key, result)
    return result


def in_Z_by_minors(M):
    _check_budget(M)
    return _avoids(M, [named(name) for name in constants.excluded_minors_Z], "Z")


def in_R_by_minors(M):
    _check_budget(M)
    return _avoids(M, [named(name) for name in constants.excluded_minors_R], "R")


# -------------------------------------------------------------------
# Classifier
# -------------------------------------------------------------------
@dataclass(frozen=True)
class ClassificationResult:
    case: str
    n: int = None
    parent: object = None        # BinaryMatrix
    X: int = None
    S: int = None
    T: int = None
    contracted: int = 0
    deleted: int = 0
    element: str = None
    matched: tuple = ()


CASE_ORDER = ("ParallelExtU2n", "SeriesExtUn2n", "U24SeriesParallel", "RelaxationOfBinary")


def _non_representatives(classes):
    out = 0
    for members in classes:
        out |= members & (members - 1)   # all but the least element
    return out


def _parallel_ext(M):
    if M.r != 2 or M.full ^ _covered(parallel_classes(M)):
        return None
    classes = parallel_classes(M)
    if len(classes) < 5:
        return None
    deleted = _non_representatives(classes)
    if isomorphic(uniform(2, len(classes)), minor(M, 0, deleted)) is None:
        return None
    return ClassificationResult("ParallelExtU2n", n=len(classes), deleted=deleted)


def _series_ext(M):
    found = _parallel_ext(dual(M))
    if found is None:
        return None
    return ClassificationResult("SeriesExtUn2n", n=found.n, contracted=found.deleted)


def _covered(classes):
    out = 0
    for members in classes:
        out |= members
    return out


def _u24_series_parallel(M):
    parallel = [members for members in parallel_classes(M) if members & (members - 1)]
    series = [members for members in series_classes(M) if members & (members - 1)]
    if _covered(parallel_classes(M)) != M.full or _covered(series_classes(M)) != M.full:
        return None   # loops or coloops
    if _covered(parallel) & _covered(series):
        return None
    deleted = _non_representatives(parallel)
    contracted = _non_representatives(series)
    if isomorphic(uniform(2, 4), minor(M, contracted, deleted)) is None:
        return None
    S = sum(members & -members for members in series)
    T = sum(members & -members for members in parallel)
    return ClassificationResult("U24SeriesParallel", S=S, T=T, contracted=contracted, deleted=deleted)


def _relaxation_of_binary(M):
    if M.r <= 2 or M.size - M.r <= 2:
        return None
    for free in free_bases(M):
        ok, matrix = is_binary(tighten(M, free))
        if ok and is_connected_binary(matrix):
            return ClassificationResult("RelaxationOfBinary", parent=matrix, X=free.B)
    return None


def matching_cases(M):
    """Every structural case M fits, in CASE_ORDER."""
    found = (_parallel_ext(M), _series_ext(M), _u24_series_parallel(M), _relaxation_of_binary(M))
    return [result for result in found if result is not None]


def classify_Z(M):
    if binary(M):
        return ClassificationResult("Binary")
    ok, element = in_Z(M)
    if not ok:
        return ClassificationResult("NotInZ", element=element)
    found = matching_cases(M)
    if not found:
        logger.error("%s is non-binary and in Z but matches no case", M.describe())
        return ClassificationResult("Unclassified")
    matched = tuple(result.case for result in found)
    return replace(found[0], matched=matched)


def witness_reconstructs(M, result):
    """Re-check a ClassificationResult against M."""
    case = result.case
    if case == "Binary":
        return binary(M)
    if case == "NotInZ":
        label = result.element
        return not binary(delete(M, label)) and not binary(contract(M, label))
    if case == "RelaxationOfBinary":
        parent = vector_matroid(result.parent)
        return relax(parent, result.X) == M
    rank = M.rank_table
    corank = dual(M).rank_table
    kept = M.full ^ result.contracted ^ result.deleted
    for e in bits(result.deleted):
        if not any(rank[1 << e | 1 << f] == 1 for f in bits(kept)):
            return False
    for e in bits(result.contracted):
        if not any(corank[1 << e | 1 << f] == 1 for f in bits(kept)):
            return False
    landed = minor(M, result.contracted, result.deleted)
    if case == "ParallelExtU2n":
        return isomorphic(uniform(2, result.n), landed) is not None
    if case == "SeriesExtUn2n":
        return isomorphic(uniform(result.n - 2, result.n), landed) is not None
    if case == "U24SeriesParallel":
        return isomorphic(uniform(2, 4), landed) is not None
    return False


# -------------------------------------------------------------------
# Excluded minors and the relaxation dichotomy
# -------------------------------------------------------------------
def _member(M, cls):
    if cls == "Z":
        return in_Z(M)[0]
    if cls == "R":
        return in_R(M)[0]
    raise PreconditionViolated(f"unknown class {cls!r}", cls=cls)


@dataclass
class ExcludedMinorReport:
    name: str
    cls: str
    in_class: bool
    failures: list = field(default_factory=list)   # (operation, label)

    @property
    def passed(self):
        return not self.in_class and not self.failures


def excluded_minor_check(M, cls):
    M = materialize(M)
    report = ExcludedMinorReport(M.describe(), cls, _member(M, cls))
    for label in M.labels:
        if not _member(delete(M, label), cls):
            report.failures.append(("delete", label))
        if not _member(contract(M, label), cls):
            report.failures.append(("contract", label))
    return report


@dataclass
class DichotomyReport:
    relaxed: Matroid
    uniform_minor: tuple = None     # (name, MinorWitness)
    d_minor: tuple = None           # (contract, delete, DMembership)

    @property
    def certified(self):
        return self.uniform_minor is not None or self.d_minor is not None


def relaxation_of_nonbinary_dichotomy(N, X):
    if binary(N):
        raise PreconditionViolated(f"{N.describe()} is binary")
    if X not in circuit_hyperplanes(N):
        raise PreconditionViolated(f"{N.ground.render(X)} is not a circuit-hyperplane of {N.describe()}")
    report = DichotomyReport(relax(N, X))
    for name in ("U25", "U35"):
        witness = has_minor(report.relaxed, named(name))
        if witness is not None:
            report.uniform_minor = (name, witness)
            break
    if report.relaxed.size >= 8:
        report.d_minor = find_d_minor(report.relaxed)
    return report
