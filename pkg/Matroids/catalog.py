"""
Named matroids and families: uniform matroids, M(K4) and its relaxation
chain, R6, K, the Fano plane, wheels and whirls, tipless binary spikes, and
the relaxed matrix Z whose doubly relaxed matroid has a PG(k-1,2)-minor.
"""
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import chain, combinations

from django.conf import settings

from . import constants
from .core import GroundSet, Matroid, bits, derived, direct_sum, dual, series_parallel_extend, relabel, uniform
from .exceptions import (
    BadRank,
    ConstraintUnsatisfiable,
    GroundSetOverflow,
    NotACircuitHyperplane,
    UnknownName,
    WitnessNotFound,
)
from .gf2 import BinaryMatrix, graphic, projective_geometry, vector_matroid
from .minors import MinorWitness, isomorphic
from .relaxed import RelaxedBinaryMatroid, lazy_minor, materialize, relax, relax_lazy
from .sums import twosum

logger = logging.getLogger(__name__)


# -------------------------------------------------------------------
# Families
# -------------------------------------------------------------------
def wheel(r):
    if r < 3:
        raise BadRank("wheels need rank at least 3", r=r)
    rim = [(i, i % r + 1) for i in range(1, r + 1)]
    spokes = [(0, i) for i in range(1, r + 1)]
    return graphic(rim + spokes, name=f"wheel{r}")


def whirl(r):
    """The wheel with its rim (the first r elements) relaxed."""
    return relax(wheel(r), (1 << r) - 1).renamed(f"whirl{r}")


def free_extension(M, label="x"):
    """Add label in general position: I + x is independent for every non-spanning independent I."""
    new = 1 << M.size
    bases = set(M.bases)
    for basis in M.bases:
        for f in bits(basis):
            bases.add(basis ^ 1 << f | new)
    return derived(Matroid(GroundSet(M.labels + (label,)), bases, f"{M.name}+free" if M.name else None))


def _spike_matrix(r):
    labels = tuple(f"e{i}" for i in range(1, 2 * r + 1))
    everything = (1 << r) - 1
    columns = [1 << i for i in range(r)] + [everything ^ 1 << j for j in range(r)]
    return BinaryMatrix.from_columns(columns, r, GroundSet(labels))


def spike_pair(r):
    X = sum(1 << i for i in range(1, r + 1))          # e2 .. e(r+1)
    return X, ((1 << 2 * r) - 1) ^ X


def _check_spike_rank(r):
    if r < 4 or r % 2:
        raise BadRank(f"tipless spikes here need even rank >= 4, got {r}", r=r)
    if 2 * r > settings.MATROID_LAZY_LIMIT:
        raise GroundSetOverflow(f"spike of rank {r} has {2 * r} elements", size=2 * r)


def tipless_spike(r):
    """M_r = M[I_r | J_r - I_r], explicit when it fits."""
    _check_spike_rank(r)
    matrix = _spike_matrix(r)
    if 2 * r <= settings.MATROID_EXPLICIT_LIMIT:
        return vector_matroid(matrix, f"spike{r}")
    return RelaxedBinaryMatroid(matrix, (), f"spike{r}")


def doubly_relaxed_spike(r):
    _check_spike_rank(r)
    X, Y = spike_pair(r)
    spike = tipless_spike(r)
    if isinstance(spike, Matroid):
        return relax(relax(spike, X), Y).renamed(f"dspike{r}")
    return relax_lazy(relax_lazy(spike, X), Y)


# -------------------------------------------------------------------
# Named matroids
# -------------------------------------------------------------------
def _k4():
    return graphic(constants.k4_edges, name="MK4")


def _k4_chain(steps):
    M = _k4()
    for triangle in ("abd", "ace", "bcf", "def")[:steps]:
        M = relax(M, M.ground.subset(triangle))
    return M


def _k():
    extended = series_parallel_extend(uniform(2, 4), {"a": (0, 1), "b": (0, 1), "c": (0, 1)})
    return relabel(extended, {"ap1": "e", "bp1": "f", "cp1": "g"})


def _fano():
    return vector_matroid(projective_geometry(3), "F7")


_BUILDERS = {
    "MK4": _k4,
    "W3": lambda: _k4_chain(1),
    "Q6": lambda: _k4_chain(2),
    "P6": lambda: _k4_chain(3),
    "U36": lambda: _k4_chain(4),
    "R6": lambda: twosum(uniform(2, 4, "abcp"), uniform(2, 4, ("d", "e", "f", "q")), "p", "q"),
    "K": _k,
    "K*": lambda: dual(_k()),
    "F7": _fano,
    "F7-": lambda: relax(_fano(), 0b111),
    "wheel3": lambda: wheel(3),
    "wheel4": lambda: wheel(4),
    "wheel5": lambda: wheel(5),
    "whirl3": lambda: whirl(3),
    "whirl4": lambda: whirl(4),
    "whirl5": lambda: whirl(5),
    "spike4": lambda: tipless_spike(4),
    "spike6": lambda: tipless_spike(6),
    "dspike4": lambda: doubly_relaxed_spike(4),
    "dspike6": lambda: doubly_relaxed_spike(6),
    "U24+U11": lambda: direct_sum(uniform(2, 4), uniform(1, 1, ("e",))),
    "U24+U01": lambda: direct_sum(uniform(2, 4), uniform(0, 1, ("e",))),
    "MK4x": lambda: free_extension(_k4(), "x"),
}

_UNIFORM = re.compile(r"^U(?:(\d)(\d)|(\d+),(\d+))$")


def canonical_name(name):
    key = name.strip().replace("_{", "").replace("_", "").replace("{", "").replace("}", "")
    key = constants.name_aliases.get(key, key)
    match = _UNIFORM.match(key)
    if match and key not in _BUILDERS:
        m, n = (int(group) for group in match.groups() if group is not None)
        return f"U{m}{n}" if m < 10 and n < 10 else f"U{m},{n}"
    if key not in _BUILDERS:
        raise UnknownName(f"unknown matroid {name!r}", name=name)
    return key


@lru_cache(maxsize=None)
def named(name):
    key = canonical_name(name)
    if key in _BUILDERS:
        built = _BUILDERS[key]()
    else:
        m, n = (int(group) for group in _UNIFORM.match(key).groups() if group is not None)
        built = uniform(m, n)
    if isinstance(built, Matroid):
        return built.renamed(key)
    return RelaxedBinaryMatroid(built.base, built.relaxed_sets, key)


# -------------------------------------------------------------------
# The relaxed matrix Z
# -------------------------------------------------------------------
@dataclass(frozen=True)
class SpikeZParams:
    k: int
    n: int
    t: int
    alpha: tuple
    beta: tuple
    gamma: int


def _core_block(k):
    """B = [[A, I_k], [I_p, 0]] as t columns over t rows; A is PG(k-1,2)."""
    A = projective_geometry(k).columns
    p = len(A)
    first = [A[i] | 1 << (k + i) for i in range(p)]
    last = [1 << j for j in range(k)]
    return first + last


def section4_params(k):
    if k < 1 or k % 2 == 0:
        raise BadRank(f"the matrix Z needs odd k, got {k}", k=k)
    n = 2 ** k + k + 1
    t = n - 2
    block = _core_block(k)
    alpha = tuple(column.bit_count() % 2 for column in block)
    beta = tuple(sum(column >> j & 1 for column in block) % 2 for j in range(t))
    gamma = (1 + sum(beta)) % 2
    return SpikeZParams(k, n, t, alpha, beta, gamma)


def section4_base(k):
    """The binary matrix Z itself (rank n, 2n columns labelled 1..2n)."""
    params = section4_params(k)
    n, t = params.n, params.t
    if 2 * n > settings.MATROID_LAZY_LIMIT:
        raise GroundSetOverflow(f"Z has {2 * n} columns for k={k}", size=2 * n)
    low, high = 1 << (n - 2), 1 << (n - 1)   # rows n-1 and n
    columns = [1 << i for i in range(n - 1)]
    columns.append((1 << (n - 1)) - 1)
    beta_column = sum(1 << j for j in range(t) if params.beta[j])
    columns.append(beta_column | (low if params.gamma else 0) | high)
    for column, alpha in zip(_core_block(k), params.alpha):
        columns.append(column | (0 if alpha else low) | high)
    columns.append(low | high)
    ground = GroundSet(tuple(str(i) for i in range(1, 2 * n + 1)))
    return BinaryMatrix.from_columns(columns, n, ground)


def section4_matrix(k):
    """M[Z] with {n+1..2n} and {1..n} relaxed."""
    base = section4_base(k)
    n = base.height
    X = (1 << n) - 1
    Y = base.ground.full ^ X
    even = sum(1 << i for i, column in enumerate(base.columns) if column.bit_count() % 2 == 0)
    if even != Y:
        raise ConstraintUnsatisfiable("zero-sum columns of Z are not exactly n+1..2n", word=even)
    try:
        return relax_lazy(relax_lazy(RelaxedBinaryMatroid(base, (), f"Z{k}"), Y), X)
    except NotACircuitHyperplane as exc:
        raise ConstraintUnsatisfiable(f"Z for k={k}: {exc}") from exc


def _witness_for(M, C, D, target):
    minor = materialize(lazy_minor(M, C, D))
    iso = isomorphic(target, minor)
    if iso is None:
        return None
    return MinorWitness(C, D, iso)


def _representatives(M, C, survivors):
    """One element per parallel class of M/C among survivors, loops skipped."""
    base = M.rank(C)
    chosen = []
    for e in survivors:
        bit = 1 << e
        if M.rank(C | bit) == base:
            continue
        if any(M.rank(C | bit | 1 << f) - base == 1 for f in chosen):
            continue
        chosen.append(e)
    return chosen


def pg_minor_witness(M, k):
    """A MinorWitness of PG(k-1,2) in the doubly relaxed Z."""
    params = section4_params(k)
    n, p = params.n, 2 ** k - 1
    target = vector_matroid(projective_geometry(k), f"PG({k - 1},2)")
    full = M.full
    # Contract e_(k+1)..e_(n-1) and column 2n, keep the PG block of the core.
    C = sum(1 << i for i in range(k, n - 1)) | 1 << (2 * n - 1)
    keep = sum(1 << (n + 1 + i) for i in range(p))
    witness = _witness_for(M, C, full ^ C ^ keep, target)
    if witness is not None:
        return witness
    logger.info("structured PG guess failed for k=%d, searching", k)
    budget = settings.MATROID_PG_WITNESS_BUDGET
    size = n - k
    inside = combinations(range(n), size)
    mixed = (chosen for chosen in combinations(range(2 * n), size) if max(chosen) >= n)
    tried = 0
    for chosen in chain(inside, mixed):
        C = sum(1 << e for e in chosen)
        if M.rank(C) != size:
            continue
        tried += 1
        if tried > budget:
            break
        survivors = [e for e in range(2 * n) if not C >> e & 1]
        classes = _representatives(M, C, survivors)
        if len(classes) != p:
            continue
        keep = sum(1 << e for e in classes)
        witness = _witness_for(M, C, full ^ C ^ keep, target)
        if witness is not None:
            return witness
    raise WitnessNotFound(f"no PG({k - 1},2)-minor found after {tried} contraction sets", tried=tried)
