"""
Verification suites. Each suite returns report lines, one assertion per
line, prefixed PASS or FAIL.
"""
import logging
from functools import lru_cache
from itertools import combinations, pairwise

import networkx as nx

from Matroids import constants
from Matroids.catalog import (
    doubly_relaxed_spike,
    named,
    pg_minor_witness,
    section4_base,
    section4_matrix,
    section4_params,
    spike_pair,
    tipless_spike,
)
from Matroids.core import (
    GroundSet,
    Matroid,
    bits,
    coloops,
    connectivity,
    contract,
    delete,
    dual,
    loops,
    minor,
    popcount,
    relabel,
    uniform,
    validate,
)
from Matroids.exceptions import MatroidError
from Matroids.gf2 import (
    contract_column,
    delete_column,
    is_binary,
    is_connected_binary,
    projective_geometry,
    vector_matroid,
)
from Matroids.minors import contains_minor, incidence_graph, isomorphic, minor_witnesses, roundedness_check
from Matroids.relaxed import (
    RelaxedBinaryMatroid,
    circuit_hyperplanes,
    is_circuit_hyperplane,
    lazy_minor,
    materialize,
    relax,
    tighten,
)
from Matroids.sums import (
    is_corank_one_uniform,
    is_rank_one_uniform,
    reconstruct,
    same_shape,
    tree_decompose,
    tree_minor_check,
    twosum,
)

from .classes import (
    binary,
    classify_Z,
    excluded_minor_check,
    in_D,
    in_R,
    in_R_by_minors,
    in_Z,
    in_Z_by_minors,
    matching_cases,
    relaxation_of_nonbinary_dichotomy,
    witness_reconstructs,
)
from .corpus import catalog_members, corpus

logger = logging.getLogger(__name__)

SUITE_NAMES = ("axioms", "lemmas", "excluded-minors", "cross-check", "section4")


class Report:
    def __init__(self, suite):
        self.suite = suite
        self.lines = []

    def check(self, label, ok, detail=None):
        if ok:
            self.lines.append(f"PASS {self.suite}: {label}")
            return True
        line = f"FAIL {self.suite}: {label}"
        if detail is not None:
            line += f" ({detail})"
        logger.warning(line)
        self.lines.append(line)
        return False

    def sweep(self, label, items, predicate):
        """One line for a whole sweep, naming the first counterexample."""
        count = 0
        for item in items:
            count += 1
            try:
                ok = predicate(item)
            except MatroidError as exc:
                return self.check(label, False, f"{_name(item)}: {exc}")
            if not ok:
                return self.check(label, False, f"fails on {_name(item)}")
        return self.check(f"{label} [{count} cases]", True)


def _name(item):
    if isinstance(item, tuple):
        return ", ".join(_name(part) for part in item)
    if isinstance(item, (Matroid, RelaxedBinaryMatroid)):
        return item.describe()
    return str(item)


@lru_cache(maxsize=4)
def _corpus(seed, max_elements):
    return tuple(corpus(seed, max_elements))


def _catalog():
    return catalog_members(16)


def _binary_catalog():
    return [M for M in _catalog() if binary(M)]


def _relaxable_pairs():
    """(binary catalog matroid, circuit-hyperplane) pairs."""
    return [(M, H) for M in _binary_catalog() for H in sorted(circuit_hyperplanes(M))]


def _carry(word, source, target):
    """A subset of source's ground set as a word over target's ground set."""
    return target.ground.subset(label for label in source.ground.labels_of(word) if label in target.ground)


def _triangles(M):
    return sum(1 for circuit in M.circuits if popcount(circuit) == 3)


def _reversed(M):
    """The same matroid with its elements listed in reverse order."""
    n = M.size
    flip = [n - 1 - e for e in range(n)]
    bases = {sum(1 << flip[e] for e in bits(basis)) for basis in M.bases}
    return Matroid(GroundSet(tuple(reversed(M.labels))), bases, M.name)


def components(M):
    """Connected components as words, in order of least element."""
    found = [
        sum(1 << e for kind, e in nodes if kind == "element")
        for nodes in nx.connected_components(incidence_graph(M))
    ]
    return sorted(found, key=lambda word: word & -word)


def is_uniform_pair(M):
    """M is U(n-1,n) + U(1,k) for some n, k >= 1."""
    parts = components(M)
    if len(parts) != 2:
        return False
    for A in parts:
        inside, outside = minor(M, 0, M.full ^ A), minor(M, 0, A)
        if inside.circuits == {inside.full} and outside.r == 1 and not loops(outside):
            return True
    return False


def dichotomy_pairs(pool):
    """Every (non-binary member, circuit-hyperplane) pair of the pool."""
    return [(M, H) for M in pool if not binary(M) for H in sorted(circuit_hyperplanes(M))]


# -------------------------------------------------------------------
# axioms
# -------------------------------------------------------------------
def axioms(seed, max_elements):
    report = Report("axioms")
    catalog = _catalog()
    pool = _corpus(seed, max_elements)

    def revalidates(M):
        try:
            validate(M.bases, M.ground)
        except MatroidError:
            return False
        return True

    report.sweep("catalog matroids satisfy the basis axioms", catalog, revalidates)
    chain = ["MK4", "W3", "Q6", "P6", "U36"]
    counts = [_triangles(named(name)) for name in chain]
    report.check("M(K4), W3, Q6, P6, U36 have 4, 3, 2, 1, 0 triangles", counts == [4, 3, 2, 1, 0], counts)
    report.sweep(
        "each of W3, Q6, P6, U36 relaxes its predecessor",
        pairwise(chain),
        lambda pair: any(relax(named(pair[0]), H) == named(pair[1]) for H in circuit_hyperplanes(named(pair[0]))),
    )
    P6 = named("P6")
    non_spanning = [circuit for circuit in P6.circuits if P6.rank(circuit) < P6.r]
    report.check(
        "P6 has a single non-spanning circuit, a triangle",
        len(non_spanning) == 1 and popcount(non_spanning[0]) == 3,
        len(non_spanning),
    )
    K = named("K")
    report.check("K has seven elements and rank two", (K.size, K.r) == (7, 2), (K.size, K.r))

    report.sweep("r(M) + r(M*) = |E|", pool, lambda M: M.r + dual(M).r == M.size)
    report.sweep(
        "M / e = (M* \\ e)* on the catalog",
        [(M, e) for M in catalog for e in M.labels],
        lambda item: contract(item[0], item[1]) == dual(delete(dual(item[0]), item[1])),
    )
    report.sweep(
        "circuits and cocircuits never meet in one element",
        pool,
        lambda M: all(popcount(C & D) != 1 for C in M.circuits for D in M.cocircuits),
    )
    report.sweep("connectivity is invariant under duality", catalog, lambda M: connectivity(M) == connectivity(dual(M)))

    def representation(M):
        return is_binary(M)[1]

    report.sweep(
        "vector_matroid commutes with column deletion",
        [(M, e) for M in _binary_catalog() for e in M.labels],
        lambda item: vector_matroid(delete_column(representation(item[0]), item[1])) == delete(*item),
    )

    def contracts_like_rows(M):
        A = representation(M)
        basis = min(M.bases, key=lambda word: tuple(bits(word)))
        return all(
            vector_matroid(contract_column(A, label)) == contract(M, label) for label in M.ground.labels_of(basis)
        )

    report.sweep("contracting an identity column drops its row", _binary_catalog(), contracts_like_rows)
    U24 = named("U24")
    report.sweep("binary iff no U24-minor", pool, lambda M: binary(M) == (not contains_minor(M, U24)))
    report.sweep("binary iff the dual is binary", pool, lambda M: binary(M) == binary(dual(M)))

    pairs = _relaxable_pairs()
    report.sweep(
        "tighten undoes relax",
        pairs,
        lambda pair: tighten(relax(pair[0], pair[1]), pair[1]) == pair[0],
    )
    report.sweep(
        "(M')* is M* relaxed at the complement",
        pairs,
        lambda pair: dual(relax(*pair)) == relax(dual(pair[0]), pair[0].full ^ pair[1]),
    )

    def lazy_agrees(pair):
        M, H = pair
        lazy = RelaxedBinaryMatroid(representation(M), (H,))
        explicit = materialize(lazy)
        if explicit != relax(M, H):
            return False
        if any(lazy.rank(word) != explicit.rank(word) for word in range(1 << M.size)):
            return False
        for e in range(M.size):
            bit = 1 << e
            if materialize(lazy_minor(lazy, bit, 0)) != minor(explicit, bit, 0):
                return False
            if materialize(lazy_minor(lazy, 0, bit)) != minor(explicit, 0, bit):
                return False
        return True

    report.sweep("lazy rank oracle and minors match the explicit relaxation", pairs, lazy_agrees)
    return report.lines


# -------------------------------------------------------------------
# lemmas
# -------------------------------------------------------------------
def _kahn_holds(pair):
    M, X = pair
    relaxed = relax(M, X)
    if dual(relaxed) != relax(dual(M), M.full ^ X):
        return False
    for e in range(M.size):
        label = M.labels[e]
        bit = 1 << e
        if X & bit:
            if delete(relaxed, label) != delete(M, label):
                return False
            if not loops(M) & bit:
                shrunk = contract(M, label)
                if contract(relaxed, label) != relax(shrunk, _carry(X ^ bit, M, shrunk)):
                    return False
        else:
            if contract(relaxed, label) != contract(M, label):
                return False
            if not coloops(M) & bit:
                shrunk = delete(M, label)
                if delete(relaxed, label) != relax(shrunk, _carry(X, M, shrunk)):
                    return False
    return True


def _relaxation_keeps_connectivity(pair):
    M, X = pair
    before, after = connectivity(M), connectivity(relax(M, X))
    if before.is_connected and not after.is_connected:
        return False
    return not before.is_three_connected or after.is_three_connected


def _whirl_rims_inside(pair):
    """Every whirl minor of a relaxation has its rim inside X and no spoke in X."""
    M, X = pair
    relaxed = relax(M, X)
    inside = set(relaxed.ground.labels_of(X))
    for r in (3, 4):
        W = named(f"whirl{r}")
        if W.size > relaxed.size:
            continue
        rim = set(W.labels[:r])
        for witness in minor_witnesses(relaxed, W):
            for source, target in witness.iso.items():
                if (source in rim) != (target in inside):
                    return False
    return True


def _tree_round_trip(M):
    T = tree_decompose(M)
    if T.problems():
        return False
    if isomorphic(reconstruct(T), M) is None:
        return False
    return same_shape(T, tree_decompose(_reversed(M)))


def _single_nonbinary_node(M):
    T = tree_decompose(M)
    hard = [i for i, node in enumerate(T.nodes) if not binary(node)]
    if len(hard) != 1:
        return False
    graph = T.graph()
    centre = hard[0]
    for i, node in enumerate(T.nodes):
        if i == centre:
            continue
        if not (is_rank_one_uniform(node) or is_corank_one_uniform(node)):
            return False
        if not graph.has_edge(i, centre):
            return False
    return True


def lemmas(seed, max_elements):
    report = Report("lemmas")
    pool = _corpus(seed, max_elements)
    pairs = _relaxable_pairs()

    report.sweep("relaxation commutes with minors away from the coloop case", pairs, _kahn_holds)
    report.sweep(
        "relaxing a connected binary matroid gives a non-binary one",
        [pair for pair in pairs if connectivity(pair[0]).is_connected],
        lambda pair: not binary(relax(*pair)),
    )
    report.sweep("relaxation keeps 2- and 3-connectivity", pairs, _relaxation_keeps_connectivity)
    report.sweep(
        "whirl rims of a relaxation lie in the relaxed set",
        [pair for pair in pairs if pair[0].size <= 10],
        _whirl_rims_inside,
    )

    binaries = _binary_catalog()

    def binary_twosum(pair):
        M1, M2 = pair
        M2 = relabel(M2, {label: f"{label}'" for label in M2.labels})
        for p1 in M1.labels:
            for p2 in M2.labels:
                try:
                    glued = twosum(M1, M2, p1, p2)
                except MatroidError:
                    continue
                return binary(glued)
        return True

    report.sweep(
        "2-sums of binary matroids are binary",
        [(M1, M2) for M1, M2 in combinations(binaries, 2) if M1.size + M2.size - 2 <= 12],
        binary_twosum,
    )
    U24 = named("U24")
    R6 = twosum(uniform(2, 4, "abcp"), uniform(2, 4, ("d", "e", "f", "q")), "p", "q")
    report.check("U24 (+)2 U24 is R6", isomorphic(R6, named("R6")) is not None)
    for m, target in ((1, "U25"), (2, "U35")):
        N = twosum(uniform(2, 4, "abcp"), uniform(m, 3, ("d", "e", "q")), "p", "q")
        hyperplanes = sorted(circuit_hyperplanes(N))
        report.check(
            f"relaxing U24 (+)2 U{m}3 gives {target}",
            len(hyperplanes) == 1 and isomorphic(relax(N, hyperplanes[0]), named(target)) is not None,
        )

    disconnected = [M for M in pool if not connectivity(M).is_connected]
    report.sweep(
        "a disconnected matroid has a circuit-hyperplane iff it is U(n-1,n) + U(1,k)",
        disconnected,
        lambda M: bool(circuit_hyperplanes(M)) == is_uniform_pair(M),
    )
    report.sweep(
        "relaxing a disconnected matroid gives a binary one",
        [(M, H) for M in disconnected for H in sorted(circuit_hyperplanes(M))],
        lambda pair: binary(relax(*pair)),
    )
    sporadic = [named("U24+U11"), named("U24+U01")]

    def disconnected_excluded(M):
        expected = any(isomorphic(M, S) is not None for S in sporadic)
        return all(excluded_minor_check(M, cls).passed == expected for cls in ("Z", "R"))

    report.sweep("the only disconnected excluded minors are U24+U11 and U24+U01", disconnected, disconnected_excluded)

    connected = [M for M in pool if M.size and connectivity(M).is_connected]
    families = {
        "{U24}": [U24],
        "{M(K4), U24}": [named("MK4"), U24],
        "{W3, P6, Q6, U36}": [named(name) for name in ("W3", "P6", "Q6", "U36")],
    }
    for label, family in families.items():
        found = roundedness_check(family, connected)
        report.check(
            f"{label} is 1-rounded [{found.checked} matroids]",
            found.ok,
            found.violations and f"{found.violations[0][0].describe()} at {found.violations[0][1]}",
        )
    counterexample = roundedness_check([named("MK4")], [named("MK4x")])
    report.check("{M(K4)} is not 1-rounded: its free extension misses x", not counterexample.ok)

    solid = [
        M for M in pool
        if M.r >= 3 and M.size - M.r >= 3 and connectivity(M).is_three_connected
    ]
    uniforms = [named("U25"), named("U35")]
    small_excluded = [named(name) for name in ("P6", "Q6", "U36")]
    report.sweep(
        "U25-minor iff U35-minor iff a P6, Q6 or U36 minor",
        solid,
        lambda M: len({contains_minor(M, uniforms[0]), contains_minor(M, uniforms[1]),
                       any(contains_minor(M, N) for N in small_excluded)}) == 1,
    )
    wheels = [named(name) for name in ("W3", "Q6", "P6", "U36")]
    report.sweep(
        "3-connected binary matroids have M(K4); others have W3, Q6, P6 or U36",
        solid,
        lambda M: contains_minor(M, named("MK4")) if binary(M) else any(contains_minor(M, N) for N in wheels),
    )

    report.sweep("tree decompositions rebuild M and ignore element order", connected, _tree_round_trip)
    T = tree_decompose(named("R6"))
    report.check(
        "R6 splits into two U24 nodes",
        len(T.nodes) == 2 and all(isomorphic(node, U24) is not None for node in T.nodes),
    )
    T = tree_decompose(named("K"))
    kinds = sorted((node.size, node.r) for node in T.nodes)
    report.check("K splits into U24 and three U13 nodes", kinds == [(3, 1), (3, 1), (3, 1), (4, 2)], kinds)
    report.sweep(
        "2-sums along tree paths are minors",
        [named("R6"), named("K")],
        lambda M: all(found for _, _, found in tree_minor_check(tree_decompose(M), M)),
    )
    blockers = [named("R6"), named("U24+U01"), named("U24+U11")]
    report.sweep(
        "without R6 or the sporadic sums the tree has one non-binary node",
        [M for M in connected if not binary(M) and not any(contains_minor(M, N) for N in blockers)],
        _single_nonbinary_node,
    )

    def dichotomy(pair):
        return relaxation_of_nonbinary_dichotomy(*pair).certified

    report.sweep(
        "relaxing a non-binary matroid yields U25, U35 or a member of D",
        dichotomy_pairs(pool),
        dichotomy,
    )
    return report.lines


# -------------------------------------------------------------------
# excluded minors and spikes
# -------------------------------------------------------------------
def excluded_minors(seed, max_elements):
    report = Report("excluded-minors")
    lists = (("Z", constants.excluded_minors_Z), ("R", constants.excluded_minors_R))
    for cls, names in lists:
        for name in names + ["dspike4"]:
            found = excluded_minor_check(named(name), cls)
            detail = None
            if not found.passed:
                detail = "in class" if found.in_class else f"{found.failures[0][0]} {found.failures[0][1]} leaves the class"
            report.check(f"{name} is an excluded minor for {cls}", found.passed, detail)

    for r in (4, 6):
        spike = tipless_spike(r)
        X, Y = spike_pair(r)
        hyperplanes = circuit_hyperplanes(spike)
        report.check(f"spike{r} has the circuit-hyperplanes {spike.ground.render(X)} and its complement",
                     X in hyperplanes and Y in hyperplanes)
    spike = tipless_spike(4)
    report.check("spike4 is binary and connected", binary(spike) and connectivity(spike).is_connected)
    doubled = doubly_relaxed_spike(4)
    report.check("dspike4 has two more bases than spike4", len(doubled.bases) == len(spike.bases) + 2)
    membership = in_D(doubled)
    X, _ = spike_pair(4)
    report.check("dspike4 is in D along e2..e5", membership is not None and X in (membership.X, membership.Y))
    report.check("dspike6 is in D", in_D(doubly_relaxed_spike(6)) is not None)
    report.check("W3 is not in D", in_D(named("W3")) is None)
    return report.lines


# -------------------------------------------------------------------
# cross-check
# -------------------------------------------------------------------
def cross_check(seed, max_elements):
    report = Report("cross-check")
    pool = _corpus(seed, max_elements)
    report.check(f"corpus has at least 500 isomorphism classes [{len(pool)}]", len(pool) >= 500 or max_elements < 10)
    report.sweep("in_Z agrees with the excluded-minor scan", pool, lambda M: in_Z(M)[0] == in_Z_by_minors(M))
    report.sweep("in_R agrees with the excluded-minor scan", pool, lambda M: in_R(M)[0] == in_R_by_minors(M))
    report.sweep("R is contained in Z", pool, lambda M: not in_R(M)[0] or in_Z(M)[0])

    def closed(cls):
        member = in_Z if cls == "Z" else in_R

        def holds(M):
            if not member(M)[0]:
                return True
            if not member(dual(M))[0]:
                return False
            return all(member(delete(M, e))[0] and member(contract(M, e))[0] for e in M.labels)

        return holds

    report.sweep("Z is closed under minors and duality", pool, closed("Z"))
    report.sweep("R is closed under minors and duality", pool, closed("R"))

    def classified(M):
        if binary(M):
            return True
        if not in_Z(M)[0]:
            return not matching_cases(M)
        result = classify_Z(M)
        return result.case != "Unclassified" and witness_reconstructs(M, result)

    report.sweep("classify_Z witnesses rebuild every non-binary member of Z", pool, classified)
    return report.lines


# -------------------------------------------------------------------
# section4
# -------------------------------------------------------------------
def section4(seed, max_elements):
    report = Report("section4")
    params = section4_params(3)
    report.check("k=3 gives n=12 and t=10", (params.n, params.t) == (12, 10), (params.n, params.t))
    report.check("beta and alpha sums agree mod 2", sum(params.beta) % 2 == sum(params.alpha) % 2)
    base = section4_base(3)
    even = [base.labels[i] for i, column in enumerate(base.columns) if column.bit_count() % 2 == 0]
    report.check("exactly columns 13..24 have zero coordinate sum", even == [str(i) for i in range(13, 25)], even)
    full = base.ground.full
    X = (1 << params.n) - 1
    Y = full ^ X
    r = base.rank()
    report.check("13..24 is a circuit-hyperplane of M[Z]", is_circuit_hyperplane(base.rank, Y, full, r))
    report.check("1..12 is a circuit-hyperplane of M[Z]", is_circuit_hyperplane(base.rank, X, full, r))
    report.check("M[Z] is connected", is_connected_binary(base))
    M = section4_matrix(3)
    report.check("the doubly relaxed M[Z] is in D", in_D(M) is not None)
    try:
        witness = pg_minor_witness(M, 3)
    except MatroidError as exc:
        report.check("the doubly relaxed M[Z] has a PG(2,2)-minor", False, str(exc))
        return report.lines
    report.check("the doubly relaxed M[Z] has a PG(2,2)-minor", True)
    fano = vector_matroid(projective_geometry(3))
    restricted = materialize(lazy_minor(RelaxedBinaryMatroid(base), witness.contract, witness.delete))
    report.check("the same minor of M[Z] is PG(2,2)", isomorphic(fano, restricted) is not None)
    return report.lines


SUITES = {
    "axioms": axioms,
    "lemmas": lemmas,
    "excluded-minors": excluded_minors,
    "cross-check": cross_check,
    "section4": section4,
}


def run_suite(name, seed=0, max_elements=10):
    logger.info("running suite %s (seed=%d, max_elements=%d)", name, seed, max_elements)
    return SUITES[name](seed, max_elements)
