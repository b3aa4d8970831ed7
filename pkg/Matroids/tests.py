from io import StringIO

from django.core.cache import caches
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings, tag
from hypothesis import given, settings as hypothesis_settings, strategies as st

from . import constants
from .catalog import (
    canonical_name,
    doubly_relaxed_spike,
    free_extension,
    named,
    pg_minor_witness,
    section4_base,
    section4_params,
    section4_matrix,
    spike_pair,
    tipless_spike,
    wheel,
    whirl,
)
from .core import (
    GroundSet,
    Matroid,
    coloops,
    connectivity,
    contract,
    default_labels,
    delete,
    direct_sum,
    dual,
    empty,
    loops,
    minor,
    relabel,
    series_parallel_extend,
    uniform,
    validate,
)
from .exceptions import (
    BadRank,
    BasepointDegenerate,
    EmptyBases,
    ExchangeFailure,
    GroundSetOverflow,
    InvalidLabel,
    InvalidTree,
    LabelCollision,
    MatroidSyntaxError,
    MixedCardinality,
    NotACircuitHyperplane,
    NotAFreeBasis,
    NotConnected,
    PreconditionViolated,
    UnknownName,
)
from .fileformat import emit, load, parse
from .gf2 import (
    BinaryMatrix,
    contract_column,
    delete_column,
    gf2_rank,
    graphic,
    identity,
    is_binary,
    is_connected_binary,
    projective_geometry,
    vector_matroid,
)
from .minors import (
    contains_minor,
    fingerprint,
    has_minor,
    has_minor_using,
    is_fragile,
    isomorphic,
    incidence_graph,
    roundedness_check,
)
from .relaxed import (
    RelaxedBinaryMatroid,
    circuit_hyperplanes,
    free_bases,
    lazy_minor,
    materialize,
    relax,
    relax_lazy,
    tighten,
)
from .sums import TreeDecomposition, reconstruct, same_shape, tree_decompose, tree_minor_check, twosum

SPIKE4 = """matroid spike4
elements e1 e2 e3 e4 e5 e6 e7 e8
gf2 4 8
10000111
01001011
00101101
00011110
"""


@st.composite
def binary_matrices(draw, max_height=4, max_width=7):
    height = draw(st.integers(1, max_height))
    width = draw(st.integers(1, max_width))
    rows = draw(st.lists(st.integers(0, (1 << width) - 1), min_size=height, max_size=height))
    return BinaryMatrix(height, tuple(rows), GroundSet(default_labels(width)))


def word(M, labels):
    return M.ground.subset(labels)


@override_settings(MATROID_VALIDATE_RESULTS=True)
class GroundSetTests(SimpleTestCase):
    def test_repeated_labels(self):
        with self.assertRaises(LabelCollision):
            GroundSet(("a", "b", "a"))

    def test_dotted_label(self):
        with self.assertRaises(InvalidLabel):
            GroundSet(("a.b",))

    def test_render(self):
        self.assertEqual(GroundSet(("a", "b", "c")).render(0b101), "ac")
        self.assertEqual(GroundSet(("e1", "e2", "e10")).render(0b101), "e1.e10")


@override_settings(MATROID_VALIDATE_RESULTS=True)
class MatroidTests(SimpleTestCase):
    def test_uniform(self):
        U24 = uniform(2, 4)
        self.assertEqual(len(U24.bases), 6)
        self.assertEqual(U24.r, 2)
        self.assertEqual(len(U24.circuits), 4)
        self.assertTrue(all(circuit.bit_count() == 3 for circuit in U24.circuits))

    def test_validate_rejects_bad_families(self):
        with self.assertRaises(EmptyBases):
            validate([], "ab")
        with self.assertRaises(MixedCardinality):
            validate([0b1, 0b11], "ab")
        with self.assertRaises(ExchangeFailure) as caught:
            validate([0b0011, 0b1100], "abcd")
        self.assertEqual(caught.exception.first, 0b0011)

    def test_overflow(self):
        with self.assertRaises(GroundSetOverflow):
            uniform(1, 17)

    def test_rank_and_closure(self):
        MK4 = named("MK4")
        self.assertEqual(MK4.rank(word(MK4, "abd")), 2)
        self.assertEqual(MK4.closure(word(MK4, "ab")), word(MK4, "abd"))
        self.assertEqual(MK4.r + dual(MK4).r, MK4.size)

    def test_duality(self):
        self.assertEqual(dual(uniform(2, 4)), uniform(2, 4))
        self.assertEqual(dual(named("U24")).name, "U24*")
        for name in ("MK4", "W3", "K", "R6"):
            M = named(name)
            for label in M.labels:
                self.assertEqual(contract(M, label), dual(delete(dual(M), label)))

    def test_loop_and_coloop_minors(self):
        M = named("U24+U01")
        self.assertEqual(loops(M), 1 << 4)
        self.assertEqual(contract(M, "e"), delete(M, "e"))
        N = named("U24+U11")
        self.assertEqual(coloops(N), 1 << 4)
        self.assertEqual(delete(N, "e"), uniform(2, 4))

    def test_minor_sets_must_be_disjoint(self):
        with self.assertRaises(PreconditionViolated):
            minor(uniform(2, 4), 0b1, 0b11)

    def test_direct_sum_label_collision(self):
        with self.assertRaises(LabelCollision):
            direct_sum(uniform(2, 4), uniform(1, 2))

    def test_connectivity(self):
        self.assertTrue(connectivity(uniform(2, 4)).is_three_connected)
        report = connectivity(named("R6"))
        self.assertTrue(report.is_connected)
        self.assertFalse(report.is_three_connected)
        self.assertEqual(report.witness_separation[1], 2)
        report = connectivity(named("U24+U11"))
        self.assertFalse(report.is_connected)
        self.assertEqual(report.witness_separation[1], 1)
        for name in ("MK4", "R6", "K", "F7"):
            self.assertEqual(connectivity(named(name)), connectivity(dual(named(name))))

    def test_series_parallel_extend(self):
        M = series_parallel_extend(uniform(2, 4), {"a": (1, 0), "b": (0, 2)})
        self.assertEqual(M.labels, ("a", "b", "c", "d", "as1", "bp1", "bp2"))
        self.assertEqual(M.r, 3)
        self.assertEqual(M.rank(word(M, ["b", "bp1", "bp2"])), 1)

    def test_series_extension_dualises_to_parallel(self):
        for base in (uniform(2, 4), named("MK4")):
            series = series_parallel_extend(base, {"a": (1, 0)})
            parallel = series_parallel_extend(dual(base), {"a": (0, 1)})
            self.assertEqual(dual(series), relabel(parallel, {"ap1": "as1"}))

    def test_direct_sum_with_empty(self):
        for name in ("U24", "MK4", "P6"):
            M = named(name)
            self.assertEqual(direct_sum(M, empty()), M)
            self.assertEqual(direct_sum(empty(), M), M)


@override_settings(MATROID_VALIDATE_RESULTS=True)
class GF2Tests(SimpleTestCase):
    def test_rank(self):
        self.assertEqual(gf2_rank([0b011, 0b101, 0b110]), 2)
        self.assertEqual(identity(3).rank(), 3)

    def test_fano(self):
        F7 = vector_matroid(projective_geometry(3))
        self.assertEqual(F7.size, 7)
        self.assertEqual(len(F7.bases), 28)
        self.assertTrue(is_binary(F7)[0])

    def test_graphic_k4(self):
        self.assertEqual(len(graphic(constants.k4_edges).bases), 16)

    def test_uniform_is_not_binary(self):
        self.assertEqual(is_binary(uniform(2, 4)), (False, None))
        self.assertTrue(is_binary(uniform(1, 3))[0])

    def test_matrix_minors(self):
        A = projective_geometry(3)
        F7 = vector_matroid(A)
        for label in A.labels:
            self.assertEqual(vector_matroid(delete_column(A, label)), delete(F7, label))
            self.assertEqual(vector_matroid(contract_column(A, label)), contract(F7, label))

    def test_connected_binary(self):
        self.assertFalse(is_connected_binary(identity(3)))
        self.assertTrue(is_connected_binary(projective_geometry(3)))

    @hypothesis_settings(max_examples=40, deadline=None)
    @given(binary_matrices())
    def test_vector_matroid_ranks(self, A):
        M = vector_matroid(A)
        validate(M.bases, M.ground)
        for subset in range(1 << A.width):
            self.assertEqual(M.rank(subset), A.rank(subset))

    @hypothesis_settings(max_examples=40, deadline=None)
    @given(binary_matrices())
    def test_binarity_is_self_dual(self, A):
        M = vector_matroid(A)
        self.assertTrue(is_binary(M)[0])
        self.assertTrue(is_binary(dual(M))[0])


@override_settings(MATROID_VALIDATE_RESULTS=True)
class RelaxationTests(SimpleTestCase):
    def test_circuit_hyperplanes(self):
        MK4 = named("MK4")
        found = {MK4.ground.render(H) for H in circuit_hyperplanes(MK4)}
        self.assertEqual(found, {"abd", "ace", "bcf", "def"})
        self.assertEqual(circuit_hyperplanes(uniform(2, 4)), frozenset())

    def test_relax_and_tighten(self):
        MK4, W3 = named("MK4"), named("W3")
        relaxed = relax(MK4, word(MK4, "abd"))
        self.assertEqual(len(relaxed.bases), 17)
        self.assertEqual(relaxed, W3)
        self.assertIn(word(W3, "abd"), {fb.B for fb in free_bases(W3)})
        self.assertEqual(tighten(W3, word(W3, "abd")), MK4)
        self.assertEqual(tighten(named("F7-"), 0b111), named("F7"))

    def test_relax_rejects_non_circuit_hyperplane(self):
        with self.assertRaises(NotACircuitHyperplane):
            relax(uniform(2, 4), 0b111)
        with self.assertRaises(NotAFreeBasis):
            tighten(named("MK4"), 0b111)

    def test_free_bases_need_a_complement(self):
        self.assertEqual(free_bases(uniform(3, 3)), ())

    def test_relaxation_commutes_with_duality(self):
        MK4 = named("MK4")
        for H in circuit_hyperplanes(MK4):
            self.assertEqual(dual(relax(MK4, H)), relax(dual(MK4), MK4.full ^ H))

    def test_lazy_matches_explicit(self):
        F7 = named("F7")
        lazy = RelaxedBinaryMatroid(is_binary(F7)[1], (0b111,))
        explicit = materialize(lazy)
        self.assertEqual(explicit, named("F7-"))
        for subset in range(1 << 7):
            self.assertEqual(lazy.rank(subset), explicit.rank(subset))
        for e in range(7):
            self.assertEqual(materialize(lazy_minor(lazy, 1 << e, 0)), minor(explicit, 1 << e, 0))
            self.assertEqual(materialize(lazy_minor(lazy, 0, 1 << e)), minor(explicit, 0, 1 << e))
        self.assertIs(lazy_minor(lazy, 0, 0), lazy)

    def test_lazy_minor_of_double_relaxation(self):
        spike = tipless_spike(4)
        X, Y = spike_pair(4)
        lazy = relax_lazy(relax_lazy(RelaxedBinaryMatroid(is_binary(spike)[1]), X), Y)
        self.assertEqual(materialize(lazy), doubly_relaxed_spike(4))
        e2 = 1 << 1
        contracted = lazy_minor(lazy, e2, 0)
        self.assertIsInstance(contracted, RelaxedBinaryMatroid)
        self.assertEqual(len(contracted.relaxed_sets), 1)
        self.assertEqual(materialize(contracted), contract(doubly_relaxed_spike(4), "e2"))

    def test_lazy_minor_overlap(self):
        lazy = RelaxedBinaryMatroid(projective_geometry(3))
        with self.assertRaises(PreconditionViolated):
            lazy_minor(lazy, 0b1, 0b1)


@override_settings(MATROID_VALIDATE_RESULTS=True)
class MinorTests(SimpleTestCase):
    def test_isomorphism(self):
        self.assertIsNotNone(isomorphic(uniform(2, 4), dual(uniform(2, 4))))
        self.assertIsNone(isomorphic(named("P6"), named("Q6")))
        R6 = twosum(uniform(2, 4, "abcp"), uniform(2, 4, ("d", "e", "f", "q")), "p", "q")
        self.assertIsNotNone(isomorphic(R6, named("R6")))

    def test_isomorphism_maps_bases(self):
        MK4 = named("MK4")
        shuffled = relabel(MK4, dict(zip(MK4.labels, ("u", "z", "w", "y", "v", "x"))))
        iso = isomorphic(MK4, shuffled)
        self.assertIsNotNone(iso)
        self.assertEqual(relabel(MK4, iso), shuffled)
        graph = incidence_graph(MK4)
        self.assertEqual(graph.number_of_nodes(), MK4.size + len(MK4.circuits))
        self.assertIsNone(isomorphic(named("W3"), MK4))

    def test_has_minor_is_dual_invariant(self):
        pairs = [("W3", "U24"), ("F7", "MK4"), ("MK4", "U24"), ("P6", "U24"), ("R6", "MK4"), ("K", "U25")]
        for big, small in pairs:
            M, N = named(big), named(small)
            self.assertEqual(
                has_minor(M, N) is None,
                has_minor(dual(M), dual(N)) is None,
                f"{big} / {small}",
            )

    def test_minor_relation_is_transitive(self):
        chains = [("F7", "MK4", "U23"), ("P6", "U24", "U23"), ("wheel4", "MK4", "U13")]
        for top, middle, bottom in chains:
            M, N, L = named(top), named(middle), named(bottom)
            self.assertIsNotNone(has_minor(M, N), f"{top} / {middle}")
            self.assertIsNotNone(has_minor(N, L), f"{middle} / {bottom}")
            self.assertIsNotNone(has_minor(M, L), f"{top} / {bottom}")

    def test_has_minor(self):
        W3, U24 = named("W3"), named("U24")
        witness = has_minor(W3, U24)
        self.assertIsNotNone(witness)
        self.assertFalse(witness.contract & witness.delete)
        self.assertIsNotNone(isomorphic(U24, minor(W3, witness.contract, witness.delete)))
        self.assertIsNone(has_minor(named("F7"), U24))
        self.assertIsNotNone(has_minor(W3, W3))

    def test_has_minor_using(self):
        W3, U24 = named("W3"), named("U24")
        for label in W3.labels:
            witness = has_minor_using(W3, U24, label)
            self.assertIsNotNone(witness)
            self.assertIn(label, witness.iso.values())
        self.assertIsNone(has_minor_using(named("F7"), U24, "a"))

    def test_fragility(self):
        U24 = named("U24")
        self.assertTrue(is_fragile(named("W3"), U24))
        self.assertFalse(is_fragile(named("P6"), U24))
        self.assertTrue(is_fragile(named("F7"), U24))

    def test_minor_memo(self):
        W3, U24 = named("W3"), named("U24")
        self.assertTrue(contains_minor(W3, U24))
        self.assertIs(caches["minors"].get(f"minor:{fingerprint(W3)}:{fingerprint(U24)}"), True)

    def test_roundedness(self):
        self.assertTrue(roundedness_check([named("U24")], [named("W3"), named("P6")]).ok)
        report = roundedness_check([named("MK4")], [named("MK4x")])
        self.assertFalse(report.ok)
        self.assertEqual([label for _, label in report.violations], ["x"])


@override_settings(MATROID_VALIDATE_RESULTS=True)
class TreeDecompositionTests(SimpleTestCase):
    def test_twosum_basepoints(self):
        with self.assertRaises(BasepointDegenerate):
            twosum(uniform(2, 4, "abcp"), uniform(3, 3, "def"), "p", "d")

    def test_r6(self):
        R6 = named("R6")
        T = tree_decompose(R6)
        self.assertEqual(len(T.nodes), 2)
        self.assertEqual(len(T.edges), 1)
        self.assertEqual(T.problems(), [])
        self.assertTrue(all(isomorphic(node, uniform(2, 4)) for node in T.nodes))
        self.assertIsNotNone(isomorphic(reconstruct(T), R6))
        self.assertTrue(all(found for _, _, found in tree_minor_check(T, R6)))

    def test_three_connected_is_one_node(self):
        T = tree_decompose(named("MK4"))
        self.assertEqual(len(T.nodes), 1)
        self.assertEqual(reconstruct(T), named("MK4"))

    def test_k(self):
        K = named("K")
        T = tree_decompose(K)
        self.assertEqual(sorted((node.size, node.r) for node in T.nodes), [(3, 1), (3, 1), (3, 1), (4, 2)])
        self.assertEqual(T.problems(), [])
        self.assertIsNotNone(isomorphic(reconstruct(T), K))
        self.assertTrue(same_shape(T, tree_decompose(dual(dual(K)))))
        self.assertTrue(all(found for _, _, found in tree_minor_check(T, K)))

    def test_reconstruct_ignores_node_and_edge_order(self):
        T = tree_decompose(named("K"))
        order = list(reversed(range(len(T.nodes))))
        position = {old: new for new, old in enumerate(order)}
        shuffled = TreeDecomposition(
            tuple(T.nodes[old] for old in order),
            tuple((position[i], position[j], label) for i, j, label in reversed(T.edges)),
        )
        self.assertEqual(shuffled.problems(), [])
        self.assertEqual(reconstruct(shuffled), reconstruct(T))
        self.assertEqual(set(reconstruct(T).labels), set(named("K").labels))

    def test_disconnected(self):
        with self.assertRaises(NotConnected):
            tree_decompose(named("U24+U11"))
        with self.assertRaises(InvalidTree):
            reconstruct(TreeDecomposition((), ()))


@override_settings(MATROID_VALIDATE_RESULTS=True)
class CatalogTests(SimpleTestCase):
    def test_every_name_builds(self):
        for name in constants.catalog_names:
            M = named(name)
            self.assertEqual(M.name, name)
            if isinstance(M, Matroid):
                validate(M.bases, M.ground)

    def test_names(self):
        self.assertEqual(canonical_name("M(K4)"), "MK4")
        self.assertEqual(canonical_name("U_{2,4}"), "U24")
        self.assertEqual(canonical_name("U2,4"), "U24")
        self.assertEqual(named("U2,5"), uniform(2, 5))
        with self.assertRaises(UnknownName):
            named("Petersen")

    def test_named_matroids(self):
        K = named("K")
        self.assertEqual((K.size, K.r), (7, 2))
        self.assertFalse(any(circuit.bit_count() == 3 for circuit in named("U36").circuits))
        P6 = named("P6")
        self.assertEqual([c for c in P6.circuits if P6.rank(c) < P6.r], [word(P6, "def")])

    def test_wheels_and_whirls(self):
        self.assertIsNotNone(isomorphic(wheel(3), named("MK4")))
        self.assertIsNotNone(isomorphic(whirl(3), named("W3")))
        self.assertEqual(len(whirl(4).bases), len(wheel(4).bases) + 1)
        with self.assertRaises(BadRank):
            wheel(2)

    def test_free_extension(self):
        MK4x = free_extension(named("MK4"))
        self.assertEqual((MK4x.size, MK4x.r), (7, 3))
        self.assertEqual(delete(MK4x, "x"), named("MK4"))

    def test_spikes(self):
        for r in (4, 6):
            spike = tipless_spike(r)
            X, Y = spike_pair(r)
            self.assertTrue({X, Y} <= circuit_hyperplanes(spike))
            self.assertTrue(is_binary(spike)[0])
        self.assertEqual(len(doubly_relaxed_spike(4).bases), len(tipless_spike(4).bases) + 2)
        with self.assertRaises(BadRank):
            tipless_spike(5)

    def test_section4_shape(self):
        params = section4_params(3)
        self.assertEqual((params.n, params.t), (12, 10))
        self.assertEqual(params.t % 2, 0)
        with self.assertRaises(BadRank):
            section4_params(4)
        with self.assertRaises(GroundSetOverflow):
            section4_base(5)
        base = section4_base(3)
        even = [label for label, column in zip(base.labels, base.columns) if column.bit_count() % 2 == 0]
        self.assertEqual(even, [str(i) for i in range(13, 25)])

    def test_smallest_pg_witness(self):
        self.assertEqual(projective_geometry(1).columns, (1,))
        M = section4_matrix(1)
        witness = pg_minor_witness(M, 1)
        self.assertEqual(witness.contract & witness.delete, 0)
        restricted = materialize(lazy_minor(M, witness.contract, witness.delete))
        self.assertIsNotNone(isomorphic(uniform(1, 1), restricted))


@override_settings(MATROID_VALIDATE_RESULTS=True)
class FileFormatTests(SimpleTestCase):
    def test_parse_bases(self):
        M = parse("matroid U24\nelements a b c d\nbases ab ac ad bc bd cd\n")
        self.assertEqual(M, uniform(2, 4))
        self.assertEqual(M.name, "U24")

    def test_parse_gf2(self):
        lazy = parse(SPIKE4)
        self.assertIsInstance(lazy, RelaxedBinaryMatroid)
        self.assertEqual(materialize(lazy), tipless_spike(4))

    def test_relax_lines(self):
        text = emit(named("W3"))
        self.assertEqual(parse(text), named("W3"))
        lazy = parse(SPIKE4 + "relax e2e3e4e5\n")
        self.assertEqual(lazy.relaxed_sets, (spike_pair(4)[0],))

    def test_syntax_errors(self):
        with self.assertRaises(MatroidSyntaxError) as caught:
            parse("matroid bad\nelements a b c\nbases ab ax\n")
        self.assertEqual(caught.exception.line, 3)
        with self.assertRaises(MatroidSyntaxError):
            parse("elements a b\n")
        with self.assertRaises(ExchangeFailure):
            parse("matroid bad\nelements a b c d\nbases ab cd\n")

    def test_load_catalog(self):
        self.assertEqual(load("catalog:P6"), named("P6"))

    @tag("slow")
    @hypothesis_settings(max_examples=20, deadline=None)
    @given(st.sampled_from([name for name in constants.catalog_names if not name.startswith(("spike6", "dspike6"))]))
    def test_emit_parse(self, name):
        M = named(name)
        self.assertEqual(parse(emit(M)), M)


class CommandTests(SimpleTestCase):
    def call(self, *args):
        out = StringIO()
        call_command(*args, stdout=out)
        return out.getvalue()

    def test_catalog(self):
        self.assertIn("MK4", self.call("catalog").split())
        self.assertEqual(parse(self.call("catalog", "F7")), named("F7"))

    def test_show(self):
        out = self.call("show", "catalog:MK4")
        self.assertIn("rank 3", out)
        self.assertIn("circuit-hyperplanes abd ace bcf def", out)
        self.assertIn("connectivity 3-connected", out)

    def test_relax_and_tighten(self):
        self.assertEqual(parse(self.call("relax", "catalog:MK4", "--set", "abd")), named("W3"))
        self.assertEqual(parse(self.call("tighten", "catalog:W3", "--basis", "abd")), named("MK4"))

    def test_minor(self):
        self.assertIn("contract", self.call("minor", "catalog:W3", "--target", "U24", "--using", "a"))
        with self.assertRaises(SystemExit) as caught:
            self.call("minor", "catalog:F7", "--target", "U24")
        self.assertEqual(caught.exception.code, 1)

    def test_treedec(self):
        out = self.call("treedec", "catalog:R6")
        self.assertIn("node 0", out)
        self.assertIn("node 1", out)

    def test_errors_exit_two(self):
        with self.assertRaises(CommandError) as caught:
            self.call("show", "catalog:Petersen")
        self.assertEqual(caught.exception.returncode, 2)
        with self.assertRaises(CommandError):
            self.call("relax", "catalog:U24", "--set", "abc")
