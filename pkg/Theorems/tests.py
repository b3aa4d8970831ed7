from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings, tag

from Matroids.catalog import doubly_relaxed_spike, named, spike_pair
from Matroids.core import direct_sum, popcount, series_parallel_extend, uniform
from Matroids.exceptions import BudgetExceeded, PreconditionViolated
from Matroids.fileformat import parse
from Matroids.gf2 import vector_matroid
from Matroids.minors import isomorphic
from Matroids.relaxed import circuit_hyperplanes, relax
from Matroids.sums import twosum

from .classes import (
    classify_Z,
    excluded_minor_check,
    find_d_minor,
    in_D,
    in_R,
    in_R_by_minors,
    in_Z,
    in_Z_by_minors,
    relaxation_of_nonbinary_dichotomy,
    witness_reconstructs,
)
from .corpus import corpus
from .suites import Report, components, dichotomy_pairs, is_uniform_pair, run_suite


@override_settings(MATROID_VALIDATE_RESULTS=True)
class MembershipTests(SimpleTestCase):
    def test_in_Z(self):
        ok, element = in_Z(named("P6"))
        self.assertFalse(ok)
        self.assertIn(element, named("P6").labels)
        self.assertEqual(in_Z(named("U25")), (True, None))
        self.assertEqual(in_Z(named("F7")), (True, None))

    def test_in_R(self):
        ok, witness = in_R(named("W3"))
        self.assertTrue(ok)
        parent, X = witness
        self.assertIsNotNone(isomorphic(vector_matroid(parent), named("MK4")))
        self.assertEqual(relax(vector_matroid(parent), X), named("W3"))
        self.assertEqual(in_R(named("U25")), (False, None))
        ok, (parent, X) = in_R(named("F7-"))
        self.assertIsNotNone(isomorphic(vector_matroid(parent), named("F7")))
        self.assertEqual(in_R(named("MK4")), (True, None))

    def test_in_D(self):
        M = named("dspike4")
        membership = in_D(M)
        self.assertIsNotNone(membership)
        self.assertEqual({membership.X, membership.Y}, set(spike_pair(4)))
        self.assertEqual(relax(relax(membership.parent, membership.X), membership.Y), M)
        self.assertIsNone(in_D(named("W3")))
        self.assertIsNone(in_D(named("spike4")))

    def test_deciders_by_minors(self):
        self.assertFalse(in_Z_by_minors(named("R6")))
        self.assertTrue(in_Z_by_minors(named("W3")))
        self.assertFalse(in_R_by_minors(named("K")))
        self.assertTrue(in_R_by_minors(named("F7-")))
        with self.assertRaises(BudgetExceeded):
            in_Z_by_minors(uniform(2, 13))

    def test_find_d_minor(self):
        C, D, membership = find_d_minor(named("dspike4"))
        self.assertEqual((C, D), (0, 0))
        self.assertIsNone(find_d_minor(named("W3")))


@override_settings(MATROID_VALIDATE_RESULTS=True)
class ClassifierTests(SimpleTestCase):
    def test_parallel_extension(self):
        M = series_parallel_extend(uniform(2, 6), {"a": (0, 1)})
        result = classify_Z(M)
        self.assertEqual(result.case, "ParallelExtU2n")
        self.assertEqual(result.n, 6)
        self.assertTrue(witness_reconstructs(M, result))

    def test_series_extension(self):
        M = series_parallel_extend(uniform(4, 6), {"a": (1, 0)})
        result = classify_Z(M)
        self.assertEqual(result.case, "SeriesExtUn2n")
        self.assertEqual(result.n, 6)
        self.assertTrue(witness_reconstructs(M, result))

    def test_relaxation_of_binary(self):
        W3 = named("W3")
        result = classify_Z(W3)
        self.assertEqual(result.case, "RelaxationOfBinary")
        self.assertIsNotNone(isomorphic(vector_matroid(result.parent), named("MK4")))
        self.assertTrue(witness_reconstructs(W3, result))

    def test_u24_series_parallel(self):
        K = named("K")
        result = classify_Z(K)
        self.assertEqual(result.case, "U24SeriesParallel")
        self.assertEqual(result.S, 0)
        self.assertEqual(popcount(result.T), 3)
        self.assertTrue(witness_reconstructs(K, result))

    def test_matched_cases(self):
        result = classify_Z(uniform(2, 5))
        self.assertEqual(result.case, "ParallelExtU2n")
        self.assertEqual(result.matched[0], "ParallelExtU2n")

    def test_outside_cases(self):
        self.assertEqual(classify_Z(named("F7")).case, "Binary")
        result = classify_Z(named("P6"))
        self.assertEqual(result.case, "NotInZ")
        self.assertTrue(witness_reconstructs(named("P6"), result))


@override_settings(MATROID_VALIDATE_RESULTS=True)
class ExcludedMinorTests(SimpleTestCase):
    def test_sporadic(self):
        self.assertTrue(excluded_minor_check(named("Q6"), "Z").passed)
        self.assertTrue(excluded_minor_check(named("K"), "R").passed)
        self.assertTrue(excluded_minor_check(named("U24+U01"), "Z").passed)
        report = excluded_minor_check(named("W3"), "Z")
        self.assertTrue(report.in_class)
        self.assertFalse(report.passed)

    def test_unknown_class(self):
        with self.assertRaises(PreconditionViolated):
            excluded_minor_check(named("Q6"), "X")

    @tag("slow")
    def test_double_relaxation(self):
        M = doubly_relaxed_spike(4)
        self.assertTrue(excluded_minor_check(M, "Z").passed)
        self.assertTrue(excluded_minor_check(M, "R").passed)


@override_settings(MATROID_VALIDATE_RESULTS=True)
class DichotomyTests(SimpleTestCase):
    def glued(self, m):
        return twosum(uniform(2, 4, "abcp"), uniform(m, 3, ("d", "e", "q")), "p", "q")

    def test_uniform_disjuncts(self):
        for m, target in ((1, "U25"), (2, "U35")):
            N = self.glued(m)
            (X,) = circuit_hyperplanes(N)
            report = relaxation_of_nonbinary_dichotomy(N, X)
            self.assertTrue(report.certified)
            self.assertEqual(report.uniform_minor[0], target)
            self.assertIsNotNone(isomorphic(report.relaxed, named(target)))

    def test_preconditions(self):
        with self.assertRaises(PreconditionViolated):
            relaxation_of_nonbinary_dichotomy(named("MK4"), named("MK4").ground.subset("abd"))
        with self.assertRaises(PreconditionViolated):
            relaxation_of_nonbinary_dichotomy(named("W3"), 0b111)


class SuiteHelperTests(SimpleTestCase):
    def test_report_lines(self):
        report = Report("demo")
        self.assertFalse(report.sweep("even", [2, 4, 5], lambda n: n % 2 == 0))
        self.assertTrue(report.check("truth", True))
        self.assertEqual(report.lines, ["FAIL demo: even (fails on 5)", "PASS demo: truth"])

    def test_uniform_pair(self):
        M = direct_sum(uniform(2, 3), uniform(1, 1, ("d",)))
        self.assertTrue(is_uniform_pair(M))
        self.assertTrue(circuit_hyperplanes(M))
        self.assertFalse(is_uniform_pair(named("U24+U11")))

    def test_components(self):
        self.assertEqual(components(direct_sum(uniform(2, 3), uniform(1, 1, ("d",)))), [0b0111, 0b1000])
        self.assertEqual(components(named("U24+U01")), [0b01111, 0b10000])
        self.assertEqual(components(named("MK4")), [0b111111])

    def test_dichotomy_pairs_cover_every_circuit_hyperplane(self):
        W3 = named("W3")
        pairs = dichotomy_pairs([W3, named("F7"), named("MK4")])
        self.assertEqual(len(pairs), 3)
        self.assertTrue(all(M is W3 for M, _ in pairs))
        self.assertTrue(all(relaxation_of_nonbinary_dichotomy(M, H).certified for M, H in pairs))

    def test_corpus_is_deterministic(self):
        first = [M.name for M in corpus(0, 6, samples_per_shape=3)]
        second = [M.name for M in corpus(0, 6, samples_per_shape=3)]
        self.assertEqual(first, second)
        self.assertIn("R6", first)
        self.assertIn("W3", first)

    def test_corpus_respects_size(self):
        self.assertTrue(all(M.size <= 5 for M in corpus(1, 5, samples_per_shape=2)))


class CommandTests(SimpleTestCase):
    def call(self, *args):
        out = StringIO()
        call_command(*args, stdout=out)
        return out.getvalue()

    def test_check_binary(self):
        out = self.call("check_class", "catalog:F7", "--class", "binary")
        self.assertIn("YES: F7 is binary", out)
        self.assertIn("gf2 3 7", out)

    def test_check_excluded_minor(self):
        out = StringIO()
        with self.assertRaises(SystemExit) as caught:
            call_command("check_class", "catalog:P6", "--class", "Z", stdout=out)
        self.assertEqual(caught.exception.code, 1)
        self.assertIn("NO: P6 is an excluded minor", out.getvalue())

    def test_check_R_prints_parent(self):
        out = self.call("check_class", "catalog:W3", "--class", "R")
        self.assertIn("YES: W3 is in R", out)
        lazy = parse(out.split("\n", 1)[1])
        self.assertEqual(len(lazy.relaxed_sets), 1)

    def test_check_D(self):
        self.assertIn("YES: dspike4 is in D", self.call("check_class", "catalog:dspike4", "--class", "D"))
        with self.assertRaises(SystemExit):
            self.call("check_class", "catalog:W3", "--class", "D")

    def test_classify(self):
        out = self.call("classify", "catalog:W3")
        self.assertIn("case RelaxationOfBinary", out)
        self.assertIn("parent MK4", out)

    def test_bad_input(self):
        with self.assertRaises(CommandError) as caught:
            self.call("check_class", "catalog:Petersen", "--class", "Z")
        self.assertEqual(caught.exception.returncode, 2)

    def test_verify_reads_corpus_limit_from_settings(self):
        with override_settings(MATROID_CORPUS_MAX_ELEMENTS=13):
            with self.assertRaises(CommandError) as caught:
                self.call("verify", "--suite", "axioms")
        self.assertEqual(caught.exception.returncode, 2)
        self.assertIn("--max-elements", str(caught.exception))

    @tag("slow")
    def test_verify_section4(self):
        out = self.call("verify", "--suite", "section4")
        self.assertNotIn("FAIL", out)
        self.assertIn("PASS section4: the doubly relaxed M[Z] has a PG(2,2)-minor", out)


@tag("slow")
class SuiteTests(SimpleTestCase):
    def test_excluded_minors_suite(self):
        lines = run_suite("excluded-minors")
        self.assertTrue(lines)
        self.assertEqual([line for line in lines if line.startswith("FAIL")], [])
