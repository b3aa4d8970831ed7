from Matroids.core import contract, delete
from Matroids.fileformat import emit
from Matroids.gf2 import is_binary
from Matroids.management.base import MatroidCommand
from Matroids.relaxed import RelaxedBinaryMatroid, materialize

from ...classes import excluded_minor_check, in_D, in_R, in_Z


class Command(MatroidCommand):
    help = 'Decide membership in binary, Z, R or D; exit 0 for yes, 1 for no'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--class", dest="cls", required=True, choices=["binary", "Z", "R", "D"])

    def run(self, **options):
        M = options["matroid"]
        cls = options["cls"]
        if cls == "D":
            return self.check_D(M)
        M = materialize(M)
        getattr(self, f"check_{cls}")(M)

    def check_binary(self, M):
        ok, matrix = is_binary(M)
        if not ok:
            self.negative(f"NO: {M.describe()} is not binary")
        self.stdout.write(self.style.SUCCESS(f"YES: {M.describe()} is binary"))
        self.stdout.write(emit(matrix, M.describe()), ending="")

    def check_Z(self, M):
        ok, element = in_Z(M)
        if ok:
            self.stdout.write(self.style.SUCCESS(f"YES: {M.describe()} is in Z"))
            return
        if excluded_minor_check(M, "Z").passed:
            self.negative(f"NO: {M.describe()} is an excluded minor")
        self.stdout.write(emit(delete(M, element), f"{M.describe()}\\{element}"), ending="")
        self.stdout.write(emit(contract(M, element), f"{M.describe()}/{element}"), ending="")
        self.negative(f"NO: {M.describe()} is not in Z: both minors at {element} are non-binary")

    def check_R(self, M):
        ok, witness = in_R(M)
        if ok:
            self.stdout.write(self.style.SUCCESS(f"YES: {M.describe()} is in R"))
            if witness is not None:
                matrix, X = witness
                self.stdout.write(emit(RelaxedBinaryMatroid(matrix, (X,), M.describe())), ending="")
            return
        if excluded_minor_check(M, "R").passed:
            self.negative(f"NO: {M.describe()} is an excluded minor")
        self.negative(f"NO: {M.describe()} is not in R")

    def check_D(self, M):
        membership = in_D(M)
        if membership is None:
            self.negative(f"NO: {M.describe()} is not in D")
        ground = M.ground
        self.stdout.write(self.style.SUCCESS(f"YES: {M.describe()} is in D"))
        self.stdout.write(f"relaxed {ground.render(membership.X)} {ground.render(membership.Y)}")
        self.stdout.write(emit(membership.parent, f"{M.describe()}-parent"), ending="")
