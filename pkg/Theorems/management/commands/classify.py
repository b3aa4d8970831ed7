from Matroids import constants
from Matroids.catalog import named
from Matroids.core import Matroid
from Matroids.fileformat import emit
from Matroids.gf2 import vector_matroid
from Matroids.management.base import MatroidCommand
from Matroids.minors import isomorphic
from Matroids.relaxed import RelaxedBinaryMatroid, materialize

from ...classes import classify_Z


def catalog_match(M):
    for name in constants.catalog_names:
        candidate = named(name)
        if isinstance(candidate, Matroid) and candidate.size == M.size and isomorphic(candidate, M) is not None:
            return name
    return None


class Command(MatroidCommand):
    help = 'Place a non-binary member of Z in its structural case'

    def run(self, **options):
        M = materialize(options["matroid"])
        result = classify_Z(M)
        render = M.ground.render
        self.stdout.write(f"case {result.case}")
        if result.matched:
            self.stdout.write(f"matched {' '.join(result.matched)}")
        if result.case == "NotInZ":
            self.stdout.write(f"element {result.element}")
        elif result.case == "RelaxationOfBinary":
            parent = vector_matroid(result.parent)
            self.stdout.write(f"relaxed {render(result.X)}")
            self.stdout.write(f"parent {catalog_match(parent) or 'unnamed'}")
            self.stdout.write(emit(RelaxedBinaryMatroid(result.parent, (), f"{M.describe()}-parent")), ending="")
        elif result.case in ("ParallelExtU2n", "SeriesExtUn2n", "U24SeriesParallel"):
            if result.n is not None:
                self.stdout.write(f"n {result.n}")
            if result.case == "U24SeriesParallel":
                self.stdout.write(f"series {render(result.S) or '-'}")
                self.stdout.write(f"parallel {render(result.T) or '-'}")
            self.stdout.write(f"contract {render(result.contracted) or '-'}")
            self.stdout.write(f"delete {render(result.deleted) or '-'}")
