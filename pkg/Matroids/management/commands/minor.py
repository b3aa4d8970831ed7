from Matroids.core import minor
from Matroids.fileformat import emit, load
from Matroids.management.base import MatroidCommand
from Matroids.minors import has_minor, has_minor_using
from Matroids.relaxed import materialize


class Command(MatroidCommand):
    help = 'Search for a minor isomorphic to a target matroid'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--target", required=True, help='catalog name, "catalog:NAME" or a file')
        parser.add_argument("--using", help="element that must survive in the minor")

    def run(self, **options):
        M = materialize(options["matroid"])
        target = options["target"]
        source = target if target.startswith("catalog:") or "/" in target or target.endswith(".txt") else f"catalog:{target}"
        N = materialize(load(source))
        if options["using"]:
            witness = has_minor_using(M, N, options["using"])
        else:
            witness = has_minor(M, N)
        if witness is None:
            self.negative("none")
        self.stdout.write(witness.describe(M))
        found = minor(M, witness.contract, witness.delete)
        self.stdout.write(emit(found, name=f"{N.describe()}-minor"), ending="")
