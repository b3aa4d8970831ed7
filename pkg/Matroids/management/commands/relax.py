from Matroids.core import Matroid
from Matroids.fileformat import emit, parse_word
from Matroids.management.base import MatroidCommand
from Matroids.relaxed import relax, relax_lazy


class Command(MatroidCommand):
    help = 'Relax a circuit-hyperplane and print the result'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--set", required=True, dest="word", help="the circuit-hyperplane, as a word")

    def run(self, **options):
        M = options["matroid"]
        H = parse_word(M.ground, options["word"])
        if isinstance(M, Matroid):
            result = relax(M, H).renamed(f"{M.name}+relaxed" if M.name else None)
        else:
            result = relax_lazy(M, H)
        self.stdout.write(emit(result), ending="")
