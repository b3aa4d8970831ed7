from Matroids.fileformat import emit, parse_word
from Matroids.management.base import MatroidCommand
from Matroids.relaxed import materialize, tighten


class Command(MatroidCommand):
    help = 'Remove a free basis from the basis family and print the result'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--basis", required=True, help="the free basis, as a word")

    def run(self, **options):
        M = materialize(options["matroid"])
        B = parse_word(M.ground, options["basis"])
        result = tighten(M, B).renamed(f"{M.name}-tightened" if M.name else None)
        self.stdout.write(emit(result), ending="")
