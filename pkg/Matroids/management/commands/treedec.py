from Matroids.management.base import MatroidCommand
from Matroids.relaxed import materialize
from Matroids.sums import tree_decompose


class Command(MatroidCommand):
    help = 'Print the canonical tree decomposition of a connected matroid'

    def run(self, **options):
        T = tree_decompose(materialize(options["matroid"]))
        self.stdout.write(T.render())
