from Matroids import constants
from Matroids.catalog import named
from Matroids.fileformat import emit
from Matroids.management.base import MatroidCommand


class Command(MatroidCommand):
    help = 'List the named matroids, or print one of them'

    takes_file = False

    def add_arguments(self, parser):
        parser.add_argument("name", nargs="?")

    def run(self, **options):
        if not options["name"]:
            for name in constants.catalog_names:
                self.stdout.write(name)
            return
        self.stdout.write(emit(named(options["name"])), ending="")
