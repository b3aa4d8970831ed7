import sys

from django.core.management.base import BaseCommand, CommandError

from Matroids.exceptions import MatroidError
from Matroids.fileformat import load


class MatroidCommand(BaseCommand):
    """Loads FILE and maps kernel errors to exit code 2.

    Subclasses implement run(); a negative verdict calls self.negative().
    """

    takes_file = True

    def add_arguments(self, parser):
        if self.takes_file:
            parser.add_argument("file", help='matroid document, "catalog:NAME" or "-" for stdin')

    def handle(self, *args, **options):
        try:
            if self.takes_file:
                options["matroid"] = load(options["file"])
            self.run(**options)
        except MatroidError as exc:
            raise CommandError(str(exc), returncode=2) from exc
        except OSError as exc:
            raise CommandError(f"cannot read {options.get('file')}: {exc}", returncode=2) from exc

    def run(self, **options):
        raise NotImplementedError

    def negative(self, message):
        self.stdout.write(self.style.WARNING(message))
        sys.exit(1)
