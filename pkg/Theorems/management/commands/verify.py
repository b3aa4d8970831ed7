import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from ...suites import SUITE_NAMES
from ...tasks import run_suite


class Command(BaseCommand):
    help = 'Run the theorem verification suites'

    def add_arguments(self, parser):
        parser.add_argument("--suite", default="all", choices=SUITE_NAMES + ("all",))
        parser.add_argument("--max-elements", type=int, default=settings.MATROID_CORPUS_MAX_ELEMENTS)
        parser.add_argument("--seed", type=int, default=0)

    def handle(self, *args, **options):
        if not 1 <= options["max_elements"] <= 12:
            raise CommandError("--max-elements must lie between 1 and 12", returncode=2)
        names = SUITE_NAMES if options["suite"] == "all" else (options["suite"],)
        pending = [run_suite.delay(name, options["seed"], options["max_elements"]) for name in names]
        failed = 0
        for result in pending:
            for line in result.get():
                if line.startswith("FAIL"):
                    failed += 1
                    self.stdout.write(self.style.ERROR(line))
                else:
                    self.stdout.write(line)
        if failed:
            self.stdout.write(self.style.ERROR(f"{failed} assertion(s) failed"))
            sys.exit(1)
        self.stdout.write(self.style.SUCCESS(f"all assertions passed ({', '.join(names)})"))
