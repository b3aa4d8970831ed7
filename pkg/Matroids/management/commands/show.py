from Matroids.core import Matroid, connectivity
from Matroids.gf2 import is_connected_binary
from Matroids.management.base import MatroidCommand
from Matroids.relaxed import circuit_hyperplanes, free_bases, materialize
from django.conf import settings


class Command(MatroidCommand):
    help = 'Show rank, circuits, connectivity and circuit-hyperplanes of a matroid'

    def run(self, **options):
        M = options["matroid"]
        ground = M.ground
        self.stdout.write(f"matroid {M.describe()}")
        self.stdout.write(f"elements {' '.join(ground.labels)}")
        self.stdout.write(f"rank {M.r}")
        if not isinstance(M, Matroid) and M.size > settings.MATROID_EXPLICIT_LIMIT:
            for X in M.relaxed_sets:
                self.stdout.write(f"relaxed {ground.render(X)}")
            self.stdout.write(f"base matrix connected {'yes' if is_connected_binary(M.base) else 'no'}")
            return
        M = materialize(M)
        self.stdout.write(f"bases {len(M.bases)}")
        circuits = sorted(M.circuits, key=lambda word: (word.bit_count(), word))
        self.stdout.write("circuits " + " ".join(ground.render(word) for word in circuits))
        report = connectivity(M)
        if report.is_three_connected:
            self.stdout.write("connectivity 3-connected")
        else:
            side, order = report.witness_separation
            kind = "connected, not 3-connected" if report.is_connected else "disconnected"
            self.stdout.write(f"connectivity {kind}; {order}-separation {ground.render(side)}")
        hyperplanes = sorted(circuit_hyperplanes(M))
        self.stdout.write("circuit-hyperplanes " + (" ".join(ground.render(word) for word in hyperplanes) or "none"))
        free = free_bases(M)
        self.stdout.write("free bases " + (" ".join(ground.render(fb.B) for fb in free) or "none"))
