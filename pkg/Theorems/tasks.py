from celery import shared_task

from .suites import run_suite as run


@shared_task
def run_suite(name, seed=0, max_elements=10):
    """Run one verification suite; returns its PASS/FAIL lines."""
    return run(name, seed, max_elements)
