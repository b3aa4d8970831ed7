import os
from celery import Celery

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'matroid_lab.settings')

app = Celery('matroid_lab')
app.config_from_object('django.conf:settings', namespace='CELERY')
app.autodiscover_tasks()

# verification suites run for minutes each; hand them out one at a time
app.conf.worker_prefetch_multiplier = 1
app.conf.task_acks_late = True
