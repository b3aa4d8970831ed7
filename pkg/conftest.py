import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "matroid_lab.settings")
django.setup()
