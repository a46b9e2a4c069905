import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "synthgeo.settings")
django.setup()
