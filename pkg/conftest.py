import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'hyprelax.settings')
django.setup()
