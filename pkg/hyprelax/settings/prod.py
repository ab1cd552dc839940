"""
Production (batch run) settings.
"""

import os
from .base import *

DEBUG = False
SECRET_KEY = os.getenv('SECRET_KEY', SECRET_KEY)

LOGGING['loggers']['apps']['level'] = os.getenv('HYP_LOG_LEVEL', 'INFO')
