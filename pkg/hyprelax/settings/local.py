"""
Local development settings.
"""
from .base import *

DEBUG = True

# Verbose numerics while developing
LOGGING['loggers']['apps']['level'] = os.getenv('HYP_LOG_LEVEL', 'DEBUG')
