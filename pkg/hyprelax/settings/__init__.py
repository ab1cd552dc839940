"""
Dynamic settings loader for the hyprelax project.
Selects environment settings based on the `env` variable.
"""
import os

HYPRELAX_ENV = os.getenv("env", "local").lower()

if HYPRELAX_ENV == "prod" or HYPRELAX_ENV == "production":
    from .prod import *
elif HYPRELAX_ENV == "local" or HYPRELAX_ENV == "dev" or HYPRELAX_ENV == "development":
    from .local import *
else:
    raise RuntimeError(f"Unknown HYPRELAX_ENV: {HYPRELAX_ENV}. Use 'local' or 'prod'.")
