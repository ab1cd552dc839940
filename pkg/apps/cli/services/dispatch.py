import sys
from typing import Optional, Sequence

from django.core.management import call_command
from django.core.management.base import CommandError

from apps.cli.services.runs import RUNNERS


def parse_and_dispatch(argv: Sequence[str], config: Optional[str] = None, stdout=None, stderr=None) -> int:
    """
    Runs ``argv`` (command name first) and returns the exit status:
    0 on success, 1 on invalid input, 2 on solver failure.
    """
    stderr = stderr or sys.stderr
    if not argv or argv[0] not in RUNNERS:
        stderr.write(f"expected one of {sorted(RUNNERS)} as the command\n")
        return 1
    name, arguments = argv[0], list(argv[1:])
    if config:
        arguments = ['--config', str(config)] + arguments
    try:
        call_command(name, *arguments, stdout=stdout, stderr=stderr)
    except CommandError as exc:
        stderr.write(f"{exc}\n")
        return exc.returncode
    return 0
