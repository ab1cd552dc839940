"""
Exhaustive enumeration of signed-permutation relaxations for one model order.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import List

from apps.construction.services.permutations import SignedPermutation, classify_left_half_plane
from apps.construction.services.systems import LinearModel, has_real_spectrum_A
from apps.dispersion.services.relations import sampled_stability
from utils.exceptions import CensusBoundError

logger = logging.getLogger(__name__)

DEFAULT_CENSUS_LIMIT = 10 ** 6


@dataclass(frozen=True)
class CandidateVerdict:
    """Stability verdicts of one candidate P."""
    permutation: SignedPermutation
    low_k: bool
    high_k: bool
    full: bool

    @property
    def stable(self) -> bool:
        return self.low_k and self.high_k and self.full


def candidate_count(m: int) -> int:
    return math.factorial(m - 1) * 2 ** (m - 1)


def iter_signed_permutations(n: int):
    """All (n!)(2^n) signed permutations of size n in a fixed lexicographic order."""
    for target in itertools.permutations(range(n)):
        for sign in itertools.product((-1, 1), repeat=n):
            yield SignedPermutation(target, sign)


def enumerate_candidates(m: int, sigma0: int, limit: int = DEFAULT_CENSUS_LIMIT) -> List[CandidateVerdict]:
    """
    Classifies every signed permutation of size m-1 as a relaxation of u_t + sigma0 d_x^m u = 0.

    Args:
        m: model order.
        sigma0: sign of the top derivative.
        limit: largest census size allowed.

    Returns:
        One CandidateVerdict per candidate, in enumeration order.
    """
    model = LinearModel(m, sigma0)
    total = candidate_count(m)
    if total > limit:
        raise CensusBoundError(
            f"census for m={m} has {total} candidates, above the limit of {limit}", m=m, total=total)

    verdicts = []
    for P in iter_signed_permutations(m - 1):
        verdicts.append(CandidateVerdict(
            permutation=P,
            low_k=classify_left_half_plane(P),
            high_k=has_real_spectrum_A(P, sigma0),
            full=sampled_stability(model, P),
        ))

    logger.debug("census m=%d sigma0=%d: %d candidates, %d stable",
                 m, sigma0, total, sum(verdict.stable for verdict in verdicts))
    return verdicts
