import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Union

from apps.construction.services.census import enumerate_candidates
from apps.construction.services.permutations import SignedPermutation
from apps.construction.services.systems import required_sigma0, stable_permutation
from utils.conf import hyp_setting

logger = logging.getLogger(__name__)

REQUIRED = 'required'


@dataclass(frozen=True)
class CensusReport:
    m: int
    sigma0: int
    total_candidates: int
    low_k_pass: int
    high_k_pass: int
    full_pass: int
    unique_stable: Optional[SignedPermutation]

    @property
    def matches_formula(self) -> bool:
        return self.unique_stable == stable_permutation(self.m, self.sigma0)


def resolve_sigma0(m: int, rule: Union[str, int]) -> int:
    """'required' picks (-1)^(m/2) for even m and +1 for odd m; an explicit sign is used as is."""
    if rule == REQUIRED:
        return required_sigma0(m) if m % 2 == 0 else 1
    return int(rule)


def census(m_values: Iterable[int], sigma0_rule: Union[str, int] = REQUIRED,
           limit: Optional[int] = None) -> List[CensusReport]:
    """Exhaustive stability census of every signed-permutation relaxation, one report per m."""
    limit = limit or hyp_setting('CENSUS_LIMIT')
    reports = []
    for m in m_values:
        sigma0 = resolve_sigma0(m, sigma0_rule)
        verdicts = enumerate_candidates(m, sigma0, limit=limit)
        stable = [verdict.permutation for verdict in verdicts if verdict.stable]
        report = CensusReport(
            m=m,
            sigma0=sigma0,
            total_candidates=len(verdicts),
            low_k_pass=sum(verdict.low_k for verdict in verdicts),
            high_k_pass=sum(verdict.high_k for verdict in verdicts),
            full_pass=len(stable),
            unique_stable=stable[0] if len(stable) == 1 else None,
        )
        if not report.matches_formula:
            logger.warning("census m=%d sigma0=%d: %d stable candidates, survivor does not match the formula",
                           m, sigma0, report.full_pass)
        logger.info("census m=%d sigma0=%d: %d candidates, low-k %d, high-k %d, stable %d",
                    m, sigma0, report.total_candidates, report.low_k_pass, report.high_k_pass,
                    report.full_pass)
        reports.append(report)
    return reports
