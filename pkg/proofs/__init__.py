"""
Named verifications, each returning a VerificationReport.
"""

import logging
import time
from typing import Callable, Dict, List

from .alternative import alt_warning
from .flatness import ll_assoc_iso, ll_flatness, poisson_classify
from .kokoris import flexible, kokoris_iso, kokoris_remark, star_trivial
from .report import VerificationReport, certify
from .rigidity import ap_rigidity_dims, ap_rigidity_symbolic

logger = logging.getLogger(__name__)

# Fixed order; `verify all` reports in this order
VERIFICATIONS: Dict[str, Callable[..., VerificationReport]] = {
    'll-flatness': ll_flatness,
    'll-assoc-iso': ll_assoc_iso,
    'poisson-classify': poisson_classify,
    'ap-rigidity-symbolic': ap_rigidity_symbolic,
    'ap-rigidity-dims': ap_rigidity_dims,
    'kokoris-iso': kokoris_iso,
    'star-trivial': star_trivial,
    'flexible': flexible,
    'kokoris-remark': kokoris_remark,
    'alt-warning': alt_warning,
}

OPTIONAL = frozenset({'alt-warning'})


def selected(include_optional: bool = False) -> List[str]:
    return [name for name in VERIFICATIONS if include_optional or name not in OPTIONAL]


def run_verification(name: str, allow_big: bool = False) -> VerificationReport:
    """
    Run one verification by name and record its wall time.

    Args:
        name: Key of VERIFICATIONS
        allow_big: Pass through to verifications with an arity-5 tier

    Returns:
        VerificationReport
    """
    fn = VERIFICATIONS[name]
    start = time.perf_counter()
    report = fn(include_big=True) if allow_big and name == 'll-flatness' else fn()
    report.wall_time = time.perf_counter() - start
    logger.info(f"{name}: {'pass' if report.passed else 'FAIL'} in {report.wall_time:.2f}s")
    return report


__all__ = [
    'VERIFICATIONS', 'OPTIONAL', 'VerificationReport', 'certify', 'run_verification', 'selected',
    'll_flatness', 'll_assoc_iso', 'poisson_classify', 'ap_rigidity_symbolic', 'ap_rigidity_dims',
    'kokoris_iso', 'star_trivial', 'flexible', 'kokoris_remark', 'alt_warning',
]
