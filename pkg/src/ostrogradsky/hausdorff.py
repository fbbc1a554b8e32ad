"""Covering sums and zero-dimension certificates for prefix families.

A set with ``V_k = {1, ..., m_k}`` is covered at depth k by
``m_1 ... m_k`` rank-k cylinders, each of length at most ``1/2**(2**(k-1))``.
The covering sum ``S_k(alpha) = m_1 ... m_k / 2**(alpha 2**(k-1))`` bounds
the ``alpha``-dimensional Hausdorff pre-measure at scale ``2**-(2**(k-1))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cantor import Prefix, parse_family, prefix_cylinder_companions
from .expr import exp_upper_bound
from .numeric import pow2_interval

DEFAULT_ALPHAS = (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(1))
DEFAULT_DEPTH = 12
THRESHOLD = Fraction(1, 10**6)

#: Reference bounds on the dimension of E_2 (continued fractions with digits 1, 2).
E2_CONSTANTS = (
    {"source": "Good", "years": [1941], "lower": "0.5194", "upper": "0.5433"},
    {"source": "Bumby", "years": [1982, 1985], "lower": "0.5312", "upper": "0.5314"},
    {"source": "Hensley", "years": [1989], "lower": "0.53128049", "upper": "0.53128051"},
    {"source": "Hensley", "years": [1996], "value": "0.5312805062772051416"},
)


@dataclass(frozen=True)
class CoveringValue:
    """Enclosure ``[lower, upper]`` of one covering sum; exact when they coincide."""

    k: int
    lower: Fraction
    upper: Fraction

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


@dataclass
class CoveringReport:
    alpha: Fraction
    sums: list = field(default_factory=list)
    verdict: str = "NotCertified"
    k0: int | None = None


@dataclass
class ZeroDimReport:
    family: str
    reports: list
    certificate: bool
    reason: str


def _family(family):
    if isinstance(family, str):
        family = parse_family(family)
    if not isinstance(family, Prefix):
        raise TypeError("covering sums need a prefix family")
    return family


def covering_sum(family, alpha, k: int, bits: int = 128) -> CoveringValue:
    """``m_1 ... m_k / 2**(alpha * 2**(k-1))``, exact or as a certified enclosure."""
    family = _family(family)
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if k < 1:
        raise ValueError("k must be >= 1")
    product = 1
    for j in range(1, k + 1):
        product *= family.m(j)
    lo, hi = pow2_interval(-alpha * (1 << (k - 1)), bits)
    return CoveringValue(k, product * lo, product * hi)


def _structural_k0(family, alpha, horizon=64):
    """First k from which ``m_{k+1} < 2**(alpha 2**(k-1))`` is guaranteed for all larger k."""
    bound = exp_upper_bound(family.m)
    if bound is None:
        return None
    const, base = bound
    for k in range(1, horizon + 1):
        lo, _ = pow2_interval(alpha * (1 << (k - 1)))
        # the right side squares per step while the bound grows by the factor base
        if const * base ** (k + 1) < lo and base <= lo:
            return k
    return None


def certify_zero_dim(family, alphas=DEFAULT_ALPHAS, depth: int = DEFAULT_DEPTH,
                     threshold: Fraction = THRESHOLD) -> ZeroDimReport:
    """Per-alpha covering reports plus a structural ``dim_H = 0`` certificate.

    The certificate is issued only when ``m_k <= C * A**k`` is evident from
    the expression; then ``m_1 ... m_k`` grows like ``A**(k**2/2)`` and every
    covering sum tends to zero.  Otherwise an alpha whose sum drops below
    ``threshold`` gets the weaker label ``UpperBoundCertified``.
    """
    family = _family(family)
    reports = []
    for alpha in alphas:
        alpha = Fraction(alpha)
        rep = CoveringReport(alpha)
        for k in range(1, depth + 1):
            rep.sums.append(covering_sum(family, alpha, k))
        rep.k0 = _structural_k0(family, alpha)
        if any(v.upper < threshold for v in rep.sums):
            rep.verdict = "UpperBoundCertified"
        reports.append(rep)
    bound = exp_upper_bound(family.m)
    if bound is not None:
        reason = f"m_k <= {bound[0]}*{bound[1]}^k: every covering sum tends to 0"
        return ZeroDimReport(family.source or str(family.m), reports, True, reason)
    reason = "no at-most-exponential bound on m_k; reports are per-alpha only"
    return ZeroDimReport(family.source or str(family.m), reports, False, reason)


def rank_cover(family, k: int):
    """Enumerate the depth-k cover: ``(count, longest cylinder length)``."""
    family = _family(family)
    cs = prefix_cylinder_companions(family, k)
    smallest = min(cs)
    return len(cs), Fraction(1, smallest * (smallest + 1))


def bounded_digit_report() -> dict:
    """Zero dimension of bounded-digit Ō² numbers set beside the continued-fraction case."""
    return {
        "o2_bounded_digits": {
            "dim_H": 0,
            "basis": "union over m of the sets with digits <= m; each has a constant-m certificate",
        },
        "cf_bounded_digits": {"dim_H": 1, "basis": "reference value"},
        "E2": [dict(row) for row in E2_CONSTANTS],
    }
