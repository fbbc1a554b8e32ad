"""Exact arithmetic for the second Ostrogradsky expansion and its digit-restricted sets."""

__version__ = "0.1.0"

from .cantor import (
    Complement,
    MeasureBound,
    Prefix,
    Tail,
    Verdict,
    criterion_complement,
    criterion_prefix,
    criterion_tail,
    exact_level_measures,
    measure_bounds,
    parse_family,
    pierce_growth_zero_test,
)
from .companions import (
    CFDigits,
    PierceDigits,
    cf_expand,
    gauss_frequency,
    pierce_expand,
    pierce_growth_stat,
    transfer_map,
)
from .errors import (
    BudgetExceeded,
    DomainError,
    InvalidDigits,
    InvalidLaw,
    OstrogradskyError,
    ParseError,
    TooShort,
    ValidityError,
)
from .expansion import (
    BarO2Digits,
    CompanionSequence,
    Cylinder,
    O2Digits,
    bar_to_o2,
    child_ratio,
    companions,
    cylinder_interval,
    digit_count,
    evaluate_bar,
    evaluate_o2,
    o2_to_bar,
    remez_expand,
    shift,
)
from .expr import parse_expr
from .hausdorff import bounded_digit_report, certify_zero_dim, covering_sum
from .sampler import (
    DigitLaw,
    eta_cdf,
    frequency_experiment,
    iid_sample,
    lebesgue_digit_sample,
    singularity_diagnostic,
)
