"""Random Ō² digit paths, the distribution of η and Monte Carlo experiments.

Randomness comes from numpy's Philox counter-based generator.  Each path
has its own stream keyed by ``SeedSequence([seed, group, index])``, so a
path never depends on how many paths precede it or on the worker count.
One uniform draw is a 128-bit dyadic ``U = N / 2**128`` made of two raw
64-bit outputs; every inverse-CDF decision is an exact integer
comparison, so the only deviation from the ideal law is the 2**-128
granularity of ``U``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np

from .errors import BudgetExceeded, DomainError, InvalidLaw
from .expansion import BarO2Digits, as_rational, o2_to_bar, remez_expand

UNIFORM_BITS = 128
SCALE = 1 << UNIFORM_BITS
DEFAULT_DEPTH = 24
IID_DEPTH = 10_000
DEFAULT_MAX_BITS = 1 << 30
TRACKED = (1, 2, 3, 4, 5)
LATE_START = 4
GEOMETRIC_CUTOFF = 4096

LEBESGUE_GROUP = 0
IID_GROUP = 1


# --------------------------------------------------------------------------- laws


@dataclass(frozen=True)
class DigitLaw:
    """``P(d = m)``: explicit head probabilities, then an optional geometric tail.

    With ``n = len(head)`` and tail ratio ``r``, the remaining mass
    ``T = 1 - sum(head)`` is spread as ``P(d = n + j) = T (1 - r) r**(j - 1)``.
    """

    head: tuple
    ratio: Fraction | None = None
    name: str = ""

    def __post_init__(self):
        head = tuple(Fraction(p) for p in self.head)
        object.__setattr__(self, "head", head)
        if any(p < 0 for p in head):
            raise InvalidLaw("probabilities must be non-negative")
        total = sum(head, Fraction(0))
        if self.ratio is None:
            if total != 1:
                raise InvalidLaw(f"probabilities sum to {total}, not 1")
        else:
            r = Fraction(self.ratio)
            object.__setattr__(self, "ratio", r)
            if not 0 < r < 1:
                raise InvalidLaw("geometric ratio must lie in (0, 1)")
            if total > 1:
                raise InvalidLaw(f"head probabilities sum to {total} > 1")

    @classmethod
    def point_mass(cls, i: int) -> "DigitLaw":
        if i < 1:
            raise InvalidLaw("digit must be positive")
        return cls(tuple([Fraction(0)] * (i - 1) + [Fraction(1)]), None, f"point:{i}")

    @classmethod
    def geometric(cls, r) -> "DigitLaw":
        """``P(d = m) = (1 - r) r**(m - 1)``; ``r = 1/2`` gives ``2**-m``."""
        r = as_rational(r)
        return cls((), r, f"geometric:{r}")

    @classmethod
    def finite(cls, probs) -> "DigitLaw":
        probs = tuple(as_rational(p) for p in probs)
        return cls(probs, None, "finite:" + ",".join(str(p) for p in probs))

    @property
    def tail_mass(self) -> Fraction:
        return 1 - sum(self.head, Fraction(0))

    def prob(self, m: int) -> Fraction:
        if m < 1:
            return Fraction(0)
        n = len(self.head)
        if m <= n:
            return self.head[m - 1]
        if self.ratio is None:
            return Fraction(0)
        return self.tail_mass * (1 - self.ratio) * self.ratio ** (m - n - 1)

    def survival(self, m: int) -> Fraction:
        """``P(d > m)``."""
        if m < 1:
            return Fraction(1)
        n = len(self.head)
        if m < n:
            return 1 - sum(self.head[:m], Fraction(0))
        if self.ratio is None:
            return Fraction(0)
        return self.tail_mass * self.ratio ** (m - n)

    def mode(self) -> int:
        best, best_p = 1, self.prob(1)
        for m in range(2, len(self.head) + 2):
            if self.prob(m) > best_p:
                best, best_p = m, self.prob(m)
        return best

    def quantile(self, numerator: int) -> int:
        """Smallest ``m`` with ``U < P(d <= m)`` for ``U = numerator / 2**128``."""
        cum = Fraction(0)
        for m, p in enumerate(self.head, 1):
            cum += p
            if numerator * cum.denominator < cum.numerator * SCALE:
                return m
        if self.ratio is None:
            # U < 1 always; only reachable through rounding of an exact-1 sum, which is excluded
            return len(self.head)
        # least j with P(d > n + j) = T r**j < 1 - U
        rest = Fraction(SCALE - numerator, SCALE)
        surv = self.tail_mass
        j = 0
        while surv >= rest:
            surv *= self.ratio
            j += 1
        return len(self.head) + max(j, 1)

    def spec(self) -> str:
        return self.name or f"law({len(self.head)} head terms, ratio {self.ratio})"


def parse_law(text: str) -> DigitLaw | None:
    """``lebesgue`` (returns None) | ``geometric:R`` | ``point:I`` | ``finite:P1,P2,...``."""
    kind, _, arg = text.strip().partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "lebesgue":
            return None
        if kind == "geometric":
            return DigitLaw.geometric(arg)
        if kind == "point":
            return DigitLaw.point_mass(int(arg))
        if kind == "finite":
            return DigitLaw.finite(p for p in arg.split(",") if p.strip())
    except (ValueError, DomainError) as exc:
        raise InvalidLaw(f"bad law {text!r}: {exc}") from None
    raise InvalidLaw(f"unknown law {text!r}; expected lebesgue, geometric:R, point:I or finite:P1,P2,...")


def law_spec(law: DigitLaw | None) -> str:
    return "lebesgue" if law is None else law.spec()


# --------------------------------------------------------------------------- rng


def path_rng(seed: int, group: int = 0, index: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), group, index])))


def uniform128(rng: np.random.Generator) -> int:
    """Numerator ``N`` of a uniform dyadic ``N / 2**128``."""
    hi, lo = (int(v) for v in rng.bit_generator.random_raw(2))
    return (hi << 64) | lo


# --------------------------------------------------------------------------- samplers


@dataclass(frozen=True)
class SampledPath:
    digits: BarO2Digits
    law: str
    seed: int
    depth: int


def lebesgue_next_digit(numerator: int, big_c) -> int:
    """Inverse CDF of ``P(d <= m | C) = m / (C + m)``: the least ``m > N C / (2**128 - N)``."""
    return numerator * big_c // (SCALE - numerator) + 1


def _lebesgue_digits(rng, depth, max_bits):
    c = None
    for _ in range(depth):
        big_c = 1 if c is None else c * (c + 1)
        d = lebesgue_next_digit(uniform128(rng), big_c)
        c = gmpy2.mpz(d) if c is None else big_c - 1 + d
        if c.bit_length() > max_bits:
            raise BudgetExceeded(f"companion exceeds {max_bits} bits", max_depth=None)
        yield d


def lebesgue_digit_sample(seed: int, depth: int = DEFAULT_DEPTH, *, index: int = 0,
                          max_bits: int = DEFAULT_MAX_BITS) -> SampledPath:
    """Digits of a Lebesgue-uniform point, drawn level by level from the exact conditional law."""
    if depth < 1:
        raise DomainError("depth must be >= 1")
    rng = path_rng(seed, LEBESGUE_GROUP, index)
    digits = tuple(int(d) for d in _lebesgue_digits(rng, depth, max_bits))
    return SampledPath(BarO2Digits(digits), "lebesgue", seed, depth)


def lebesgue_rank1_sample(seed: int, n: int) -> list[int]:
    """``n`` independent first digits under Lebesgue measure (one stream)."""
    rng = path_rng(seed, LEBESGUE_GROUP, 0)
    raw = rng.bit_generator.random_raw(2 * n).tolist()
    return [lebesgue_next_digit((raw[2 * i] << 64) | raw[2 * i + 1], 1) for i in range(n)]


def iid_sample(law: DigitLaw, seed: int, depth: int = IID_DEPTH, *, index: int = 0) -> SampledPath:
    if not isinstance(law, DigitLaw):
        raise InvalidLaw("iid_sample needs a DigitLaw")
    rng = path_rng(seed, IID_GROUP, index)
    digits = tuple(_iid_digits(law, rng, depth))
    return SampledPath(BarO2Digits(digits), law.spec(), seed, depth)


def _iid_digits(law, rng, depth):
    raw = rng.bit_generator.random_raw(2 * depth).tolist()
    for i in range(depth):
        yield law.quantile((raw[2 * i] << 64) | raw[2 * i + 1])


# --------------------------------------------------------------------------- distribution of eta


def eta_cdf(x, law: DigitLaw, depth: int = DEFAULT_DEPTH) -> tuple[Fraction, Fraction]:
    """Enclosure of ``P(η <= x)`` for i.i.d. digits with the given law.

    Walks the cylinders containing ``x``.  Under an even-rank parent
    (including the whole interval) children run right to left as the digit
    grows; under an odd-rank parent they run left to right.  Siblings on the
    left of x's cylinder contribute their full mass.
    """
    x = as_rational(x)
    if not 0 <= x <= 1:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if x == 0:
        return Fraction(0), Fraction(0)
    if x == 1:
        return Fraction(1), Fraction(1)
    expansion = o2_to_bar(remez_expand(x, depth))
    acc, w = Fraction(0), Fraction(1)
    for rank, j in enumerate(expansion.d, 1):
        odd_parent = (rank - 1) % 2 == 1
        if law.ratio is not None and j > GEOMETRIC_CUTOFF:
            # far-out digit: sibling masses are known only up to the tail beyond the cutoff
            if odd_parent:
                return acc + w * (1 - law.survival(GEOMETRIC_CUTOFF)), acc + w
            return acc, acc + w * law.survival(GEOMETRIC_CUTOFF)
        if odd_parent:
            acc += w * (1 - law.survival(j - 1))
        else:
            acc += w * law.survival(j)
        w *= law.prob(j)
        if w == 0:
            return acc, acc
    if expansion.terminated:
        # x is the right end of an odd-rank cylinder, the left end of an even one
        if len(expansion) % 2 == 1:
            acc += w
        return acc, acc
    return acc, acc + w


# --------------------------------------------------------------------------- experiments


def _path_stats(law_text, seed, group, index, depth, tracked, max_bits):
    law = parse_law(law_text)
    rng = path_rng(seed, group, index)
    digits = _lebesgue_digits(rng, depth, max_bits) if law is None else _iid_digits(law, rng, depth)
    counts = dict.fromkeys(tracked, 0)
    late = dict.fromkeys(tracked, 0)
    for k, d in enumerate(digits, 1):
        if d in counts:
            counts[int(d)] += 1
            if k >= LATE_START:
                late[int(d)] += 1
    return {
        "seed": seed,
        "group": group,
        "path": index,
        "law": law_text,
        "depth": depth,
        "counts": counts,
        "late_counts": late,
        "freqs": {i: Fraction(n, depth) for i, n in counts.items()},
    }


def _star(args):
    return _path_stats(*args)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("OSTRO_JOBS", "1")))
    except ValueError:
        return 1


def _run_paths(tasks, jobs):
    if jobs <= 1 or len(tasks) < 2:
        return [_star(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_star, tasks))


def envelope(depth: int, tracked=TRACKED, start: int = LATE_START) -> Fraction:
    """Upper bound on the expected number of events ``d_k = i`` (``k >= start``, i tracked) per path.

    Uses ``λ(d_k = i) <= 1/2**(2**(k-2))``; levels past 8 are folded into
    a single tail term to keep denominators small.
    """
    last = min(depth, 8)
    total = sum((Fraction(len(tracked), 1 << (1 << (k - 2))) for k in range(max(start, 2), last + 1)), Fraction(0))
    if depth > last:
        total += Fraction(2 * len(tracked), 1 << (1 << (last - 1)))
    return total


def frequency_experiment(law: DigitLaw | None, n_paths: int, depth: int, seed: int,
                         tracked=TRACKED, jobs: int = 1, group: int | None = None,
                         max_bits: int = DEFAULT_MAX_BITS):
    """Per-path digit counts and an aggregate; ``law=None`` samples Lebesgue measure."""
    if n_paths < 1 or depth < 1:
        raise DomainError("n_paths and depth must be positive")
    tracked = tuple(sorted(set(int(i) for i in tracked)))
    if group is None:
        group = LEBESGUE_GROUP if law is None else IID_GROUP
    text = law_spec(law)
    tasks = [(text, seed, group, i, depth, tracked, max_bits) for i in range(n_paths)]
    records = _run_paths(tasks, jobs)
    totals = {i: sum(r["counts"][i] for r in records) for i in tracked}
    late = {i: sum(r["late_counts"][i] for r in records) for i in tracked}
    aggregate = {
        "law": text,
        "paths": n_paths,
        "depth": depth,
        "seed": seed,
        "totals": totals,
        "late_totals": late,
        "late_events": sum(late.values()),
        "mean_freqs": {i: Fraction(totals[i], n_paths * depth) for i in tracked},
    }
    if law is None:
        aggregate["late_envelope_per_path"] = envelope(depth, tracked)
    else:
        aggregate["expected_freqs"] = {i: law.prob(i) for i in tracked}
    return records, aggregate


def _mean_sd(values):
    n = len(values)
    mean = sum(values, Fraction(0)) / n
    if n < 2:
        return mean, 0.0
    var = sum(((v - mean) ** 2 for v in values), Fraction(0)) / (n - 1)
    return mean, math.sqrt(var)


def singularity_diagnostic(law: DigitLaw | None, n_paths: int, depth: int, seed: int,
                           sigma: float = 5.0, jobs: int = 1, max_bits: int = DEFAULT_MAX_BITS):
    """Compare ``ν̂_{i0}`` between i.i.d. paths and Lebesgue paths.

    ``i0`` is the most likely digit of the law.  Separation is flagged when
    the gap between the group means exceeds ``sigma`` standard errors of
    that difference.  ``law=None`` runs a Lebesgue-versus-Lebesgue control.
    """
    i0 = 1 if law is None else law.mode()
    rec_a, _ = frequency_experiment(law, n_paths, depth, seed, (i0,), jobs,
                                    group=IID_GROUP, max_bits=max_bits)
    rec_b, _ = frequency_experiment(None, n_paths, depth, seed, (i0,), jobs,
                                    group=LEBESGUE_GROUP, max_bits=max_bits)
    mean_a, sd_a = _mean_sd([r["freqs"][i0] for r in rec_a])
    mean_b, sd_b = _mean_sd([r["freqs"][i0] for r in rec_b])
    gap = mean_a - mean_b
    se = math.sqrt(sd_a**2 / n_paths + sd_b**2 / n_paths)
    if se == 0:
        separated = gap > 0
    else:
        separated = float(gap) > sigma * se
    return {
        "law": law_spec(law),
        "digit": i0,
        "paths": n_paths,
        "depth": depth,
        "seed": seed,
        "iid_mean": mean_a,
        "iid_sd": sd_a,
        "lebesgue_mean": mean_b,
        "lebesgue_sd": sd_b,
        "gap": gap,
        "standard_error": se,
        "sigma": sigma,
        "separation": separated,
    }
