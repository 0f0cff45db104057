"""Balance of optimal blow-ups and the threshold facts about C(n*)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .blowup import CycleTable, partition_cycle_count, shared_table
from .constants import DEFAULT, Constants


def balanced_sizes(n: int) -> tuple[int, ...]:
    k, a = divmod(n, 5)
    return tuple([k + 1] * a + [k] * (5 - a))


def descending_compositions(n: int, parts: int = 5, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    cap = n if cap is None else cap
    if parts == 1:
        if 1 <= n <= cap:
            yield (n,)
        return
    for s in range(min(cap, n - parts + 1), -(-n // parts) - 1, -1):
        for rest in descending_compositions(n - s, parts - 1, s):
            yield (s,) + rest


@dataclass
class BalanceReport:
    verdict: bool
    n_max: int
    nodes: int = 0
    leaves: int = 0
    witness: tuple | None = None

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "n_max": self.n_max, "nodes": self.nodes, "leaves": self.leaves, "witness": self.witness}


def _max_power_sum(m: int, r: int, cap: int) -> int:
    """Largest sum of fifth powers of r integers in [1, cap] summing to m."""
    # a convex sum is largest when all but one part sit at an endpoint
    big, rem = divmod(m - r, cap - 1) if cap > 1 else (0, 0)
    if cap == 1:
        return r
    big = min(big, r)
    if big == r:
        return r * cap**5
    return big * cap**5 + (rem + 1) ** 5 + (r - big - 1)


def verify_balance_small(n_max: int = 1000, table: CycleTable | None = None, n_min: int = 5) -> BalanceReport:
    """The balanced composition is the unique maximizer of the blow-up count for n_min <= n <= n_max.

    Depth-first over descending compositions.  A branch is cut when an upper
    bound on every completion is already below the balanced value: the product
    is bounded by AM-GM and the inner counts by c * s^5, where c is the largest
    count(m) / m^5 in the table.
    """
    table = table or shared_table(n_max)
    c = max(Fraction(table.count(m), m**5) for m in range(5, n_max + 1))
    report = BalanceReport(True, n_max)
    for n in range(n_min, n_max + 1):
        bal = balanced_sizes(n)
        target = partition_cycle_count(bal, table)
        witness = _search_beating(n, target, bal, table, c, report)
        if witness is not None:
            report.verdict = False
            report.witness = witness
            return report
    return report


def _search_beating(n: int, target: int, bal: tuple, table: CycleTable, c: Fraction, report: BalanceReport):
    counts = table.counts

    def rec(prefix: tuple, prod: int, inner: int, left: int, r: int, cap: int):
        report.nodes += 1
        if r == 0:
            report.leaves += 1
            value = prod + inner
            if prefix != bal and value >= target:
                return prefix
            return None
        # AM-GM: the remaining product is at most (left / r)^r
        if prod * Fraction(left, r) ** r + inner + c * _max_power_sum(left, r, cap) < target:
            return None
        for s in range(min(cap, left - r + 1), -(-left // r) - 1, -1):
            hit = rec(prefix + (s,), prod * s, inner + counts[s], left - s, r - 1, s)
            if hit is not None:
                return hit
        return None

    return rec((), 1, 0, n, 5, n)


def verify_balance_bruteforce(n: int, table: CycleTable | None = None) -> bool:
    """Plain enumeration of all descending compositions; reference for small n."""
    table = table or shared_table(max(n, 5))
    bal = balanced_sizes(n)
    target = partition_cycle_count(bal, table)
    return all(s == bal or partition_cycle_count(s, table) < target for s in descending_compositions(n))


# ---------------------------------------------------------------------------
# thresholds


@dataclass
class ThresholdReport:
    verdict: bool
    small_range: tuple[int, int]
    small_min: Fraction
    small_argmin: int
    large_range: tuple[int, int]
    large_min: Fraction
    large_argmin: int
    floor_bound_100: Fraction
    c166: Fraction
    nonincreasing: bool
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "small_range": list(self.small_range),
            "small_min": str(self.small_min),
            "small_min_float": float(self.small_min),
            "small_argmin": self.small_argmin,
            "large_range": list(self.large_range),
            "large_min": str(self.large_min),
            "large_min_float": float(self.large_min),
            "large_argmin": self.large_argmin,
            "floor_bound_100": str(self.floor_bound_100),
            "c166": str(self.c166),
            "c166_float": float(self.c166),
            "nonincreasing": self.nonincreasing,
            "failures": self.failures,
        }


def verify_cstar_thresholds(table: CycleTable | None = None, constants: Constants = DEFAULT) -> ThresholdReport:
    table = table or shared_table(5000)
    if table.n_max < 5000:
        raise ValueError("table must cover n = 5000")
    small = range(9, 100)
    large = range(constants.n_large, 5001)
    s_arg = min(small, key=table.cstar)
    l_arg = min(large, key=table.cstar)
    n = 100
    floor_bound = 120 * Fraction(n - 4, 5 * n) ** 5
    c166 = table.density(166)
    failures = []
    if not table.cstar(s_arg) > constants.c5_threshold:
        failures.append(f"C(n*) <= {constants.c5_threshold} at n={s_arg}")
    if not table.cstar(l_arg) > constants.cstar_large:
        failures.append(f"C(n*) <= {constants.cstar_large} at n={l_arg}")
    if not floor_bound > Fraction("0.031"):
        failures.append("floor bound at n=100 is not above 0.031")
    if not c166 <= constants.c166_bound:
        failures.append(f"C(166) = {float(c166)} exceeds {constants.c166_bound}")
    mono = all(table.density(m + 1) <= table.density(m) for m in range(5, 5000))
    if not mono:
        failures.append("C(n) is not non-increasing on [5, 5000]")
    return ThresholdReport(
        not failures,
        (small.start, small.stop - 1),
        table.cstar(s_arg),
        s_arg,
        (large.start, large.stop - 1),
        table.cstar(l_arg),
        l_arg,
        floor_bound,
        c166,
        mono,
        failures,
    )


def final_expression(n: int, i: int, C: Fraction) -> Fraction:
    return Fraction(n, 5 * n + i) ** 5 * (120 + 5 * Fraction(C) + Fraction(120 * i, n))


def induction_chain(n: int, i: int, table: CycleTable) -> tuple[Fraction, ...]:
    """The successive expressions of the induction step for C((5n+i)*), largest first."""
    m = 5 * n + i
    a, b = Fraction(n, m), Fraction(n + 1, m)
    cn, cn1 = table.cstar(n), table.cstar(n + 1)
    C = min(cn, cn1)
    exact = 120 * a ** (5 - i) * b**i + (5 - i) * a * a**4 * cn + i * b * b**4 * cn1
    step1 = 120 * a ** (5 - i) * b**i + a**4 * C
    step2 = Fraction(1, m**5) * (120 * (n**5 + i * n**4) + (5 * n**5 + i * n**4) * C)
    step3 = final_expression(n, i, C)
    return table.cstar(m), exact, step1, step2, step3


@dataclass
class InductionReport:
    verdict: bool
    n_range: tuple[int, int]
    min_final: Fraction | None = None
    base_values: list = field(default_factory=list)
    monotone: bool = True
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "n_range": list(self.n_range),
            "min_final": None if self.min_final is None else float(self.min_final),
            "base_values": [float(v) for v in self.base_values],
            "monotone": self.monotone,
            "failures": self.failures,
        }


def verify_proposition_step(n_lo: int = 1000, n_hi: int = 5000, table: CycleTable | None = None, constants: Constants = DEFAULT) -> InductionReport:
    """Check each link of the induction chain at every (n, i), exactly."""
    table = table or shared_table(5 * n_hi + 5)
    if table.n_max < 5 * n_hi + 4:
        raise ValueError(f"table must cover n = {5 * n_hi + 4}")
    report = InductionReport(True, (n_lo, n_hi))
    last = [None] * 5
    for n in range(n_lo, n_hi + 1):
        for i in range(5):
            value, exact, s1, s2, s3 = induction_chain(n, i, table)
            if value != exact:
                report.failures.append({"n": n, "i": i, "link": "recurrence"})
            # the last link is an equality when i = 0
            if not (exact >= s1 >= s2 >= s3):
                report.failures.append({"n": n, "i": i, "link": "chain"})
            # under the induction hypothesis C > cstar_large the final expression is non-decreasing in n
            # (constant when i = 0), so the base case carries over
            hyp = final_expression(n, i, constants.cstar_large)
            if n == n_lo:
                report.base_values.append(hyp)
                if not hyp > constants.cstar_large:
                    report.failures.append({"n": n, "i": i, "link": "base"})
            if last[i] is not None and hyp < last[i]:
                report.monotone = False
                report.failures.append({"n": n, "i": i, "link": "monotone"})
            last[i] = hyp
            if report.min_final is None or s3 < report.min_final:
                report.min_final = s3
    report.verdict = not report.failures
    return report


def claim4_large_constant(constants: Constants = DEFAULT, c166: Fraction | None = None, table: CycleTable | None = None) -> Fraction:
    """0.166^3 - (8 C(166) / 5!) 0.234^3, with C(166) from the table unless given."""
    if c166 is None:
        c166 = (table or shared_table(166)).density(166)
    return constants.box_lo**3 - Fraction(8) * Fraction(c166) / 120 * constants.box_hi**3
