"""Numerical constants shared by the verification pipelines."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

_TEN42 = 10**42


@dataclass(frozen=True)
class Constants:
    # C5-blow-up inequality: C••(G*) >= -A + B * C(G*) whenever C(G*) > c5_threshold
    A: Fraction = Fraction("0.175431374077117")
    B: Fraction = Fraction("8.75407592662244")
    A_rational: Fraction = Fraction(175431374077116112876105446118032690611106, _TEN42)
    B_rational: Fraction = Fraction(8754075926622441195046069111932573299245056, _TEN42)
    c5_threshold: Fraction = Fraction("0.03")
    cstar_large: Fraction = Fraction("0.0384609")
    d_split: Fraction = Fraction("0.2")
    box_lo: Fraction = Fraction("0.166")
    box_hi: Fraction = Fraction("0.234")
    slack: Fraction = Fraction("0.0001")
    c166_bound: Fraction = Fraction("0.04086")
    n_large: int = 1000

    def as_dict(self) -> dict:
        return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in asdict(self).items()}


DEFAULT = Constants()
