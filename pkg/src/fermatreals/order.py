"""Order-of-infinitesimal machinery.

The order of a value is the largest order among its terms (0 for plain
reals).  Around it live the nilpotency ideals, exact decision procedures
for products of powers of infinitesimals, the truncation order arising in
cancellation laws, and the total order on values.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .core import FermatReal, as_fermat, leading_sign, neg, sub, _as_rational
from .errors import LengthMismatchError, NoFiniteOrderError, ProductIsZeroError

#: Orders are exact rationals; 0 encodes a standard real, and finite
#: nonzero orders are always >= 1.
OrderValue = Fraction


class Verdict(Enum):
    """Outcome of comparing two values under the total order."""

    LT = "LT"
    EQ = "EQ"
    GT = "GT"


def _as_level(a, what: str):
    """Ideal subscripts: nonnegative rationals, or math.inf."""
    if isinstance(a, float) and math.isinf(a) and a > 0:
        return math.inf
    q = _as_rational(a, what)
    if q < 0:
        raise ValueError(f"{what} must be >= 0, got {q}")
    return q


def order(x) -> Fraction:
    """Largest order in the decomposition; 0 for a standard real."""
    x = as_fermat(x)
    if not x.terms:
        return Fraction(0)
    return x.terms[0].order


def in_ideal(x, a) -> bool:
    """Whether x is nilpotent at level a: zero standard part and order
    < a + 1.  Level math.inf admits every infinitesimal."""
    x = as_fermat(x)
    if x.std != 0.0:
        return False
    level = _as_level(a, "ideal level")
    if level is math.inf:
        return True
    return order(x) < level + 1


def nilpotency_index(x) -> int | None:
    """Smallest k with x**k == 0, or None when no power vanishes.

    Zero has index 1; anything with a nonzero standard part is
    invertible-up-to-infinitesimals and never nilpotent; otherwise the
    index is floor(order) + 1.
    """
    x = as_fermat(x)
    if x.std != 0.0:
        return None
    if not x.terms:
        return 1
    return math.floor(order(x)) + 1


def _reciprocal_order_sum(orders: Sequence, exps: Sequence[int]) -> Fraction:
    if len(orders) != len(exps) or not orders:
        raise LengthMismatchError(
            f"need equal nonzero lengths, got {len(orders)} orders and "
            f"{len(exps)} exponents"
        )
    total = Fraction(0)
    for w, i in zip(orders, exps):
        wq = _as_rational(w, "factor order")
        if wq < 1:
            raise ValueError(f"factor orders must be >= 1, got {wq}")
        if not isinstance(i, int) or isinstance(i, bool) or i < 1:
            raise ValueError(f"power exponents must be naturals >= 1, got {i!r}")
        total += Fraction(i) / wq
    return total


def product_power_zero(orders: Sequence, exps: Sequence[int]) -> bool:
    """Decide whether a product of powers of nonzero infinitesimals is 0.

    For factors of orders w_k raised to naturals i_k, the product
    vanishes exactly when sum(i_k / w_k) > 1.  The test is exact
    rational arithmetic and agrees with actually multiplying out the
    corresponding dt generators.
    """
    return _reciprocal_order_sum(orders, exps) > 1


def product_power_order(orders: Sequence, exps: Sequence[int]) -> Fraction:
    """Order of a nonzero product of powers: 1 / sum(i_k / w_k)."""
    total = _reciprocal_order_sum(orders, exps)
    if total > 1:
        raise ProductIsZeroError(
            f"product of powers is zero: reciprocal-order sum {total} exceeds 1"
        )
    return 1 / total


def ideal_of_product(orders: Sequence, exps: Sequence[int], p) -> bool:
    """Whether the product of powers is a nonzero member of the level-p
    ideal: 1/(p+1) < sum(i_k / w_k) <= 1."""
    pq = _as_rational(p, "ideal level")
    if pq <= 0:
        raise ValueError(f"ideal level must be > 0, got {pq}")
    total = _reciprocal_order_sum(orders, exps)
    return Fraction(1, 1) / (pq + 1) < total <= 1


def cancellation_order(j: Sequence[int], alpha: Sequence) -> Fraction:
    """Truncation order k balancing 1/k + sum(j_i / (alpha_i + 1)) = 1.

    Multiplying by a tuple of powers h**j with h_i nilpotent at level
    alpha_i only sees a factor up to k-th order infinitesimals; this
    computes that k exactly.
    """
    if len(j) != len(alpha) or not j:
        raise LengthMismatchError(
            f"need equal nonzero lengths, got {len(j)} powers and "
            f"{len(alpha)} levels"
        )
    if all(ji == 0 for ji in j):
        raise ValueError("power vector must not be all zeros")
    total = Fraction(0)
    for ji, ai in zip(j, alpha):
        if not isinstance(ji, int) or isinstance(ji, bool) or ji < 0:
            raise ValueError(f"powers must be naturals, got {ji!r}")
        aq = _as_rational(ai, "nilpotency level")
        if aq <= 0:
            raise ValueError(f"nilpotency levels must be > 0, got {aq}")
        total += Fraction(ji) / (aq + 1)
    if total >= 1:
        raise NoFiniteOrderError(
            f"no finite truncation order: level sum {total} reaches 1"
        )
    return 1 / (1 - total)


def compare(x, y) -> Verdict:
    """Total-order comparison via the sign of the canonical difference."""
    s = leading_sign(sub(as_fermat(x), as_fermat(y)))
    if s < 0:
        return Verdict.LT
    if s > 0:
        return Verdict.GT
    return Verdict.EQ


def absolute(x) -> FermatReal:
    """|x| under the total order."""
    x = as_fermat(x)
    return neg(x) if leading_sign(x) < 0 else x
