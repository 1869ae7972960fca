"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from fermatreals import (
    FermatReal,
    ZERO,
    add,
    canonicalize,
    dt,
    in_ideal,
    mul,
    order,
    pow_nat,
)

F = Fraction

# Potential exponents in (0, 1] with small denominators (orders 1..6).
EXP_POOL = sorted({F(p, q) for q in range(1, 7) for p in range(1, q + 1)})


def rand_coeff(rng: random.Random, lo: float = 0.25, hi: float = 3.0) -> float:
    mag = rng.uniform(lo, hi)
    return mag if rng.random() < 0.5 else -mag


def rand_fermat(
    rng: random.Random,
    max_terms: int = 4,
    zero_std_prob: float = 0.35,
    lo: float = 0.25,
    hi: float = 3.0,
) -> FermatReal:
    """A random canonical value with benign coefficient magnitudes."""
    std = 0.0 if rng.random() < zero_std_prob else rand_coeff(rng, lo, hi)
    k = rng.randint(0, max_terms)
    exps = rng.sample(EXP_POOL, k)
    return canonicalize(std, [(rand_coeff(rng, lo, hi), e) for e in exps])


def rand_infinitesimal(
    rng: random.Random, min_terms: int = 1, max_terms: int = 3
) -> FermatReal:
    k = rng.randint(min_terms, max_terms)
    exps = rng.sample(EXP_POOL, k)
    return canonicalize(0.0, [(rand_coeff(rng), e) for e in exps])


# Orders at most 4 and coefficients below the standard part keep the
# geometric series of the inverse well conditioned.
_LOW_ORDER_POOL = sorted({F(p, q) for q in range(1, 5) for p in range(1, q + 1)})


def rand_invertible(rng: random.Random) -> FermatReal:
    std = rng.uniform(1.0, 3.0) * rng.choice((-1, 1))
    exps = rng.sample(_LOW_ORDER_POOL, rng.randint(0, 3))
    return canonicalize(std, [(rand_coeff(rng, 0.1, 1.0), e) for e in exps])


# -- dict-based term-multiset oracle --------------------------------------

def to_dict(x: FermatReal) -> dict[Fraction, float]:
    d = {F(0): x.std}
    for t in x.terms:
        d[t.exp] = t.coeff
    return d


def _squash(buckets: dict[Fraction, list[float]]) -> dict[Fraction, float]:
    out = {F(0): math.fsum(buckets.pop(F(0), [0.0]))}
    for e, parts in buckets.items():
        c = math.fsum(parts)
        if c != 0.0:
            out[e] = c
    return out


def oracle_add(a: dict, b: dict) -> dict[Fraction, float]:
    buckets: dict[Fraction, list[float]] = {}
    for d in (a, b):
        for e, c in d.items():
            buckets.setdefault(e, []).append(c)
    return _squash(buckets)


def oracle_neg(a: dict) -> dict[Fraction, float]:
    return {e: -c for e, c in a.items()}


def oracle_sub(a: dict, b: dict) -> dict[Fraction, float]:
    return oracle_add(a, oracle_neg(b))


def oracle_mul(a: dict, b: dict) -> dict[Fraction, float]:
    buckets: dict[Fraction, list[float]] = {}
    for ea, ca in a.items():
        if ca == 0.0 and ea == 0:
            continue
        for eb, cb in b.items():
            if cb == 0.0 and eb == 0:
                continue
            e = ea + eb
            if e <= 1:
                buckets.setdefault(e, []).append(ca * cb)
    return _squash(buckets)


def dicts_equal(a: dict, b: dict) -> bool:
    ka = {e for e, c in a.items() if c != 0.0 or e == 0}
    kb = {e for e, c in b.items() if c != 0.0 or e == 0}
    if ka != kb:
        return False
    return all(a.get(e, 0.0) == b.get(e, 0.0) for e in ka)


def assert_fermat_close(x: FermatReal, y: FermatReal, tol: float = 1e-12):
    """Same exponent support, coefficients within a relative tolerance."""
    dx, dy = to_dict(x), to_dict(y)
    for e in sorted(set(dx) | set(dy)):
        cx, cy = dx.get(e, 0.0), dy.get(e, 0.0)
        bound = tol * max(1.0, abs(cx), abs(cy))
        assert abs(cx - cy) <= bound, (
            f"coefficient mismatch at exponent {e}: {cx!r} vs {cy!r} "
            f"(|diff|={abs(cx - cy):.3e} > {bound:.3e})\n  x={x}\n  y={y}"
        )


def fd_central(f, x: float, step: float = 1e-5) -> float:
    return (f(x + step) - f(x - step)) / (2 * step)


def dt_chain(orders, exps) -> FermatReal:
    """Explicit multiplication of powers of dt generators."""
    acc = canonicalize(1.0, [])
    for w, i in zip(orders, exps):
        acc = mul(acc, pow_nat(dt(w), i))
    return acc


def first_differential(x: FermatReal) -> FermatReal:
    """The highest-order term alone; zero for plain reals."""
    return FermatReal(0.0, x.terms[:1])


# -- the nine ideal/order property checks ----------------------------------

def check_ideal_properties(rng: random.Random, trials: int) -> None:
    """Randomized verification of the nilpotency-ideal property bundle."""
    for _ in range(trials):
        x = rand_infinitesimal(rng)
        y = rand_infinitesimal(rng)

        # monotone ideals: a <= b implies membership carries over
        a = order(x) + F(rng.randint(0, 4), 2)
        b = a + F(rng.randint(0, 4), 2)
        assert in_ideal(x, a) and in_ideal(x, b)

        # every infinitesimal sits in the ideal at its own order
        assert in_ideal(x, order(x))

        # integer level: membership == vanishing of the (a+1)-th power
        n = rng.randint(1, 5)
        assert in_ideal(x, n) == (pow_nat(x, n + 1) == ZERO)

        # rational level: membership forces the ceiling power to vanish
        level = F(rng.randint(1, 12), rng.randint(1, 4))
        if in_ideal(x, level):
            assert pow_nat(x, math.ceil(level) + 1) == ZERO

        # floor of the order pins the membership threshold
        k = math.floor(order(x))
        assert in_ideal(x, k)
        assert not in_ideal(x, k - 1)

        # leading term of a product is the product of leading terms
        xy = mul(x, y)
        if xy != ZERO:
            assert first_differential(xy) == mul(
                first_differential(x), first_differential(y)
            )
            # reciprocal orders add under multiplication
            assert 1 / order(xy) == 1 / order(x) + 1 / order(y)

        # order of a sum is the max (leading orders distinct, no cancellation)
        if order(x) != order(y):
            s = add(x, y)
            assert s != ZERO and order(s) == max(order(x), order(y))

        # ideal closure: sums stay in, products with anything stay in
        level = max(order(x), order(y))
        assert in_ideal(add(x, y), level)
        z = rand_fermat(rng)
        assert in_ideal(mul(x, z), level)

    # ceiling counter-case: level 1.2, generator of order 2.1
    x = dt("21/10")
    assert in_ideal(x, F(6, 5))
    assert pow_nat(x, 2) != ZERO  # floor(1.2) + 1 = 2 does not kill it
    assert pow_nat(x, 3) == ZERO  # ceil(1.2) + 1 = 3 does


# -- parser fuzz corpus -----------------------------------------------------

FUZZ_CORPUS = [
    "1 + dt[3] + dt[2] + dt[1]",
    "(1+dt[2])^-1",
    "3 - 2*dt[3/2]",
    "sin(x)*cos(y) - tan(z)/atan(w)",
    "dt[21/10]^3 / (1 + dt[2])",
    "pow(1+dt[2], 1/2) + log(2, 4)",
    "exp(ln(sqrt(recip(2))))",
    "2+3*dt[2]^2",
    "-x^2 + 1.5e-3*dt[6]",
    "u0*sin(x + 2*t)",
]

_FUZZ_ALPHABET = "0123456789+-*/^()[]dt.,exp sinlogcatqru_"


def mutate(rng: random.Random, text: str) -> str:
    s = list(text)
    for _ in range(rng.randint(1, 4)):
        op = rng.randrange(4)
        if not s:
            op = 1
        if op == 0:
            del s[rng.randrange(len(s))]
        elif op == 1:
            s.insert(rng.randint(0, len(s)), rng.choice(_FUZZ_ALPHABET))
        elif op == 2:
            s[rng.randrange(len(s))] = rng.choice(_FUZZ_ALPHABET)
        else:
            i = rng.randrange(len(s))
            j = rng.randrange(len(s))
            s[i], s[j] = s[j], s[i]
    return "".join(s)
