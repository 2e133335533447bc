"""Even continued fractions and the integer spin defect of lens spaces.

A lens space L(p, q) (the -p/q surgery on the unknot, with the convention
L(p, q) = L(|p|, sgn(p) q)) carries one spin structure when p is odd and two
when p is even.  Labelling the structure by a sign eps, the spin defect
sigma(q, p, eps) is the integer correction term relating the signature of a
spin 4-manifold bounded by the lens space to the index of its Dirac operator.

Three independent evaluations are provided:

* ``sigma`` -- exact integer arithmetic.  The value is pinned down by a small
  rewrite system: shifting q by p flips eps, sigma is odd under negating
  either argument, sigma(q, 1, eps) = 0, reciprocity in (q, p), and a closed
  form through even continued fractions.
* ``sigma_trig`` -- a cotangent/cosecant sum evaluated in floating point and
  rounded.  Numerical cross-check only; never used by the exact route.
* ``even_cf_expand`` / ``cf_eval`` -- expansion of p/q as
  [[a_1, ..., a_n]] = a_1 - 1/(a_2 - 1/(... - 1/a_n)) with all a_i even,
  |a_i| >= 2.  When p + q is odd, eps = -1 and |p| > |q|,
  sigma(q, p, -1) = -sum_i sgn(a_i).

When p is odd only eps = (-1)**(q-1) labels an honest spin structure.  For
the other sign the trig sum is a non-integral rational (for example the
(q, p, eps) = (1, 3, -1) sum equals 2/9), so ``sigma_trig`` reports a
precision failure there.  ``sigma`` stays total: on those arguments it is
defined by extending the reciprocity rule to same-parity pairs, which is the
unique Euclidean-terminating extension compatible with the shift and sign
rules.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .errors import PrecisionError

__all__ = [
    "even_cf_expand",
    "cf_eval",
    "sigma",
    "sigma_trig",
    "TrigSum",
    "SIGMA_TRIG_TOL",
    "is_spin_sign_admissible",
    "sgn",
]

#: |sigma_trig - round(sigma_trig)| must stay below this, or we refuse to round.
SIGMA_TRIG_TOL = 1e-6


def sgn(x) -> int:
    """Sign of a number as -1, 0 or +1."""
    return (x > 0) - (x < 0)


def _check_eps(eps: int) -> None:
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps!r}")


def is_spin_sign_admissible(q: int, p: int, eps: int) -> bool:
    """Whether eps labels a spin structure on L(p, q).

    For p even both signs do; for p odd only eps = (-1)**(q-1).
    """
    _check_eps(eps)
    if p % 2 == 0:
        return True
    return eps == (1 if q % 2 == 1 else -1)


# ---------------------------------------------------------------------------
# even continued fractions


def _nearest_even(p: int, q: int) -> int:
    # The unique even a with |p - a*q| < |q|.  A tie |p - a*q| = |q| would
    # force q | p, impossible for coprime input with |q| >= 1 unless the
    # remainder is 0, which the caller handles by terminating.
    if q < 0:
        p, q = -p, -q
    b, r = divmod(p, 2 * q)
    if r > q:
        b += 1
    elif r == q:
        raise AssertionError(f"even-quotient tie for {p}/{q}; input not coprime?")
    return 2 * b


def even_cf_expand(p: int, q: int) -> tuple[int, ...]:
    """Expand p/q as [[a_1, ..., a_n]] with every a_i even, |a_i| >= 2.

    Exists and is unique exactly when gcd(p, q) = 1, p + q is odd and
    |p| > |q| >= 1.  Each step takes the unique even a with |p - a*q| < |q|
    and recurses on (q, a*q - p).
    """
    if q == 0:
        raise ValueError("q must be nonzero")
    if math.gcd(p, q) != 1:
        raise ValueError(f"{p}/{q} is not in lowest terms")
    if (p + q) % 2 == 0:
        raise ValueError(
            f"{p}/{q} has no even expansion (p and q have the same parity); "
            "reduce with the shift/sign rules first"
        )
    if abs(p) <= abs(q):
        raise ValueError(f"need |p| > |q|, got {p}/{q}")
    entries = []
    while q != 0:
        a = _nearest_even(p, q)
        entries.append(a)
        p, q = q, a * q - p
    return tuple(entries)


def _check_cf_entries(entries) -> tuple[int, ...]:
    entries = tuple(entries)
    for a in entries:
        if not isinstance(a, int) or a % 2 != 0 or abs(a) < 2:
            raise ValueError(f"invalid even continued fraction entry {a!r}")
    return entries


def cf_eval(entries) -> Fraction:
    """Value of [[a_1, ..., a_n]] = a_1 - 1/(a_2 - ... - 1/a_n) as a Fraction.

    Every tail of a valid even expansion has absolute value > 1, so the
    nested divisions never blow up; we assert that as we fold.
    """
    entries = _check_cf_entries(entries)
    if not entries:
        raise ValueError("empty continued fraction has no rational value")
    val = Fraction(entries[-1])
    for a in reversed(entries[:-1]):
        assert abs(val) > 1, "even continued fraction tail <= 1 in absolute value"
        val = a - 1 / val
    return val


# ---------------------------------------------------------------------------
# exact sigma


def sigma(q: int, p: int, eps: int) -> int:
    """The spin defect of L(p, q) with spin structure labelled eps, exactly.

    Total on coprime pairs with p != 0.  Reductions applied, in order: make
    p positive and q positive (each negation flips the overall sign), shift
    q modulo 2p (eps-preserving) and reflect into 0 < q < p, then:

    * q, p of opposite parity, eps = -1: read off the even continued
      fraction of p/q;
    * opposite parity, eps = +1: shift q by p (flipping eps) and, when the
      shifted pair has opposite parity, swap via reciprocity
      sigma(q', p, -1) = -sgn(p q') - sigma(p, q', -1) before expanding;
    * both odd: one eps reduces to the previous bullet; the other never
      meets the base rules and is evaluated by extending reciprocity to
      same-parity pairs (see the module docstring).
    """
    _check_eps(eps)
    if p == 0:
        raise ValueError("p must be nonzero")
    if math.gcd(p, q) != 1:
        raise ValueError(f"q = {q} and p = {p} are not coprime")
    return _sigma(q, p, eps)


def _sigma(q: int, p: int, e: int) -> int:
    if p < 0:
        return -_sigma(q, -p, e)
    if p == 1:
        return 0
    s = 1
    if q < 0:
        q, s = -q, -s
    q %= 2 * p  # even multiple of p: eps unchanged
    if q > p:
        q, s = 2 * p - q, -s  # q -> -q mod 2p, another sign flip
    # now 0 < q < p and the pair is still coprime
    if (p + q) % 2 == 1:
        if e == -1:
            return -s * _cf_sign_sum(p, q)
        if p % 2 == 0:
            # shift q by p (eps -> -1), then reciprocity + expansion of (q+p)/p
            return s * (_cf_sign_sum(q + p, p) - 1)
        # p odd, q even, eps = +1 is not a spin sign; shift into the
        # same-parity pocket and use the reciprocity extension there.
        return -s * _sigma_ext(p - q, p)
    if e == 1:
        # both odd; one shift lands on (q+p even, eps=-1) with q+p > p,
        # so reciprocity applies directly
        return s * (_cf_sign_sum(q + p, p) - 1)
    return s * _sigma_ext(q, p)


def _sigma_ext(q: int, p: int) -> int:
    # both odd, 0 < q < p, eps = -1: not reachable by the defining rules;
    # extend reciprocity sigma(q,p,-1) + sigma(p,q,-1) = -1 as the definition
    return -1 - _sigma(p, q, -1)


def _cf_sign_sum(p: int, q: int) -> int:
    return sum(sgn(a) for a in even_cf_expand(p, q))


# ---------------------------------------------------------------------------
# floating-point cross-check


class TrigSum(NamedTuple):
    value: float
    rounded: int


def sigma_trig(q: int, p: int, eps: int, tol: float = SIGMA_TRIG_TOL) -> TrigSum:
    """The defining trigonometric sum for sigma(q, p, eps), rounded.

    Computes (1/p) * sum_{k=1}^{|p|-1} [cot(pi k/p) cot(pi k q/p)
    + 2 eps**k csc(pi k/p) csc(pi k q/p)] after normalizing p > 0 via
    L(p, q) = L(|p|, sgn(p) q).  Compensated summation (math.fsum) keeps the
    error far below ``tol`` for |p| up to a few hundred.

    Raises PrecisionError when the sum is not within ``tol`` of an integer.
    That is the expected outcome for the sign choices that do not label a
    spin structure (p odd, eps = (-1)**q), where the sum is a non-integral
    rational.
    """
    _check_eps(eps)
    if p == 0:
        raise ValueError("p must be nonzero")
    if math.gcd(p, q) != 1:
        raise ValueError(f"q = {q} and p = {p} are not coprime")
    if p < 0:
        q, p = -q, -p
    terms = []
    for k in range(1, p):
        # reduce k*q mod p before multiplying by pi/p; cot has period pi,
        # csc picks up (-1)**m under a shift by m*pi
        m, r = divmod(k * q, p)
        t1 = math.pi * k / p
        t2 = math.pi * r / p
        cot = math.cos(t1) / math.sin(t1) * (math.cos(t2) / math.sin(t2))
        csc = (-1.0 if m % 2 else 1.0) / (math.sin(t1) * math.sin(t2))
        terms.append(cot + 2.0 * (eps**k) * csc)
    value = math.fsum(terms) / p
    rounded = round(value)
    if abs(value - rounded) >= tol:
        raise PrecisionError(
            f"sigma_trig({q}, {p}, {eps:+d}) = {value!r} is not within "
            f"{tol} of an integer"
        )
    return TrigSum(value, int(rounded))
