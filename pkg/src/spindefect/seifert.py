"""Seifert fibered spaces over S^2, their spin structures, and the defect engine.

A closed Seifert fibration over the 2-sphere is recorded by its unnormalized
invariants {(a_1, b_1), ..., (a_m, b_m)} with a_i >= 1, gcd(a_i, b_i) = 1.
The Euler number is e = -sum(b_i / a_i); we insist e != 0 throughout (the
defect is not defined for the flat/degenerate case).

Spin structures are described by a mod-2 labelling c: one bit c(h) for the
fiber class and one bit c(g_i) per singular fiber, subject to

    a_i c(g_i) + b_i c(h) = a_i b_i      (mod 2)   for each i,
    sum_i c(g_i)          = 0            (mod 2).

``delta_engine`` evaluates the spin defect delta(S, c) for any such space
with at least one even a_i (every spherical space form with three singular
fibers has one): rearrange the data so the third fiber can be split off,
split off a lens-space piece from the first two, and add up lens defects.
The labelling is transported through shifts formally, without re-checking
the constraints, so the engine is usable on raw (a, b, c) triples too.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateEuler, NoAdmissibleRearrangement, NoSpinForm
from .sigma import sgn, sigma

__all__ = [
    "SeifertData",
    "SpinAssignment",
    "LensSpace",
    "euler_number",
    "spin_conditions_hold",
    "spin_enumerate",
    "shift_move",
    "reverse_orientation",
    "permute_fibers",
    "delta_engine",
    "parse_seifert",
    "parse_spin",
    "DEFAULT_SEARCH_BOUND",
]

#: widest coefficient shift tried when hunting for a usable rearrangement;
#: override per-call or via SPINDEFECT_SEARCH_BOUND
DEFAULT_SEARCH_BOUND = 6


@dataclass(frozen=True)
class SeifertData:
    """Unnormalized Seifert invariants {(a_i, b_i)} of a fibration over S^2."""

    pairs: tuple[tuple[int, int], ...]

    def __init__(self, pairs):
        pairs = tuple((int(a), int(b)) for a, b in pairs)
        if not 1 <= len(pairs) <= 3:
            raise ValueError("need between one and three (a, b) pairs")
        for a, b in pairs:
            if a < 1:
                raise ValueError(f"fiber multiplicity must be >= 1, got a = {a}")
            if math.gcd(a, b) != 1:
                raise ValueError(f"(a, b) = ({a}, {b}) is not coprime")
        if sum(Fraction(b, a) for a, b in pairs) == 0:
            raise DegenerateEuler(f"Euler number of {pairs} vanishes")
        mults = sorted(a for a, _ in pairs)
        if len(pairs) == 3 and mults[0] >= 2 and not _platonic(mults):
            # three genuinely singular fibers must sit over a spherical base
            raise ValueError(
                f"multiplicities {tuple(mults)} give infinite fundamental group; "
                "only (2,2,n), (2,3,3), (2,3,4), (2,3,5) are supported"
            )
        object.__setattr__(self, "pairs", pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.pairs)

    def is_spherical_candidate(self) -> bool:
        """True for three genuinely singular fibers over a spherical base.

        Multiplicities (2, 2, n), (2, 3, 3), (2, 3, 4) or (2, 3, 5) --
        together with e != 0 these are exactly the fibrations with finite
        fundamental group and three exceptional fibers.
        """
        mults = sorted(self.multiplicities)
        return len(mults) == 3 and mults[0] >= 2 and _platonic(mults)


def _platonic(sorted_mults) -> bool:
    x, y, z = sorted_mults
    return (x, y) == (2, 2) or (x == 2 and y == 3 and z in (3, 4, 5))


def euler_number(s: SeifertData) -> Fraction:
    """e = -sum(b_i / a_i), exactly."""
    return -sum(Fraction(b, a) for a, b in s)


@dataclass(frozen=True)
class SpinAssignment:
    """Mod-2 labels (c(g_1), ..., c(g_m); c(h)) of a candidate spin structure."""

    cg: tuple[int, ...]
    ch: int = 0

    def __init__(self, cg, ch=0):
        object.__setattr__(self, "cg", tuple(int(x) % 2 for x in cg))
        object.__setattr__(self, "ch", int(ch) % 2)


def spin_conditions_hold(s: SeifertData, c: SpinAssignment) -> bool:
    if len(c.cg) != len(s):
        raise ValueError("label count does not match fiber count")
    for (a, b), cg in zip(s, c.cg):
        if (a * cg + b * c.ch - a * b) % 2 != 0:
            return False
    return sum(c.cg) % 2 == 0


def spin_enumerate(s: SeifertData) -> list[SpinAssignment]:
    """All labellings satisfying the spin constraints, c(h)-major order.

    A space with some even multiplicity pins c(h) = 0; an all-odd space can
    admit c(h) = 1 labellings too.  Spherical spaces always have a 2-fiber,
    so there the list never contains ch = 1.
    """
    m = len(s)
    out = []
    for ch in (0, 1):
        for bits in itertools.product((0, 1), repeat=m):
            c = SpinAssignment(bits, ch)
            if spin_conditions_hold(s, c):
                out.append(c)
    if not out:
        raise NoSpinForm(f"{s.pairs} admits no spin labelling")
    return out


def shift_move(s: SeifertData, c: SpinAssignment, shifts) -> tuple[SeifertData, SpinAssignment]:
    """Replace (a_i, b_i) by (a_i, b_i - a_i k_i) for shifts k_i summing to 0.

    The total space is unchanged; the labelling is carried along by
    c(g_i) -> c(g_i) + k_i c(h) + k_i (mod 2).  Transport is formal: the
    input labels are not validated, so the move is also usable on raw data.
    """
    shifts = tuple(int(k) for k in shifts)
    if len(shifts) != len(s):
        raise ValueError("shift count does not match fiber count")
    if sum(shifts) != 0:
        raise ValueError(f"shifts must sum to 0, got {shifts}")
    if len(c.cg) != len(s):
        raise ValueError("label count does not match fiber count")
    new_pairs = [(a, b - a * k) for (a, b), k in zip(s, shifts)]
    new_cg = [(cg + k * c.ch + k) % 2 for cg, k in zip(c.cg, shifts)]
    return SeifertData(new_pairs), SpinAssignment(new_cg, c.ch)


def reverse_orientation(s: SeifertData, c: SpinAssignment) -> tuple[SeifertData, SpinAssignment]:
    """-S has invariants {(a_i, -b_i)}; the labelling is unchanged."""
    return SeifertData([(a, -b) for a, b in s]), SpinAssignment(c.cg, c.ch)


def permute_fibers(s: SeifertData, c: SpinAssignment, perm) -> tuple[SeifertData, SpinAssignment]:
    perm = tuple(perm)
    if sorted(perm) != list(range(len(s))):
        raise ValueError(f"{perm} is not a permutation of 0..{len(s) - 1}")
    return (
        SeifertData([s.pairs[i] for i in perm]),
        SpinAssignment([c.cg[i] for i in perm], c.ch),
    )


@dataclass(frozen=True)
class LensSpace:
    """L(p, q) with spin structure eps; p odd forces eps = (-1)**(q-1)."""

    p: int
    q: int
    eps: int

    def __init__(self, p, q, eps):
        p, q, eps = int(p), int(q), int(eps)
        if p == 0:
            raise ValueError("p must be nonzero")
        if math.gcd(p, q) != 1:
            raise ValueError(f"L({p}, {q}): parameters not coprime")
        if eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        if p < 0:
            p, q = -p, -q  # L(p, q) = L(|p|, sgn(p) q)
        if p % 2 == 1 and eps != (1 if q % 2 == 1 else -1):
            raise NoSpinForm(
                f"L({p}, {q}) with p odd has only the eps = {(-1) ** (q - 1):+d} structure"
            )
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "eps", eps)

    def defect(self) -> int:
        return sigma(self.q, self.p, self.eps)


# ---------------------------------------------------------------------------
# the engine


def _search_bound(bound) -> int:
    if bound is not None:
        return int(bound)
    env = os.environ.get("SPINDEFECT_SEARCH_BOUND")
    return int(env) if env else DEFAULT_SEARCH_BOUND


def _engine_value(pairs, cg, ch, u1, v1) -> Fraction:
    (a1, b1), (a2, b2), (a3, b3) = pairs
    q_split = a1 * b2 + a2 * b1
    p_split = a2 * v1 + b2 * u1
    # meridian label of the splitting torus; eps = +1 iff the label is 1
    cm = (u1 * cg[0] + v1 * ch + u1 * v1) % 2
    eps = 1 if cm == 1 else -1
    # self-pairing of the section class after splitting; nonzero iff e != 0
    s0 = Fraction(a1 * a2, q_split) + Fraction(a3, b3)
    if s0 == 0:
        raise DegenerateEuler("splitting produced a null section class")
    return sgn(s0) + sigma(p_split, q_split, eps) + sigma(a3, b3, -1)


def _usable(pairs, cg) -> bool:
    (a1, b1), (a2, b2), (_, b3) = pairs
    if cg[2] % 2 != 0:
        return False
    if (cg[0] + cg[1]) % 2 != 0:
        return False
    if a1 * b2 + a2 * b1 == 0:
        return False
    return b3 != 0


def _rearrangements(s, c, bound):
    # permutations first, then shift vectors in ball order, so small shifts win
    shift_vectors = sorted(
        (
            (k1, k2, -(k1 + k2))
            for k1 in range(-bound, bound + 1)
            for k2 in range(-bound, bound + 1)
            if abs(k1 + k2) <= bound
        ),
        key=lambda v: (sum(abs(x) for x in v), v),
    )
    for perm in itertools.permutations(range(3)):
        sp, cp = permute_fibers(s, c, perm)
        for ks in shift_vectors:
            yield shift_move(sp, cp, ks)


def delta_engine(s: SeifertData, c: SpinAssignment, bound: int | None = None) -> int:
    """delta(S, c) for a three-fiber space, by torus splitting.

    Searches permutations and coefficient shifts (|k_i| <= bound, default
    ``DEFAULT_SEARCH_BOUND`` or $SPINDEFECT_SEARCH_BOUND) for a presentation
    with c(g_3) = 0, c(g_1) + c(g_2) = 0, a_1 b_2 + a_2 b_1 != 0 and
    b_3 != 0.  Splitting along a vertical torus then writes the space as a
    union of two lens-space pieces glued to the third fiber's solid torus,
    and the defect is the sign of the section self-pairing plus two lens
    defects.  The labelling is taken at face value (see ``shift_move``).
    """
    if len(s) != 3:
        raise ValueError("the splitting engine needs exactly three fiber pairs")
    if len(c.cg) != 3:
        raise ValueError("label count does not match fiber count")
    if all(a % 2 == 1 for a in s.multiplicities):
        raise NoAdmissibleRearrangement(
            "splitting needs an even multiplicity among the a_i"
        )
    bound = _search_bound(bound)
    for sp, cp in _rearrangements(s, c, bound):
        pairs = sp.pairs
        if not _usable(pairs, cp.cg):
            continue
        a1, b1 = pairs[0]
        # a1 v1 - b1 u1 = 1 via the extended Euclidean identity
        g, x, y = _egcd(a1, b1)
        assert g == 1
        v1, u1 = x, -y
        value = _engine_value(pairs, cp.cg, cp.ch, u1, v1)
        assert value.denominator == 1, f"non-integral defect {value} from {pairs}"
        return int(value)
    raise NoAdmissibleRearrangement(
        f"no usable rearrangement of {s.pairs} with labels {c.cg} "
        f"within shift bound {bound}"
    )


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_x, x = x, old_x - qq * x
        old_y, y = y, old_y - qq * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


# ---------------------------------------------------------------------------
# parsing helpers shared with the CLI


def parse_seifert(text: str) -> SeifertData:
    """Parse "(a1,b1),(a2,b2),..." (whitespace ignored, brackets optional)."""
    stripped = "".join(text.split())
    if stripped.startswith("{") and stripped.endswith("}"):
        stripped = stripped[1:-1]
    if not stripped:
        raise ValueError("empty Seifert description")
    pairs = []
    for chunk in stripped.replace("),(", ");(").split(";"):
        chunk = chunk.strip("()")
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"cannot read fiber pair from {chunk!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ValueError(f"cannot read fiber pair from {chunk!r}") from None
    return SeifertData(pairs)


def parse_spin(text: str, fibers: int) -> SpinAssignment:
    """Parse "c1,c2,...[;ch]" into a SpinAssignment (ch defaults to 0)."""
    stripped = "".join(text.split())
    ch = 0
    if ";" in stripped:
        stripped, ch_text = stripped.split(";", 1)
        ch = int(ch_text)
    bits = [int(tok) for tok in stripped.split(",") if tok != ""]
    if len(bits) != fibers:
        raise ValueError(f"expected {fibers} fiber labels, got {len(bits)}")
    if any(b not in (0, 1) for b in bits) or ch not in (0, 1):
        raise ValueError("spin labels must be 0 or 1")
    return SpinAssignment(bits, ch)
