"""Exact K-lattice and central-charge arithmetic for the resolved A1 surface.

The Grothendieck lattice of the category of complexes on the cotangent
bundle of P^1 supported on the zero section has basis {[O_Z], [O_x]}.
Everything here is exact: classes are integer pairs, charges are complex
numbers with rational real and imaginary parts, and phase comparisons are
sign tests.  No floating point enters any decision; floats appear only in
``approx``-style display helpers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "ZeroCharge",
    "NotSphericalClass",
    "NotABasis",
    "KClass",
    "euler_form",
    "class_of_line_bundle",
    "ExactComplex",
    "CentralCharge",
    "charge_eval",
    "mass_squared",
    "Order",
    "phase_compare",
    "rotate_scale",
    "twist_on_K",
    "sign_and_p",
    "PhaseCut",
    "window_delta_key",
    "PhaseKey",
    "phase_key",
    "ray_window_position",
    "CompareSignsReport",
    "compare_signs_check",
]

RatLike = Union[int, Fraction]


class ZeroCharge(ValueError):
    """A phase was requested for a class whose charge vanishes."""


class NotSphericalClass(ValueError):
    """The class is not of the form +-[O_Z] + p[O_x]."""


class NotABasis(ValueError):
    """The given class does not span N(T) together with [O_x]."""


@dataclass(frozen=True)
class KClass:
    """Integer pair (a, b) meaning a[O_Z] + b[O_x]."""

    a: int
    b: int

    def __add__(self, other: "KClass") -> "KClass":
        return KClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "KClass") -> "KClass":
        return KClass(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "KClass":
        return KClass(-self.a, -self.b)

    def scale(self, n: int) -> "KClass":
        return KClass(n * self.a, n * self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_spherical_candidate(self) -> bool:
        """True when the image in N(T) is +-[O_Z], i.e. a = +-1."""
        return abs(self.a) == 1

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b}

    @classmethod
    def from_json(cls, data: dict) -> "KClass":
        return cls(int(data["a"]), int(data["b"]))


ZERO_CLASS = KClass(0, 0)
POINT_CLASS = KClass(0, 1)


def euler_form(u: KClass, v: KClass) -> int:
    """Euler pairing chi(u, v) = 2 u.a v.a.

    [O_x] spans the kernel of K(T) -> N(T) and the self-pairing of [O_Z]
    is 2, which pins the whole symmetric form.
    """
    return 2 * u.a * v.a


def class_of_line_bundle(t: int, shift: int = 0) -> KClass:
    """Class of O_Z(t)[shift], via [O(t)] - [O(t-1)] = [O_x] on P^1."""
    sgn = -1 if shift % 2 else 1
    return KClass(sgn, sgn * t)


def _rat(x: RatLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class ExactComplex:
    """Complex number with rational coordinates; equality is decidable."""

    re: Fraction
    im: Fraction

    @classmethod
    def of(cls, re: RatLike, im: RatLike = 0) -> "ExactComplex":
        return cls(_rat(re), _rat(im))

    def __add__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def scale(self, c: RatLike) -> "ExactComplex":
        c = _rat(c)
        return ExactComplex(c * self.re, c * self.im)

    def conj(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def norm_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def approx(self) -> complex:
        """Float approximation, for display only."""
        return complex(float(self.re), float(self.im))

    def to_json(self) -> list:
        return [
            self.re.numerator,
            self.re.denominator,
            self.im.numerator,
            self.im.denominator,
        ]

    @classmethod
    def from_json(cls, data: list) -> "ExactComplex":
        return cls(Fraction(data[0], data[1]), Fraction(data[2], data[3]))


def _rat_json(x: Fraction) -> list:
    return [x.numerator, x.denominator]


@dataclass(frozen=True)
class CentralCharge:
    """Values of Z on the K-basis plus a lazy rotation/scale tag.

    ``rot`` shifts every phase by the rational t; ``logscale`` records the
    accumulated real part x of the C-action.  The exponential e^(x + i pi t)
    is never multiplied in: raw values stay untouched and only phase
    bookkeeping consumes the tags.
    """

    z_OZ: ExactComplex
    z_Ox: ExactComplex
    rot: Fraction = Fraction(0)
    logscale: Fraction = Fraction(0)

    @classmethod
    def of(cls, z_OZ: ExactComplex, z_Ox: ExactComplex) -> "CentralCharge":
        return cls(z_OZ, z_Ox)

    @classmethod
    def standard_region(cls, z_OZ: ExactComplex, z_Ox: ExactComplex) -> "CentralCharge":
        """Constructor for the region with Im Z(O_Z) > 0 and Im Z(O_Z(-1)[1]) > 0."""
        charge = cls(z_OZ, z_Ox)
        if not charge.is_standard_region():
            raise ValueError(
                "charge is outside the standard region: needs Im Z(O_Z) > 0 "
                "and Im Z(O_Z(-1)[1]) > 0"
            )
        return charge

    def eval(self, u: KClass) -> ExactComplex:
        return self.z_OZ.scale(u.a) + self.z_Ox.scale(u.b)

    def is_standard_region(self) -> bool:
        return (
            self.eval(KClass(1, 0)).im > 0
            and self.eval(KClass(-1, 1)).im > 0
        )

    def to_json(self) -> dict:
        return {
            "z_OZ": self.z_OZ.to_json(),
            "z_Ox": self.z_Ox.to_json(),
            "rot": _rat_json(self.rot),
            "logscale": _rat_json(self.logscale),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CentralCharge":
        rot = data.get("rot", [0, 1])
        logscale = data.get("logscale", [0, 1])
        return cls(
            ExactComplex.from_json(data["z_OZ"]),
            ExactComplex.from_json(data["z_Ox"]),
            Fraction(rot[0], rot[1]),
            Fraction(logscale[0], logscale[1]),
        )


def charge_eval(Z: CentralCharge, u: KClass) -> ExactComplex:
    """Linear evaluation of Z before any rotation tag is applied."""
    return Z.eval(u)


def mass_squared(Z: CentralCharge, u: KClass) -> Fraction:
    """|Z(u)|^2 as an exact rational.

    The modulus itself is usually irrational, so only its square is
    exposed; mass-based metrics are unsupported.
    """
    return Z.eval(u).norm_squared()


def rotate_scale(Z: CentralCharge, x: RatLike, t: RatLike) -> CentralCharge:
    """Act by z = x + i pi t: accumulate tags, leave raw values alone."""
    return CentralCharge(Z.z_OZ, Z.z_Ox, Z.rot + _rat(t), Z.logscale + _rat(x))


class Order(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


def _branch(z: ExactComplex) -> int:
    """Rank of the principal phase: (-1,0) < {0} < (0,1) < {1}."""
    if z.im > 0:
        return 2
    if z.im < 0:
        return 0
    if z.re > 0:
        return 1
    return 3


def _cross_sign(u: ExactComplex, v: ExactComplex) -> int:
    """Sign of Im(conj(u) * v)."""
    x = u.re * v.im - u.im * v.re
    return (x > 0) - (x < 0)


def phase_compare(Z: CentralCharge, u: KClass, v: KClass) -> Order:
    """Exact comparison of the principal phases of Z(u) and Z(v).

    Phases live in (-1, 1]; comparison is the sign of Im(conj(Z(u)) Z(v))
    once both arguments sit in the same open half-plane, with the real-axis
    rays disambiguated by quadrant rank.  The rotation tag shifts both
    phases equally, so it never affects the answer.
    """
    zu, zv = Z.eval(u), Z.eval(v)
    if zu.is_zero() or zv.is_zero():
        raise ZeroCharge(f"zero central charge on {u if zu.is_zero() else v}")
    bu, bv = _branch(zu), _branch(zv)
    if bu != bv:
        return Order.LT if bu < bv else Order.GT
    if bu in (1, 3):
        return Order.EQ
    s = _cross_sign(zu, zv)
    # positive cross product means arg(u) < arg(v) within one half-plane
    return Order(-s)


def twist_on_K(e: KClass, f: KClass) -> KClass:
    """Reflection f |-> f - chi(e, f) e induced by the twist along e."""
    if not e.is_spherical_candidate():
        raise NotSphericalClass(f"{e} has |a| != 1")
    return f - e.scale(euler_form(e, f))


def sign_and_p(f: KClass, e: KClass) -> tuple[int, int]:
    """Coordinates (s, p) of e in the basis {f, [O_x]}: e = s f + p [O_x]."""
    if not f.is_spherical_candidate():
        raise NotABasis(f"{f} and [O_x] do not form a basis")
    if not e.is_spherical_candidate():
        raise NotSphericalClass(f"{e} has |a| != 1")
    s = e.a * f.a
    p = e.b - s * f.b
    return s, p


@dataclass(frozen=True)
class PhaseCut:
    """Half-open window (j-1, j] whose top phase j points along ``direction``.

    ``window_low`` records j-1.  Phases of other charge values are placed in
    the window by exact comparison against the direction's argument.
    """

    window_low: Fraction
    direction: ExactComplex

    def __post_init__(self) -> None:
        if self.direction.is_zero():
            raise ZeroCharge("phase cut needs a nonzero direction")

    def delta_key(self, z: ExactComplex) -> tuple:
        return window_delta_key(self.direction, z)

    def compare(self, z1: ExactComplex, z2: ExactComplex) -> Order:
        k1, k2 = self.delta_key(z1), self.delta_key(z2)
        if k1 == k2:
            return Order.EQ
        return Order.LT if k1 < k2 else Order.GT


def window_delta_key(direction: ExactComplex, z: ExactComplex) -> tuple:
    """Sortable exact key for the phase of z in the window topped by ``direction``.

    Phases are placed modulo one (the line of z decides): the key is
    (1, 0) when z lies on the line of the direction (delta = 0, the
    window top) and (0, -Re(w)/Im(w)) with w = conj(direction) * z
    normalised into the lower half-plane otherwise; -cot is strictly
    increasing in the phase offset delta in (-1, 0).
    """
    if z.is_zero():
        raise ZeroCharge("zero charge has no phase")
    w = direction.conj() * z
    if w.im == 0:
        return (1, Fraction(0))
    if w.im > 0:
        w = -w
    return (0, -w.re / w.im)


def ray_window_position(direction: ExactComplex, z: ExactComplex):
    """Ray-respecting window position of z in (delta in (-1, 0]), or None.

    A value whose actual phase lies in the half-open window ending at the
    direction's phase must point into the closed lower half-plane of the
    direction: Im(conj(direction) z) < 0 gives an interior key, the
    positive real ray of w is the window top, and anything else
    (including the anti-top ray) lies outside the window.
    """
    if z.is_zero():
        raise ZeroCharge("zero charge has no phase")
    w = direction.conj() * z
    if w.im == 0:
        if w.re > 0:
            return (1, Fraction(0))
        return None
    if w.im > 0:
        return None
    return (0, -w.re / w.im)


@dataclass(frozen=True, order=True)
class PhaseKey:
    """Exact comparator for a phase: integer window plus in-window position.

    ``offset`` carries the rotation tag plus any homological-shift window;
    ``branch``/``slope`` encode the principal position exactly as in
    ``phase_compare``.  Ordering is total because offsets here are always
    commensurable rationals in practice (integers plus a shared rot tag).
    """

    offset: Fraction
    branch: int
    slope: Fraction

    def shifted(self, n: RatLike) -> "PhaseKey":
        return PhaseKey(self.offset + _rat(n), self.branch, self.slope)

    def approx(self) -> float:
        """Float phase for display only."""
        import math

        if self.branch == 1:
            base = 0.0
        elif self.branch == 3:
            base = 1.0
        elif self.branch == 2:
            # slope = -cot(pi * phase) on (0, 1)
            base = math.atan2(1.0, -float(self.slope)) / math.pi
        else:
            base = math.atan2(-1.0, float(self.slope)) / math.pi
        return base + float(self.offset)


def phase_key(Z: CentralCharge, u: KClass) -> PhaseKey:
    """Exact phase key of Z(u) including the rotation tag as window offset."""
    z = Z.eval(u)
    if z.is_zero():
        raise ZeroCharge(f"zero central charge on {u}")
    b = _branch(z)
    if b in (1, 3):
        return PhaseKey(Z.rot, b, Fraction(0))
    return PhaseKey(Z.rot, b, -z.re / z.im)


@dataclass(frozen=True)
class CompareSignsReport:
    """Outcome of one sign-comparison check."""

    signs_differ_E_F: bool
    phase_chain_holds: bool
    hypothesis_met: bool
    conclusion_checked: bool
    conclusion_holds: bool
    sign_S: int
    sign_F: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "signs_differ_E_F": self.signs_differ_E_F,
            "phase_chain_holds": self.phase_chain_holds,
            "hypothesis_met": self.hypothesis_met,
            "conclusion_checked": self.conclusion_checked,
            "conclusion_holds": self.conclusion_holds,
            "sign_S": self.sign_S,
            "sign_F": self.sign_F,
            "passed": self.passed,
        }


def compare_signs_check(
    Z: CentralCharge, E: KClass, S: KClass, F: KClass
) -> CompareSignsReport:
    """Check the sign-comparison statement on one exact instance.

    Hypotheses: E and F have different signs and the phases satisfy
    phi(E[-1]) < phi(S) < phi(F) < phi(E), read inside the length-one
    window whose top is the phase of E.  Whenever they hold, S and F must
    have the same sign; a report with ``passed=False`` would witness a
    violation and must never occur.
    """
    for name, cls in (("E", E), ("S", S), ("F", F)):
        if not cls.is_spherical_candidate():
            raise NotSphericalClass(f"{name}={cls} has |a| != 1")
    zE, zS, zF = Z.eval(E), Z.eval(S), Z.eval(F)
    for name, z in (("E", zE), ("S", zS), ("F", zF)):
        if z.is_zero():
            raise ZeroCharge(f"zero central charge on {name}")

    signs_differ = E.a * F.a == -1
    kS = ray_window_position(zE, zS)
    kF = ray_window_position(zE, zF)
    # both strictly inside the window below E (ray orientation matters:
    # the stated phases force the charge rays), in increasing order
    chain = (
        kS is not None
        and kF is not None
        and kS[0] == 0
        and kF[0] == 0
        and kS < kF
    )
    hypothesis = signs_differ and chain
    sign_S = S.a
    sign_F = F.a
    conclusion = sign_F == sign_S
    return CompareSignsReport(
        signs_differ_E_F=signs_differ,
        phase_chain_holds=chain,
        hypothesis_met=hypothesis,
        conclusion_checked=hypothesis,
        conclusion_holds=conclusion,
        sign_S=sign_S,
        sign_F=sign_F,
        passed=(not hypothesis) or conclusion,
    )
