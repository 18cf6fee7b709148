"""Dense polynomial and rational-function arithmetic over complex scalars.

Everything downstream (Riccati residues, sector matrices, wavefunction
factors) is built on the three types here: ``Polynomial``,
``RationalFunction`` and ``LaurentExpansion``.  Values are immutable and all
functions are pure, so concurrent use is safe.

Coefficients are stored in ascending order: ``coeffs[k]`` multiplies ``y**k``.
All arithmetic is ordinary 64-bit complex floating point; there is no
arbitrary-precision mode.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import OrderOverflowError, RootFindingError

#: Relative distance below which two roots are considered equal when a
#: rational function is reduced.
SIMPLIFY_TOL = 1e-10

#: A root counts as real when |Im| < REAL_SNAP_TOL * max(1, |root|).
REAL_SNAP_TOL = 1e-8

#: Point at infinity, usable as an expansion center.
INFINITY = complex("inf")


def _trim(coeffs: Iterable[complex], tol: float = 0.0) -> tuple[complex, ...]:
    cs = [complex(c) for c in coeffs]
    scale = max((abs(c) for c in cs), default=0.0)
    cut = tol * scale
    while cs and abs(cs[-1]) <= cut:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial with complex coefficients.

    The zero polynomial has an empty coefficient tuple and degree ``-inf``.
    Trailing zero coefficients are trimmed on construction.
    """

    coeffs: tuple[complex, ...]

    def __init__(self, coeffs: Iterable[complex]):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> Polynomial:
        return cls(())

    @classmethod
    def one(cls) -> Polynomial:
        return cls((1.0,))

    @classmethod
    def constant(cls, c: complex) -> Polynomial:
        return cls((c,))

    @classmethod
    def identity(cls) -> Polynomial:
        """The monomial ``y``."""
        return cls((0.0, 1.0))

    @classmethod
    def from_roots(cls, roots: Iterable[complex], leading: complex = 1.0) -> Polynomial:
        p = np.array([leading], dtype=complex)
        for r in roots:
            p = np.convolve(p, np.array([-r, 1.0], dtype=complex))
        return cls(p)

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> float:
        """Degree as an int, or ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> complex:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> complex:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0.0

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def trimmed(self, tol: float) -> Polynomial:
        """Drop trailing coefficients below ``tol`` relative to the largest."""
        return Polynomial(_trim(self.coeffs, tol))

    def is_real(self, tol: float = 1e-12) -> bool:
        scale = max(1.0, self.max_abs_coeff())
        return all(abs(c.imag) <= tol * scale for c in self.coeffs)

    # -- evaluation --------------------------------------------------------

    def __call__(self, z):
        if isinstance(z, np.ndarray):
            acc = np.zeros_like(z, dtype=complex)
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return acc
        acc = 0.0 + 0.0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def shifted(self, center: complex) -> Polynomial:
        """Coefficients of ``p(center + w)`` as a polynomial in ``w``.

        Done by repeated synthetic division, which is backward stable.
        """
        return Polynomial(_taylor_shift_plain(self, center))

    def monic(self) -> Polynomial:
        lead = self.leading()
        return Polynomial(tuple(c / lead for c in self.coeffs))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> Polynomial:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> Polynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Polynomial:
        return _as_poly(other) - self

    def __mul__(self, other) -> Polynomial:
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial.zero()
        prod = np.convolve(np.array(self.coeffs), np.array(other.coeffs))
        return Polynomial(prod)

    __rmul__ = __mul__

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        den = _as_poly(other)
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero polynomial")
        if self.degree < den.degree:
            return Polynomial.zero(), self
        num = list(self.coeffs)
        dn = len(den.coeffs) - 1
        lead = den.coeffs[-1]
        q = [0.0 + 0.0j] * (len(num) - dn)
        for k in range(len(q) - 1, -1, -1):
            q[k] = num[k + dn] / lead
            for j in range(dn + 1):
                num[k + j] -= q[k] * den.coeffs[j]
        return Polynomial(q), Polynomial(num[:dn])

    def deflate(self, root: complex) -> Polynomial:
        """Divide by ``(y - root)`` with synthetic division, dropping the remainder."""
        return Polynomial(_synthetic_quotient(list(self.coeffs), root))

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"


def _synthetic_quotient(coeffs: list[complex], root: complex) -> list[complex]:
    if not coeffs:
        return []
    out = [0.0 + 0.0j] * (len(coeffs) - 1)
    acc = coeffs[-1]
    for k in range(len(coeffs) - 2, -1, -1):
        out[k] = acc
        acc = coeffs[k] + root * acc
    return out


def _as_poly(obj) -> Polynomial:
    if isinstance(obj, Polynomial):
        return obj
    if isinstance(obj, (int, float, complex)):
        return Polynomial((complex(obj),))
    raise TypeError(f"cannot interpret {type(obj).__name__} as Polynomial")


def _taylor_shift_plain(p: Polynomial, center: complex) -> list[complex]:
    """Coefficients of ``p(center + w)`` in ``w`` via repeated synthetic division."""
    work = list(p.coeffs)
    out = []
    while work:
        quotient = [0.0 + 0.0j] * (len(work) - 1)
        acc = work[-1]
        for k in range(len(work) - 2, -1, -1):
            quotient[k] = acc
            acc = work[k] + center * acc
        out.append(acc)
        work = quotient
    return out


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------


def poly_roots(p: Polynomial, tol: float = 1e-8, max_iter: int = 500) -> list[complex]:
    """All complex roots of ``p``, repeated by multiplicity.

    Aberth-Ehrlich simultaneous iteration with a companion-matrix fallback.
    The result is verified by re-expanding the monic product of root factors:
    the maximum coefficient error must be below ``tol * max|coeff|``, else a
    :class:`RootFindingError` carrying the partial roots is raised.
    """
    if p.degree < 1:
        raise ValueError("poly_roots requires degree >= 1")
    work = p.monic()

    # Factor out exact zeros at the origin first; they are common and cheap.
    zeros_at_origin = 0
    cs = list(work.coeffs)
    while cs and cs[0] == 0:
        cs.pop(0)
        zeros_at_origin += 1
    work = Polynomial(cs)

    roots = [0.0 + 0.0j] * zeros_at_origin
    if work.degree >= 1:
        found = _aberth(work, max_iter)
        if found is None:
            found = list(np.roots(np.array(work.coeffs[::-1], dtype=complex)))
        roots.extend(found)

    if not _verify_roots(p, roots, tol):
        fallback = roots[:zeros_at_origin] + list(
            np.roots(np.array(work.coeffs[::-1], dtype=complex))
        )
        if _verify_roots(p, fallback, tol):
            roots = fallback
        else:
            raise RootFindingError(
                f"root finder did not reproduce coefficients to {tol:g}",
                partial_roots=roots,
            )
    return sorted(roots, key=lambda z: (round(z.real, 12), round(z.imag, 12)))


def _aberth(p: Polynomial, max_iter: int) -> list[complex] | None:
    n = int(p.degree)
    if n == 1:
        return [-p.coeffs[0] / p.coeffs[1]]
    dp = p.derivative()
    radius = 1.0 + max(abs(c) for c in p.coeffs[:-1])
    angles = 2.0 * np.pi * (np.arange(n) + 0.25) / n + 0.5 / n
    z = radius * np.exp(1j * angles) * (0.3 + 0.7 * (np.arange(n) + 1) / n)

    abs_coeffs = np.array([abs(c) for c in p.coeffs])
    powers = np.arange(len(p.coeffs))
    for _ in range(max_iter):
        pv = p(z)
        # backward-error stopping: |p(z)| at the level of evaluation roundoff
        bound = (np.abs(z)[:, None] ** powers[None, :] @ abs_coeffs) * 1e-15 * (2 * n + 2)
        done = np.abs(pv) <= bound
        if done.all():
            return list(z)
        dv = dp(z)
        dv = np.where(np.abs(dv) < 1e-300, 1e-300, dv)
        newton = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        repulse = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - newton * repulse
        denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
        step = newton / denom
        step = np.where(done, 0.0, step)
        z = z - step
        if np.max(np.abs(step)) <= 1e-16 * np.max(1.0 + np.abs(z)):
            return list(z)
    return None


def _verify_roots(p: Polynomial, roots: list[complex], tol: float) -> bool:
    if len(roots) != int(p.degree):
        return False
    rebuilt = Polynomial.from_roots(roots, leading=p.leading())
    n = max(len(rebuilt.coeffs), len(p.coeffs))
    err = max(abs(rebuilt.coeff(k) - p.coeff(k)) for k in range(n))
    return err < tol * max(p.max_abs_coeff(), 1e-300)


def snap_real(root: complex) -> complex | float:
    """Return a float when the root is real within the classification threshold."""
    if abs(root.imag) < REAL_SNAP_TOL * max(1.0, abs(root)):
        return root.real
    return root


def is_real_root(root: complex) -> bool:
    return abs(root.imag) < REAL_SNAP_TOL * max(1.0, abs(root))


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """Ratio of two polynomials, reduced and with a monic denominator.

    Reduction cancels numerator/denominator roots closer than
    ``SIMPLIFY_TOL`` relative distance, using synthetic deflation. A pair of
    roots in the near-miss band just above the threshold is reported with a
    ``RuntimeWarning`` rather than cancelled.
    """

    num: Polynomial
    den: Polynomial

    def __init__(self, num, den=Polynomial.one(), reduce: bool = True):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce and not num.is_zero() and den.degree >= 1:
            num, den = _cancel_common_roots(num, den)
        lead = den.leading()
        object.__setattr__(self, "num", Polynomial(tuple(c / lead for c in num.coeffs)))
        object.__setattr__(self, "den", Polynomial(tuple(c / lead for c in den.coeffs)))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_poly(cls, p) -> RationalFunction:
        return cls(_as_poly(p), Polynomial.one(), reduce=False)

    @classmethod
    def zero(cls) -> RationalFunction:
        return cls(Polynomial.zero(), Polynomial.one(), reduce=False)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # -- evaluation / calculus ---------------------------------------------

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def derivative(self) -> RationalFunction:
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> RationalFunction:
        other = _as_rational(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> RationalFunction:
        return self + (-_as_rational(other))

    def __rsub__(self, other) -> RationalFunction:
        return _as_rational(other) - self

    def __mul__(self, other) -> RationalFunction:
        other = _as_rational(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        other = _as_rational(other)
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> RationalFunction:
        return _as_rational(other) / self

    # -- structure -----------------------------------------------------------

    def degree_at_infinity(self) -> float:
        """deg(num) - deg(den): growth order as y -> infinity."""
        return self.num.degree - self.den.degree

    def pole_order(self, center: complex, tol: float = 1e-9) -> int:
        """Order of the pole at ``center`` (0 for a regular point)."""
        if self.is_zero():
            return 0
        den_shift = _taylor_shift_plain(self.den, center)
        num_shift = _taylor_shift_plain(self.num, center)
        return max(0, _leading_index(den_shift, tol) - _leading_index(num_shift, tol))

    def as_polynomial(self, tol: float = 1e-9) -> Polynomial:
        """Exact polynomial quotient; raises if the remainder is not negligible."""
        q, r = divmod(self.num, self.den)
        scale = max(self.num.max_abs_coeff(), q.max_abs_coeff() * self.den.max_abs_coeff(), 1e-300)
        if r.max_abs_coeff() > tol * scale:
            raise ValueError(
                f"rational function is not a polynomial (remainder {r.max_abs_coeff():.3e} "
                f"vs scale {scale:.3e})"
            )
        return q.trimmed(tol)

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"


def _as_rational(obj) -> RationalFunction:
    if isinstance(obj, RationalFunction):
        return obj
    if isinstance(obj, (Polynomial, int, float, complex)):
        return RationalFunction.from_poly(obj)
    raise TypeError(f"cannot interpret {type(obj).__name__} as RationalFunction")


def _cancel_common_roots(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    try:
        den_roots = poly_roots(den, tol=1e-6)
    except RootFindingError:
        return num, den
    if num.degree >= 1:
        try:
            num_roots = poly_roots(num, tol=1e-6)
        except RootFindingError:
            return num, den
    else:
        num_roots = []

    used = [False] * len(num_roots)
    keep_den = []
    cancelled = False
    for rd in den_roots:
        match = None
        near = None
        for i, rn in enumerate(num_roots):
            if used[i]:
                continue
            dist = abs(rn - rd)
            cut = SIMPLIFY_TOL * max(1.0, abs(rd))
            if dist <= cut:
                match = i
                break
            if dist <= 100.0 * cut:
                near = (rn, rd, dist)
        if match is not None:
            used[match] = True
            cancelled = True
        else:
            if near is not None:
                warnings.warn(
                    f"near-cancellation between root {near[0]} and pole {near[1]} "
                    f"(distance {near[2]:.3e}) left in place",
                    RuntimeWarning,
                    stacklevel=4,
                )
            keep_den.append(rd)
    if not cancelled:
        return num, den
    new_num = num
    for i, rn in enumerate(num_roots):
        if used[i]:
            new_num = new_num.deflate(rn)
    new_den = den
    remaining = list(keep_den)
    for rd in den_roots:
        if rd in remaining:
            remaining.remove(rd)
        else:
            new_den = new_den.deflate(rd)
    return new_num, new_den


def _leading_index(coeffs: list[complex], rel_tol: float) -> int:
    scale = max((abs(c) for c in coeffs), default=0.0)
    if scale == 0.0:
        return 0
    for k, c in enumerate(coeffs):
        if abs(c) > rel_tol * scale:
            return k
    return len(coeffs)


# ---------------------------------------------------------------------------
# Laurent expansions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentExpansion:
    """Laurent coefficients of a rational function about a point.

    ``coeffs[k]`` is the coefficient of ``(y - center)**k``; for
    ``center == INFINITY`` it is the coefficient of ``y**k``.
    """

    center: complex
    coeffs: Mapping[int, complex]

    def coeff(self, order: int) -> complex:
        return self.coeffs.get(order, 0.0)

    @property
    def residue(self) -> complex:
        """Coefficient of order -1; at infinity use :func:`residue_at_infinity`."""
        return self.coeff(-1)


def _series_divide(num: list[complex], den: list[complex], length: int) -> list[complex]:
    """Power-series quotient num/den to ``length`` terms; den[0] must be nonzero."""
    out = [0.0 + 0.0j] * length
    inv0 = 1.0 / den[0]
    for k in range(length):
        acc = num[k] if k < len(num) else 0.0 + 0.0j
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out[k] = acc * inv0
    return out


def laurent_at(
    r: RationalFunction,
    center: complex,
    min_order: int,
    max_order: int,
) -> LaurentExpansion:
    """Laurent expansion of ``r`` about ``center`` covering the given orders.

    At a finite center the numerator and denominator are Taylor-shifted and
    divided as power series.  At ``INFINITY`` the substitution ``y = 1/t``
    reduces to the same series division in ``t``.  Requesting ``min_order``
    above the true leading order raises :class:`OrderOverflowError`.

    At a simple pole the order ``-1`` coefficient is cross-checked against the
    limit formula ``num(c)/den'(c)`` on every extraction.
    """
    if min_order > max_order:
        raise ValueError("min_order must not exceed max_order")

    if center == INFINITY or (isinstance(center, complex) and cmath.isinf(center)):
        return _laurent_at_infinity(r, min_order, max_order)

    num_shift = _taylor_shift_plain(r.num, center)
    den_shift = _taylor_shift_plain(r.den, center)
    m_num = _leading_index(num_shift, 1e-13)
    m_den = _leading_index(den_shift, 1e-13)
    if r.num.is_zero():
        return LaurentExpansion(center, {k: 0.0 for k in range(min_order, max_order + 1)})
    start = m_num - m_den
    if start < min_order:
        raise OrderOverflowError(
            f"pole of order {-start} at {center} exceeds requested min_order {min_order}"
        )
    length = max_order - start + 1
    if length <= 0:
        return LaurentExpansion(center, {k: 0.0 for k in range(min_order, max_order + 1)})
    series = _series_divide(num_shift[m_num:], den_shift[m_den:], length)
    coeffs = {}
    for k in range(min_order, max_order + 1):
        idx = k - start
        coeffs[k] = series[idx] if 0 <= idx < length else 0.0 + 0.0j

    if start == -1 and m_num == 0:
        # cancellation-free limit formula for a simple pole, checked on
        # every extraction that covers order -1
        limit = r.num(center) / r.den.derivative()(center)
        got = series[0]
        if abs(got - limit) > 1e-8 * max(1.0, abs(limit)):
            raise ArithmeticError(
                f"residue cross-check failed at {center}: series {got}, limit {limit}"
            )
    return LaurentExpansion(center, coeffs)


def _laurent_at_infinity(r: RationalFunction, min_order: int, max_order: int) -> LaurentExpansion:
    if r.num.is_zero():
        return LaurentExpansion(INFINITY, {k: 0.0 for k in range(min_order, max_order + 1)})
    dn = int(r.num.degree)
    dd = int(r.den.degree)
    start = dn - dd  # leading order in y; higher orders are identically zero
    length = start - min_order + 1
    if length <= 0:
        return LaurentExpansion(INFINITY, {k: 0.0 for k in range(min_order, max_order + 1)})
    num_rev = list(r.num.coeffs[::-1])
    den_rev = list(r.den.coeffs[::-1])
    series = _series_divide(num_rev, den_rev, length)
    coeffs = {}
    for k in range(min_order, max_order + 1):
        idx = start - k
        coeffs[k] = series[idx] if 0 <= idx < length else 0.0 + 0.0j
    return LaurentExpansion(INFINITY, coeffs)


def residue_at(r: RationalFunction, pole: complex) -> complex:
    """Residue of ``r`` at a finite pole.

    A regular point returns 0 and emits a ``RuntimeWarning`` note.
    """
    order = r.pole_order(pole)
    if order == 0:
        warnings.warn(f"{pole} is not a pole; residue is 0", RuntimeWarning, stacklevel=2)
        return 0.0 + 0.0j
    return laurent_at(r, pole, -order, -1).coeff(-1)


def residue_at_infinity(r: RationalFunction) -> complex:
    """Minus the coefficient of 1/y in the expansion at infinity."""
    return -laurent_at(r, INFINITY, -1, -1).coeff(-1)


def contour_residue(r: RationalFunction, pole: complex, radius: float = 1e-2, n: int = 256) -> complex:
    """(1/2*pi*i) times the integral of ``r`` around a small circle at ``pole``.

    Trapezoidal quadrature on the circle; spectrally accurate for the
    analytic integrand, used as an independent check on :func:`residue_at`.
    """
    theta = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    z = pole + radius * np.exp(1j * theta)
    vals = r(z) * (z - pole)
    return complex(np.mean(vals))
