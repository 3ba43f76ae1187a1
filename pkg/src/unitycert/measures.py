"""Moment functionals for the measures behind the partition identities.

Exact monomial moments, in closed form, for:

* ``Arcsine`` -- dx/(pi sqrt(1-x^2)) on [-1,1], the equilibrium measure of
  the interval; even moments are central binomials C(k, k/2)/2^k.
* ``ArcsineG`` -- (1-x^2) times Arcsine.
* ``Lebesgue01`` -- Lebesgue measure on [0,1].
* ``SimplexUniform(d)`` -- uniform probability measure on the canonical
  simplex, moments d! a_1! ... a_d! / (d + |a|)!.
* ``SimplexEquilibrium`` -- dx dy/(pi sqrt(x y (1-x-y))) on the triangle,
  either with its raw total mass 2 (``PAPER_PI``) or rescaled to a
  probability measure (``PROBABILITY``).

Floating-point quadrature oracles (Gauss-Chebyshev, Gauss-Legendre, and
fixed-seed Monte Carlo on the simplex) are provided as independent
cross-checks of the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .polycore import AnyPoly, Exponent, UPoly

_MC_SEED = 20260809  # fixed seed: the simplex oracles must be deterministic


class SimplexNormalization(Enum):
    PI_DENSITY = "pi-density"
    PROBABILITY = "probability"


class _Kind(Enum):
    ARCSINE = "arcsine"
    ARCSINE_G = "arcsine-g"
    LEBESGUE01 = "lebesgue01"
    SIMPLEX_UNIFORM = "simplex-uniform"
    SIMPLEX_EQUILIBRIUM = "simplex-equilibrium"


@dataclass(frozen=True)
class MeasureId:
    kind: _Kind
    d: int = 1
    normalization: SimplexNormalization | None = None

    def __post_init__(self) -> None:
        if self.kind is _Kind.SIMPLEX_UNIFORM and self.d < 1:
            raise ValueError("simplex dimension must be >= 1")
        if self.kind is _Kind.SIMPLEX_EQUILIBRIUM:
            if self.d != 2:
                raise ValueError("simplex equilibrium measure is only supported for d = 2")
            if self.normalization is None:
                raise ValueError("simplex equilibrium measure needs a normalization")

    @property
    def dimension(self) -> int:
        if self.kind in (_Kind.SIMPLEX_UNIFORM, _Kind.SIMPLEX_EQUILIBRIUM):
            return self.d
        return 1

    def label(self) -> str:
        if self.kind is _Kind.SIMPLEX_UNIFORM:
            return f"simplex-uniform(d={self.d})"
        if self.kind is _Kind.SIMPLEX_EQUILIBRIUM:
            return f"simplex-equilibrium({self.normalization.value})"
        return self.kind.value


ARCSINE = MeasureId(_Kind.ARCSINE)
ARCSINE_G = MeasureId(_Kind.ARCSINE_G)
LEBESGUE01 = MeasureId(_Kind.LEBESGUE01)


def simplex_uniform(d: int) -> MeasureId:
    return MeasureId(_Kind.SIMPLEX_UNIFORM, d=d)


def simplex_equilibrium(
    normalization: SimplexNormalization = SimplexNormalization.PI_DENSITY,
) -> MeasureId:
    return MeasureId(_Kind.SIMPLEX_EQUILIBRIUM, d=2, normalization=normalization)


def beta_integral(i: int, j: int) -> Fraction:
    """Exact value of the integral of x^i (1-x)^j over [0,1]: i! j!/(i+j+1)!."""
    if i < 0 or j < 0:
        raise ValueError("exponents must be nonnegative")
    return Fraction(math.factorial(i) * math.factorial(j), math.factorial(i + j + 1))


def _arcsine_moment(k: int) -> Fraction:
    if k % 2:
        return Fraction(0)
    return Fraction(math.comb(k, k // 2), 2**k)


def _double_factorial_ratio(k: int) -> Fraction:
    # (2k)! / (4^k k!), the half-integer Gamma ratio Gamma(k+1/2)/Gamma(1/2).
    return Fraction(math.factorial(2 * k), 4**k * math.factorial(k))


def _simplex_equilibrium_moment(a: int, b: int) -> Fraction:
    # Raw-density moment (total mass 2).
    m = a + b
    scale = Fraction(4 ** (m + 1) * math.factorial(m + 1), math.factorial(2 * m + 2))
    return _double_factorial_ratio(a) * _double_factorial_ratio(b) * scale


def _normalize_alpha(measure: MeasureId, alpha) -> Exponent:
    if isinstance(alpha, int):
        alpha = (alpha,)
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != measure.dimension:
        raise ValueError(
            f"exponent {alpha} has dimension {len(alpha)}, measure expects {measure.dimension}"
        )
    if any(a < 0 for a in alpha):
        raise ValueError("exponents must be nonnegative")
    return alpha


def _closed_form_moment(measure: MeasureId, alpha: Exponent) -> Fraction:
    if measure.kind is _Kind.ARCSINE:
        return _arcsine_moment(alpha[0])
    if measure.kind is _Kind.ARCSINE_G:
        return _arcsine_moment(alpha[0]) - _arcsine_moment(alpha[0] + 2)
    if measure.kind is _Kind.LEBESGUE01:
        return Fraction(1, alpha[0] + 1)
    if measure.kind is _Kind.SIMPLEX_UNIFORM:
        num = math.factorial(measure.d)
        for a in alpha:
            num *= math.factorial(a)
        return Fraction(num, math.factorial(measure.d + sum(alpha)))
    value = _simplex_equilibrium_moment(alpha[0], alpha[1])
    if measure.normalization is SimplexNormalization.PROBABILITY:
        value /= 2
    return value


class MomentFunctional:
    """A measure together with a memo table of its exact monomial moments.

    The memo grows monotonically and is never evicted; concurrent readers may
    race to fill an entry but always compute the same value.
    """

    def __init__(self, measure: MeasureId) -> None:
        self.measure = measure
        self._memo: dict[Exponent, Fraction] = {}

    def moment(self, alpha) -> Fraction:
        alpha = _normalize_alpha(self.measure, alpha)
        value = self._memo.get(alpha)
        if value is None:
            value = _closed_form_moment(self.measure, alpha)
            self._memo[alpha] = value
        return value

    def poly_moment(self, p: AnyPoly) -> Fraction:
        if isinstance(p, UPoly):
            if self.measure.dimension != 1:
                raise ValueError("univariate polynomial against a multivariate measure")
            return sum(
                (c * self.moment((k,)) for k, c in enumerate(p.coeffs) if c != 0),
                Fraction(0),
            )
        if p.dimension != self.measure.dimension:
            raise ValueError("polynomial dimension does not match the measure")
        return sum(
            (c * self.moment(e) for e, c in p.terms.items()), Fraction(0)
        )

    def memo_size(self) -> int:
        return len(self._memo)


_FUNCTIONALS: dict[MeasureId, MomentFunctional] = {}


def functional_for(measure: MeasureId) -> MomentFunctional:
    """Shared functional per measure so memo tables accumulate across calls."""
    return _FUNCTIONALS.setdefault(measure, MomentFunctional(measure))


def moment(f: MomentFunctional, alpha) -> Fraction:
    return f.moment(alpha)


def poly_moment(f: MomentFunctional, p: AnyPoly) -> Fraction:
    return f.poly_moment(p)


def simplex_uniform_moment_oracle(d: int, alpha: Sequence[int]) -> Fraction:
    """Uniform-simplex moment by iterated Beta integrals.

    Peels off one variable at a time: integrating x_1^{a_1} over its range
    leaves a rescaled copy of the lower-dimensional simplex, contributing the
    factor B(a_1+1, a_2+...+a_d + d), i.e. beta_integral(a_1, rest + d - 1).
    Independent of the factorial closed form used by ``MomentFunctional``.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != d:
        raise ValueError("alpha length must equal the dimension")
    raw = Fraction(1)
    remaining = d
    for k, a in enumerate(alpha):
        rest = sum(alpha[k + 1 :])
        raw *= beta_integral(a, rest + remaining - 1)
        remaining -= 1
    return math.factorial(d) * raw


def _eval_float(p: AnyPoly, point: np.ndarray) -> np.ndarray:
    """Evaluate p at an array of points (shape (N, dim)) in float arithmetic."""
    if isinstance(p, UPoly):
        x = point[:, 0]
        acc = np.zeros_like(x)
        for c in reversed(p.coeffs):
            acc = acc * x + float(c)
        return acc
    total = np.zeros(point.shape[0])
    for exponent, coeff in p.terms.items():
        term = np.full(point.shape[0], float(coeff))
        for axis, e in enumerate(exponent):
            if e:
                term = term * point[:, axis] ** e
        total += term
    return total


def quadrature_oracle(measure: MeasureId, p: AnyPoly, nodes: int) -> float:
    """Floating-point estimate of the integral of p against the measure.

    Gauss-Chebyshev nodes cos((2k-1)pi/2N) for the arcsine measures,
    Gauss-Legendre on [0,1] for Lebesgue (both exact to rounding once
    2*nodes exceeds the degree), and fixed-seed Dirichlet Monte Carlo with
    ``nodes`` samples for the simplex measures.
    """
    if nodes <= 0:
        raise ValueError("nodes must be positive")
    if measure.kind in (_Kind.ARCSINE, _Kind.ARCSINE_G):
        k = np.arange(1, nodes + 1)
        x = np.cos((2 * k - 1) * np.pi / (2 * nodes))
        values = _eval_float(p, x[:, None])
        if measure.kind is _Kind.ARCSINE_G:
            values = values * (1.0 - x**2)
        return float(values.mean())
    if measure.kind is _Kind.LEBESGUE01:
        t, w = np.polynomial.legendre.leggauss(nodes)
        x = (t + 1.0) / 2.0
        return float(0.5 * np.dot(w, _eval_float(p, x[:, None])))
    rng = np.random.default_rng(_MC_SEED)
    if measure.kind is _Kind.SIMPLEX_UNIFORM:
        samples = rng.dirichlet(np.ones(measure.d + 1), size=nodes)[:, : measure.d]
        return float(_eval_float(p, samples).mean())
    samples = rng.dirichlet(np.full(3, 0.5), size=nodes)[:, :2]
    mass = 1.0 if measure.normalization is SimplexNormalization.PROBABILITY else 2.0
    return float(mass * _eval_float(p, samples).mean())


def bernstein_envelope(n: int, x: float) -> float:
    """Envelope of the degree-n Bernstein basis: 1/(n sqrt(2 pi x (1-x)))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < x < 1.0:
        raise ValueError("x must lie strictly inside (0, 1)")
    return 1.0 / (n * math.sqrt(2.0 * math.pi * x * (1.0 - x)))
