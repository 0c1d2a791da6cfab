"""Polynomial potentials and harmonic analysis of their wells."""

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from ._exact import fraction_to_mpf, to_fraction
from .errors import AnalysisError, InvalidParameterError

SCAN_POINTS = 1000
BISECTION_STEPS = 110


@dataclass(frozen=True)
class PolynomialPotential:
    """V(x) = sum_k c_k x**k with exact rational coefficients.

    Trailing zero coefficients are dropped, so ``degree`` is the index of
    the last nonzero coefficient (0 for the zero potential).
    """

    coefficients: tuple

    def __init__(self, coefficients):
        coeffs = [to_fraction(c, "coefficient") for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs) or (Fraction(0),))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    @property
    def is_even(self):
        return all(c == 0 for c in self.coefficients[1::2])

    def derivative(self):
        return PolynomialPotential(
            [k * c for k, c in enumerate(self.coefficients)][1:] or [0]
        )

    def exact(self, x):
        """Exact rational V(x) for a rational x.

        Even and odd parts are evaluated separately in x**2, so
        V(-x) == V(x) holds bit-for-bit for even potentials.
        """
        x = to_fraction(x, "x")
        y = x * x
        even = Fraction(0)
        for c in reversed(self.coefficients[0::2]):
            even = even * y + c
        odd = Fraction(0)
        for c in reversed(self.coefficients[1::2]):
            odd = odd * y + c
        return even + x * odd

    def evaluate(self, x):
        """V(x) rounded once to the current mpmath working precision."""
        return fraction_to_mpf(self.exact(x))

    __call__ = evaluate


def build_triple_well(omega):
    """(omega**2 / 2) * x**2 * (x**2 - 1)**2, minima at x = -1, 0, 1."""
    w = to_fraction(omega, "omega")
    if w <= 0:
        raise InvalidParameterError(f"omega must be positive, got {omega}")
    half = w * w / 2
    return PolynomialPotential([0, 0, half, 0, -2 * half, 0, half])


@dataclass(frozen=True)
class Minimum:
    location: object
    value: object
    curvature: object
    frequency: object


@dataclass(frozen=True)
class BarrierTop:
    location: object
    value: object


@dataclass(frozen=True)
class WellAnalysis:
    minima: tuple
    barrier_tops: tuple

    @property
    def frequencies(self):
        return [m.frequency for m in self.minima]

    def barrier_heights(self):
        """Lowest barrier top above each minimum; None when unbounded."""
        tops = [b.value for b in self.barrier_tops]
        if not tops:
            return [None] * len(self.minima)
        return [min(tops) - m.value for m in self.minima]


def _critical_points(dV, lo, hi, points):
    step = (hi - lo) / (points - 1)
    grid = [lo + i * step for i in range(points)]
    signs = [dV.exact(x) for x in grid]
    roots = []
    for i, (x, f) in enumerate(zip(grid, signs)):
        if f == 0:
            if 0 < i < points - 1:
                roots.append(x)
            continue
        if i + 1 < points and signs[i + 1] != 0 and (f > 0) != (signs[i + 1] > 0):
            roots.append(_bisect_exact(dV, x, grid[i + 1], f))
    return roots


def _bisect_exact(dV, a, b, fa):
    for _ in range(BISECTION_STEPS):
        m = (a + b) / 2
        fm = dV.exact(m)
        if fm == 0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    x = (a + b) / 2
    # snap onto a nearby simple rational when it is an exact root
    guess = x.limit_denominator(10**6)
    if a <= guess <= b and dV.exact(guess) == 0:
        return guess
    return x


def analyze_wells(V, search_interval=(-2, 2), precision=113):
    """Locate the minima and barrier tops of ``V`` inside an interval.

    Critical points are sign changes of V' on a uniform scan grid, refined
    by exact rational bisection. Curvatures come from the exact second
    derivative; frequencies are sqrt(curvature) (unit mass).
    """
    lo, hi = (to_fraction(v, "search_interval") for v in search_interval)
    if not lo < hi:
        raise InvalidParameterError("search_interval must be increasing")
    dV = V.derivative()
    d2V = dV.derivative()
    minima, tops = [], []
    with mp.workprec(precision):
        for x in _critical_points(dV, lo, hi, SCAN_POINTS):
            curvature = d2V.exact(x)
            value = V.exact(x)
            if curvature > 0:
                c = fraction_to_mpf(curvature)
                minima.append(
                    Minimum(fraction_to_mpf(x), fraction_to_mpf(value), c, mp.sqrt(c))
                )
            elif curvature < 0:
                tops.append(BarrierTop(fraction_to_mpf(x), fraction_to_mpf(value)))
    if not minima:
        raise AnalysisError(f"no interior minimum of V in [{lo}, {hi}]")
    return WellAnalysis(tuple(minima), tuple(tops))
