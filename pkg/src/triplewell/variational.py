"""Three-state harmonic model of the low triple-well spectrum.

Basis: ground states |R>, |C>, |L> of harmonic oscillators centred on the
right, central and left minima, taken mutually orthogonal (deep-well limit).
Parity swaps |R> and |L> and fixes |C>. Imposing parity and orthonormality
on three real combinations leaves a single mixing angle theta:

    psi0 = (sin t / sqrt2,  cos t, sin t / sqrt2)
    psi1 = (1 / sqrt2,      0,     -1 / sqrt2)
    psi2 = (-cos t / sqrt2, sin t, -cos t / sqrt2)

with components ordered (R, C, L).
"""

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
import math
import numbers

from .errors import DegenerateMinimumError, InvalidParameterError

PAIRED_BELOW = 0.1
EQUIDISTANT_WITHIN = 0.1


def _positive(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise InvalidParameterError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(value) or value <= 0:
        raise InvalidParameterError(f"{name} must be positive and finite, got {value}")
    return value


@dataclass(frozen=True)
class ThreeStateModel:
    omega0: float
    omega1: float
    theta: float = 0.0

    def __post_init__(self):
        _positive(self.omega0, "omega0")
        _positive(self.omega1, "omega1")
        if not math.isfinite(self.theta):
            raise InvalidParameterError(f"theta must be finite, got {self.theta}")


@dataclass(frozen=True)
class ModelStates:
    psi0: tuple
    psi1: tuple
    psi2: tuple

    def rows(self):
        return (self.psi0, self.psi1, self.psi2)


def model_states(model):
    s, c = math.sin(model.theta), math.cos(model.theta)
    r = 1 / math.sqrt(2)
    return ModelStates(
        psi0=(s * r, c, s * r),
        psi1=(r, 0.0, -r),
        psi2=(-c * r, s, -c * r),
    )


def model_energies(model):
    """Expectation values of H in the three model states.

    A harmonic ground state contributes half its frequency; cross terms
    vanish for orthogonal basis states.
    """
    s2 = math.sin(model.theta) ** 2
    c2 = math.cos(model.theta) ** 2
    w0, w1 = model.omega0, model.omega1
    return (
        (w1 * s2 + w0 * c2) / 2,
        w1 / 2,
        (w1 * c2 + w0 * s2) / 2,
    )


def minimize_ground(omega0, omega1):
    """Closed-form argmin of the ground energy over theta.

    E0(theta) interpolates between omega0/2 (theta = 0) and omega1/2
    (theta = pi/2), so the minimum sits at whichever end has the smaller
    frequency. Returns (theta_min, (E0, E1, E2)); arithmetic stays in the
    caller's number type, so integer or Fraction frequencies give exact
    energies.
    """
    _positive(omega0, "omega0")
    _positive(omega1, "omega1")
    if omega0 == omega1:
        raise DegenerateMinimumError("omega0 == omega1: the ground energy does not depend on theta")
    if omega1 > omega0:
        return 0.0, (omega0 / 2, omega1 / 2, omega1 / 2)
    return math.pi / 2, (omega1 / 2, omega1 / 2, omega0 / 2)


@dataclass(frozen=True)
class SpectrumComparison:
    ideal: tuple
    numerical: tuple
    deviations: tuple
    splitting: Decimal
    ratio: Decimal
    classification: str
    thresholds: dict = field(
        default_factory=lambda: {"paired_below": PAIRED_BELOW, "equidistant_within": EQUIDISTANT_WITHIN}
    )


def classify_pattern(ratio):
    """'paired' for a small upper splitting, 'equidistant' for ratio ~ 1."""
    if ratio < PAIRED_BELOW:
        return "paired"
    if abs(ratio - 1) < EQUIDISTANT_WITHIN:
        return "equidistant"
    return "other"


def _to_decimal(value):
    if isinstance(value, Fraction):
        return Decimal(value.numerator) / Decimal(value.denominator)
    return Decimal(str(value))


def compare_with_numerical(ideal_spectrum, levels):
    """Relative deviations of three numerical levels from the ideal spectrum.

    ``levels`` may hold Eigenlevel objects or plain energies; arithmetic is
    decimal so 30-digit energies keep their tiny splittings.
    The pattern ratio is (E2 - E1) / (E1 - E0).
    """
    if len(levels) != 3 or len(ideal_spectrum) != 3:
        raise InvalidParameterError(f"need exactly 3 levels, got {len(levels)}")
    with localcontext() as ctx:
        ctx.prec = 60
        energies = [Decimal(getattr(lv, "energy", lv)) for lv in levels]
        ideal = [_to_decimal(e) for e in ideal_spectrum]
        deviations = tuple((e - i) / i for e, i in zip(energies, ideal))
        splitting = energies[2] - energies[1]
        gap = energies[1] - energies[0]
        if gap == 0:
            raise InvalidParameterError("E1 == E0: pattern ratio undefined")
        ratio = splitting / gap
    return SpectrumComparison(
        ideal=tuple(ideal),
        numerical=tuple(energies),
        deviations=deviations,
        splitting=splitting,
        ratio=ratio,
        classification=classify_pattern(float(ratio)),
    )
