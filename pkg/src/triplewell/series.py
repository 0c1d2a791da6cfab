"""Dirichlet eigenproblem on [-L, L] by truncated Taylor series about x = 0.

With hbar = m = 1 the equation -psi''/2 + V psi = E psi gives the
coefficient recurrence

    (n + 1)(n + 2) a[n+2] = 2 * sum_k c_k a[n-k] - 2 E a[n]

seeded by a0 = 1 (even sector) or a1 = 1 (odd sector). Each sector keeps
exactly ``terms`` nonzero coefficients. An energy is an eigenvalue when the
truncated series vanishes at the wall, psi(L) = 0; roots of psi(L) as a
function of E are bracketed by a scan and refined by bisection.

All multiprecision work runs inside ``mp.workprec``, which changes the
process-global mpmath context. Solve independent problems in separate
processes, not threads.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
import math
import os

import numpy as np
from mpmath import mp
from mpmath.libmp import MPZ

from ._exact import format_decimal, fraction_to_mpf, to_fraction
from .errors import (
    BracketError,
    DegenerateFunctionError,
    IncompleteScanError,
    InvalidParameterError,
    NodeAmbiguityError,
    PrecisionInsufficientError,
)
from .potential import analyze_wells

PRECISION_FLOOR_ENV = "TRIPLEWELL_PRECISION_FLOOR"
DEFAULT_PRECISION_FLOOR = 256
MIN_TERMS = 8
MIN_PRECISION = 64
# extra decimal places resolved by bisection beyond the reported ones
GUARD_DIGITS = 3
SCAN_STEPS_PER_QUANTUM = 20
POLISH_STEPS = 60
BAND_EXTRA_TERMS = 0.25
BAND_MARGIN = 4


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"

    @property
    def offset(self):
        return 0 if self is Parity.EVEN else 1

    @property
    def sign(self):
        return 1 if self is Parity.EVEN else -1


@dataclass(frozen=True)
class BoxProblem:
    """Potential between hard walls at -half_width and +half_width."""

    potential: object
    half_width: Fraction
    terms: int
    precision: int
    root_tolerance: Fraction

    def __post_init__(self):
        object.__setattr__(self, "half_width", to_fraction(self.half_width, "half_width"))
        object.__setattr__(
            self, "root_tolerance", to_fraction(self.root_tolerance, "root_tolerance")
        )
        if self.half_width <= 0:
            raise InvalidParameterError(f"half_width must be positive, got {self.half_width}")
        if int(self.terms) != self.terms or self.terms < MIN_TERMS:
            raise InvalidParameterError(f"terms must be an integer >= {MIN_TERMS}")
        if int(self.precision) != self.precision or self.precision < MIN_PRECISION:
            raise InvalidParameterError(f"precision must be an integer >= {MIN_PRECISION}")
        if self.root_tolerance <= 0:
            raise InvalidParameterError("root_tolerance must be positive")
        if not self.potential.is_even:
            raise InvalidParameterError(
                "parity-split solving needs an even potential (odd coefficients must vanish)"
            )

    @classmethod
    def for_digits(cls, potential, half_width, terms, digits, precision=None):
        """Problem resolving ``digits`` decimal places of each energy.

        Without an explicit ``precision`` the working bits are sized from the
        largest series term at the top of the scan window, so that the
        cancellation guard in :func:`boundary_value` keeps clear of the
        bisection's final resolution.
        """
        if int(digits) != digits or digits < 1:
            raise InvalidParameterError(f"digits must be a positive integer, got {digits}")
        tolerance = Fraction(1, 10**digits)
        if precision is None:
            probe = cls(potential, half_width, terms, DEFAULT_PRECISION_FLOOR, tolerance)
            precision = recommended_precision(probe, digits)
        return cls(potential, half_width, terms, precision, tolerance)

    @property
    def digits(self):
        """floor(-log10(root_tolerance)), computed exactly."""
        inv = 1 / self.root_tolerance
        d = 0
        if inv >= 1:
            while 10 ** (d + 1) <= inv:
                d += 1
        else:
            while Fraction(10) ** d > inv:
                d -= 1
        return d

    def with_precision(self, precision):
        return replace(self, precision=int(precision))

    def with_terms(self, terms):
        return replace(self, terms=int(terms))


@dataclass(frozen=True)
class SeriesWavefunction:
    """Truncated Taylor coefficients a[0..degree] of one parity sector."""

    parity: Parity
    energy: object
    coefficients: tuple
    norm_applied: bool = False
    precision: int = DEFAULT_PRECISION_FLOOR
    # coefficients bounding the truncation error, same scale as psi
    error_band: tuple = field(default=None, compare=False, repr=False)

    @property
    def terms(self):
        return len(self.coefficients[self.parity.offset :: 2])


@dataclass(frozen=True)
class Eigenlevel:
    index: int
    parity: Parity
    energy: str
    nodes: int
    value: object = field(default=None, compare=False, repr=False)
    wavefunction: SeriesWavefunction = field(default=None, compare=False, repr=False)


def precision_floor():
    raw = os.environ.get(PRECISION_FLOOR_ENV)
    if raw is None:
        return DEFAULT_PRECISION_FLOOR
    try:
        floor = int(raw)
    except ValueError:
        raise InvalidParameterError(f"{PRECISION_FLOOR_ENV} must be an integer, got {raw!r}") from None
    if floor < MIN_PRECISION:
        raise InvalidParameterError(f"{PRECISION_FLOOR_ENV} must be >= {MIN_PRECISION}")
    return floor


def recommended_precision(problem, digits, probe_energy=None):
    """Working bits for ``digits`` decimal places on ``problem``.

    Returns the larger of ``4 * digits + 64``, the floor (256 unless
    overridden by TRIPLEWELL_PRECISION_FLOOR) and twice the bit length of
    the largest series term plus the resolved digits, rounded up to 64.
    """
    if probe_energy is None:
        probe_energy = scan_window(problem)[2]
    with mp.workprec(128):
        E = fraction_to_mpf(to_fraction(probe_energy))
        log_term = 0.0
        for parity in Parity:
            terms = _scaled_terms(problem, E, parity, problem.half_width)
            log_term = max(log_term, max(float(mp.log(abs(t), 2)) for t in terms if t))
    resolved = (digits + GUARD_DIGITS) * math.log2(10)
    bits = max(precision_floor(), 4 * digits + 64, 2 * (log_term + resolved + 16) + 64)
    return 64 * math.ceil(bits / 64)


def _scaled_terms(problem, E, parity, scale):
    """Coefficients a[n] * scale**n of the sector's nonzero terms, in order.

    Runs at the caller's working precision; ``scale`` = 1 gives the plain
    Taylor coefficients, ``scale`` = L gives the terms of psi(L).
    """
    s = parity.offset
    c = problem.potential.coefficients
    scale = to_fraction(scale)
    s2 = scale * scale
    shift = -2 * fraction_to_mpf(s2) * (E - fraction_to_mpf(c[0]))
    # (lag in sector steps, 2 * c_k * scale**(k + 2)) for the even k > 0
    weights = [
        (k // 2, fraction_to_mpf(2 * ck * scale ** (k + 2)))
        for k, ck in enumerate(c)
        if k > 0 and ck != 0
    ]
    out = [fraction_to_mpf(scale**s)]
    for j in range(problem.terms - 1):
        n = s + 2 * j
        acc = shift * out[j]
        for lag, w in weights:
            if j >= lag:
                acc += w * out[j - lag]
        out.append(acc / ((n + 1) * (n + 2)))
    return out


def series_coefficients(problem, E, parity):
    """Taylor coefficients of the sector solution at energy ``E``."""
    parity = Parity(parity)
    E = _check_energy(E)
    with mp.workprec(problem.precision):
        sector = _scaled_terms(problem, fraction_to_mpf(E), parity, 1)
        coefficients = [mp.zero] * (2 * problem.terms - 1 + parity.offset)
        coefficients[parity.offset :: 2] = sector
        return SeriesWavefunction(
            parity, fraction_to_mpf(E), tuple(coefficients), False, problem.precision
        )


def _check_energy(E):
    return to_fraction(E, "energy")


@lru_cache(maxsize=32)
def _fixed_weights(problem):
    """Recurrence constants for psi(L) on a 2**precision fixed-point scale."""
    bits = problem.precision
    L = problem.half_width
    c = problem.potential.coefficients
    weights = tuple(
        (k // 2, MPZ(round(2 * ck * L ** (k + 2) * 2**bits)))
        for k, ck in enumerate(c)
        if k > 0 and ck != 0
    )
    return weights, L * L, c[0]


def _boundary(problem, E, parity):
    """(psi(L), largest partial-sum magnitude) in units of 2**-precision.

    Runs the recurrence on the scaled terms a[n] L**n with plain integers,
    which is much faster than multiprecision floats and carries an absolute
    error of a few units per term.
    """
    bits = problem.precision
    weights, L2, c0 = _fixed_weights(problem)
    shift = MPZ(round(-2 * L2 * (to_fraction(E) - c0) * 2**bits))
    s = parity.offset
    first = MPZ(round(problem.half_width**s * 2**bits))
    terms = [first]
    total = first
    largest = abs(first)
    for j in range(problem.terms - 1):
        n = s + 2 * j
        acc = shift * terms[j]
        for lag, w in weights:
            if j >= lag:
                acc += w * terms[j - lag]
        t = (acc >> bits) // ((n + 1) * (n + 2))
        terms.append(t)
        total += t
        if abs(total) > largest:
            largest = abs(total)
    return total, largest


def _guarded(problem, value, largest):
    if value == 0 or largest > abs(value) << (problem.precision // 2):
        raise PrecisionInsufficientError(
            f"psi(L) lost more than half of {problem.precision} working bits to cancellation; "
            "raise the precision"
        )
    return value


def boundary_value(problem, E, parity):
    """psi_E(L) for the sector's seed; its sign drives the bracketing.

    Raises PrecisionInsufficientError when the largest partial sum exceeds
    the result by more than 2**(precision / 2).
    """
    parity = Parity(parity)
    value = _guarded(problem, *_boundary(problem, _check_energy(E), parity))
    with mp.workprec(problem.precision):
        return mp.ldexp(mp.mpf(value), -problem.precision)


def find_eigenvalue(problem, bracket, parity):
    """Bisect psi(L) inside ``bracket`` and describe the level found.

    Bisection continues GUARD_DIGITS decimal places past the reported ones;
    the bracket is then polished to the noise floor (see ``_polish``) and the
    result rounded half-even to ``problem.digits`` places.
    """
    parity = Parity(parity)
    lo, hi = sorted(_check_energy(e) for e in bracket)
    with mp.workprec(problem.precision):
        lo, hi = fraction_to_mpf(lo), fraction_to_mpf(hi)
        f_lo = _guarded(problem, *_boundary(problem, lo, parity))
        f_hi = _guarded(problem, *_boundary(problem, hi, parity))
        if (f_lo > 0) == (f_hi > 0):
            raise BracketError(
                f"psi(L) has the same sign at both ends of [{mp.nstr(lo, 12)}, {mp.nstr(hi, 12)}] "
                f"in the {parity.value} sector"
            )
        tolerance = fraction_to_mpf(problem.root_tolerance)
        target = tolerance / 10**GUARD_DIGITS
        while hi - lo >= target:
            mid = (lo + hi) / 2
            if mid == lo or mid == hi:
                break
            try:
                f_mid = _guarded(problem, *_boundary(problem, mid, parity))
            except PrecisionInsufficientError:
                # mid sits inside the noise band of the root; accept once resolved
                if hi - lo < tolerance:
                    lo = hi = mid
                    break
                raise
            if (f_mid > 0) == (f_lo > 0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        energy = _polish(problem, parity, lo, hi, f_lo)
    wavefunction = series_coefficients(problem, to_fraction(energy), parity)
    wavefunction = replace(wavefunction, error_band=_error_band(problem, energy, parity))
    wavefunction = normalize(wavefunction, problem.half_width)
    nodes = count_nodes(wavefunction, problem.half_width)
    return Eigenlevel(
        index=nodes,
        parity=parity,
        energy=format_decimal(energy, problem.digits),
        nodes=nodes,
        value=energy,
        wavefunction=wavefunction,
    )


def _polish(problem, parity, lo, hi, f_lo):
    """Illinois regula falsi inside a bisection bracket.

    A root accurate to the reported digits still leaves E-error times the
    exponentially growing solution dominating psi near the walls. Polishing
    down to the precision noise floor (where the cancellation guard fires)
    makes the eigenfunction tail trustworthy.
    """
    if lo == hi:
        return lo
    f_hi = _guarded(problem, *_boundary(problem, hi, parity))
    a, fa, b, fb = lo, mp.mpf(f_lo), hi, mp.mpf(f_hi)
    side = 0
    c = (a + b) / 2
    for _ in range(POLISH_STEPS):
        c = (a * fb - b * fa) / (fb - fa)
        if not a < c < b:
            break
        try:
            fc = _guarded(problem, *_boundary(problem, c, parity))
        except PrecisionInsufficientError:
            break
        if (fc > 0) == (fb > 0):
            b, fb = c, mp.mpf(fc)
            if side == -1:
                fa /= 2
            side = -1
        else:
            a, fa = c, mp.mpf(fc)
            if side == 1:
                fb /= 2
            side = 1
    return c


def _error_band(problem, energy, parity):
    """Difference between psi and a longer-series estimate of the same level.

    The longer series at ``energy`` is shifted to its own root to first
    order, psi_long + dE * dpsi/dE, with dE = -psi_long(L) / dpsi/dE(L).
    Its difference from psi bounds where psi's sign can be trusted.
    """
    longer = problem.with_terms(math.ceil(problem.terms * (1 + BAND_EXTRA_TERMS)))
    E = to_fraction(energy)
    h = problem.root_tolerance
    base = series_coefficients(longer, E, parity).coefficients
    bumped = series_coefficients(longer, E + h, parity).coefficients
    short = series_coefficients(problem, E, parity).coefficients
    with mp.workprec(problem.precision):
        hm = fraction_to_mpf(h)
        slope = [(b - a) / hm for a, b in zip(base, bumped)]
        L = fraction_to_mpf(problem.half_width)
        at_wall = mp.polyval(base[::-1], L)
        slope_wall = mp.polyval(slope[::-1], L)
        if slope_wall == 0:
            return tuple(mp.zero for _ in base)
        shift = -at_wall / slope_wall
        band = [a + shift * d for a, d in zip(base, slope)]
        for i, a in enumerate(short):
            band[i] -= a
    return tuple(band)


def scan_window(problem):
    """(start, step, ceiling) of the default energy scan.

    The step is one twentieth of the smallest harmonic frequency among the
    wells inside the box; the ceiling sits three such quanta above the lowest
    barrier top. Without a barrier it sits three quanta plus the largest
    frequency above the highest well bottom.
    """
    L = problem.half_width
    wells = analyze_wells(problem.potential, (-L, L), precision=64)
    freqs = [to_fraction(f) for f in wells.frequencies]
    bottoms = [to_fraction(m.value) for m in wells.minima]
    quantum = min(freqs)
    start = min(Fraction(0), min(bottoms))
    if wells.barrier_tops:
        ceiling = min(to_fraction(b.value) for b in wells.barrier_tops) + 3 * quantum
    else:
        ceiling = max(bottoms) + 3 * quantum + max(freqs)
    return start, quantum / SCAN_STEPS_PER_QUANTUM, ceiling


def scan_levels(problem, count=3, step=None, ceiling=None, start=None):
    """The ``count`` lowest levels, both sectors merged in ascending order.

    Both sectors are stepped upward together; scanning stops once ``count``
    roots have been bracketed. Exactly degenerate energies order even
    before odd.
    """
    if int(count) != count or count < 1:
        raise InvalidParameterError(f"count must be a positive integer, got {count}")
    if step is None or ceiling is None or start is None:
        d_start, d_step, d_ceiling = scan_window(problem)
        start = d_start if start is None else start
        step = d_step if step is None else step
        ceiling = d_ceiling if ceiling is None else ceiling
    start, step, ceiling = (to_fraction(v) for v in (start, step, ceiling))
    if step <= 0:
        raise InvalidParameterError("scan step must be positive")

    brackets = []
    previous = {p: None for p in Parity}
    E = start
    with mp.workprec(problem.precision):
        while len(brackets) < count:
            if E > ceiling:
                break
            E_mp = fraction_to_mpf(E)
            for parity in Parity:
                f = _guarded(problem, *_boundary(problem, E_mp, parity))
                if previous[parity] is not None and (f > 0) != (previous[parity][1] > 0):
                    brackets.append((previous[parity][0], E, parity))
                previous[parity] = (E, f)
            E += step

    levels = [find_eigenvalue(problem, (lo, hi), parity) for lo, hi, parity in brackets]
    levels.sort(key=lambda lv: (lv.value, lv.parity is Parity.ODD))
    if len(levels) < count:
        raise IncompleteScanError(
            f"found {len(levels)} of {count} levels below E = {float(ceiling):.6g}", levels
        )
    levels = [replace(lv, index=i) for i, lv in enumerate(levels[:count])]
    for lv in levels:
        if lv.nodes != lv.index:
            raise IncompleteScanError(
                f"level {lv.index} has {lv.nodes} nodes; a level was missed by the scan", levels
            )
    return levels


def digits_stable(problem, level):
    """Whether ``problem`` reproduces ``level.energy`` to every reported digit.

    True when psi(L) changes sign across the half-unit interval around the
    reported decimal, i.e. the root of ``problem`` rounds to the same string.
    """
    reported = Fraction(level.energy)
    half_unit = Fraction(1, 2 * 10 ** problem.digits)
    try:
        with mp.workprec(problem.precision):
            lo = _guarded(problem, *_boundary(problem, fraction_to_mpf(reported - half_unit), level.parity))
            hi = _guarded(problem, *_boundary(problem, fraction_to_mpf(reported + half_unit), level.parity))
    except PrecisionInsufficientError:
        return False
    return (lo > 0) != (hi > 0)


def series_residual(wavefunction, potential):
    """Coefficients of psi'' - 2 (V - E) psi for the truncated series."""
    a = wavefunction.coefficients
    degree = len(a) - 1 + potential.degree
    with mp.workprec(wavefunction.precision):
        c = [fraction_to_mpf(ck) for ck in potential.coefficients]
        E = wavefunction.energy
        out = []
        for n in range(degree + 1):
            second = (n + 1) * (n + 2) * a[n + 2] if n + 2 < len(a) else mp.zero
            product = mp.zero
            for k, ck in enumerate(c):
                if ck != 0 and 0 <= n - k < len(a):
                    product += ck * a[n - k]
            if n < len(a):
                product -= E * a[n]
            out.append(second - 2 * product)
        return out


def _sector_ints(wavefunction, L, bits):
    """Scaled sector coefficients a[n] L**n as fixed-point integers."""
    s = wavefunction.parity.offset
    with mp.workprec(wavefunction.precision + 64):
        Lm = fraction_to_mpf(to_fraction(L))
        L2 = Lm * Lm
        scale = Lm**s * mp.mpf(2) ** bits
        out = []
        for a in wavefunction.coefficients[s::2]:
            out.append(MPZ(int(mp.nint(a * scale))))
            scale *= L2
    return np.array(out, dtype=object)


def _fixed_values(wavefunction, L, ts, bits):
    """psi(t L) * 2**bits as integers, for rationals 0 <= t <= 1.

    Horner in u = t**2 on scaled coefficients, so no step amplifies rounding
    error. Each point starts Horner at the last term that can still reach
    its fixed-point resolution; the discarded tail decays monotonically.
    """
    coeffs = _sector_ints(wavefunction, L, bits)
    n = len(coeffs)
    one = 1 << bits
    order = sorted(range(len(ts)), key=lambda i: ts[i])
    ts = [ts[i] for i in order]
    us = np.array([MPZ(round(t * t * one)) for t in ts], dtype=object)
    sizes = np.array([abs(int(b)).bit_length() for b in coeffs], dtype=float)
    js = np.arange(n)
    top = np.empty(len(ts), dtype=int)
    for i, t in enumerate(ts):
        if t == 0:
            top[i] = 0
        elif t >= 1:
            top[i] = n - 1
        else:
            live = np.nonzero(sizes + 2 * js * math.log2(t) >= -8)[0]
            top[i] = live[-1] if len(live) else 0
    acc = np.full(len(ts), MPZ(0), dtype=object)
    for j in range(int(top.max()), -1, -1):
        i0 = int(np.searchsorted(top, j))
        acc[i0:] = ((acc[i0:] * us[i0:]) >> bits) + coeffs[j]
    if wavefunction.parity is Parity.ODD:
        tt = np.array([MPZ(round(t * one)) for t in ts], dtype=object)
        acc = (acc * tt) >> bits
    out = np.empty(len(ts), dtype=object)
    out[order] = acc
    return out, n


def _grid_signs(wavefunction, L, points):
    """Signs of psi on the interior grid x_i = L (2 i / (points + 1) - 1).

    A point gets sign 0 when |psi| is within rounding noise or within
    BAND_MARGIN times the attached error band.
    """
    bits = wavefunction.precision + 64
    denom = points + 1
    half = [Fraction(2 * i - denom, denom) for i in range(1, points + 1) if 2 * i >= denom]
    values, n = _fixed_values(wavefunction, L, half, bits)
    noise = [8 * n] * len(half)
    if wavefunction.error_band is not None:
        band = replace(wavefunction, coefficients=wavefunction.error_band, error_band=None)
        widths, m = _fixed_values(band, L, half, bits)
        noise = [8 * (n + m) + BAND_MARGIN * abs(w) for w in widths]
    signs = {}
    for t, v, tol in zip(half, values, noise):
        sg = 0 if abs(v) <= tol else (1 if v > 0 else -1)
        signs[t] = sg
        signs[-t] = sg * wavefunction.parity.sign
    return [signs[Fraction(2 * i - denom, denom)] for i in range(1, points + 1)]


def _sign_changes(signs):
    nonzero = [s for s in signs if s]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def count_nodes(wavefunction, L, points=None):
    """Interior sign changes of psi on a uniform grid over (-L, L).

    The count is repeated on the nested grid four times finer and must
    agree.
    """
    if points is None:
        points = max(1000, 2 * wavefunction.terms)
    fine_signs = _grid_signs(wavefunction, L, 4 * (points + 1) - 1)
    coarse = _sign_changes(fine_signs[3::4])
    fine = _sign_changes(fine_signs)
    if coarse != fine:
        raise NodeAmbiguityError(
            f"node count {coarse} on {points} points but {fine} on the finer grid"
        )
    return coarse


def _signed_digits(value, count, width):
    """Split sum_k c_k 2**(k width) into its signed digits c_k."""
    if count == 1:
        return [value]
    half = count // 2
    span = half * width
    low = value & ((1 << span) - 1)
    if low >= 1 << (span - 1):
        low -= 1 << span
    return _signed_digits(low, half, width) + _signed_digits(
        (value - low) >> span, count - half, width
    )


def norm_squared(wavefunction, L, bits=None):
    """Integral of psi**2 over [-L, L], term by term.

    The square of the sector polynomial is formed exactly on a 2**bits
    fixed-point scale by Kronecker substitution (one big-integer squaring),
    then weighted by the monomial integrals 2 / (m + 1).
    """
    if bits is None:
        bits = 2 * wavefunction.precision
    L = to_fraction(L)
    s = wavefunction.parity.offset
    b = [int(v) for v in _sector_ints(wavefunction, L, bits)]
    width = 2 * max(abs(v).bit_length() for v in b) + len(b).bit_length() + 2
    packed = 0
    for v in reversed(b):
        packed = (packed << width) + v
    square = _signed_digits(packed * packed, 2 * len(b) - 1, width)
    total = sum((2 * ck) // (2 * s + 2 * k + 1) for k, ck in enumerate(square))
    with mp.workprec(wavefunction.precision):
        return fraction_to_mpf(L * Fraction(total, 1 << (2 * bits)))


def normalize(wavefunction, L):
    """Scale to unit norm on [-L, L] with a fixed sign convention.

    Even states get psi(0) > 0, odd states psi'(0) > 0. A function already
    normalized to within rounding is returned unchanged.
    """
    norm = norm_squared(wavefunction, L)
    if norm == 0:
        raise DegenerateFunctionError("psi vanishes identically")
    s = wavefunction.parity.offset
    lead = next((a for a in wavefunction.coefficients[s::2] if a != 0), None)
    if lead is None:
        raise DegenerateFunctionError("psi vanishes identically")
    with mp.workprec(wavefunction.precision):
        slack = mp.mpf(2) ** (32 - wavefunction.precision)
        if lead > 0 and abs(norm - 1) <= slack:
            return replace(wavefunction, norm_applied=True)
        factor = 1 / mp.sqrt(norm)
        if lead < 0:
            factor = -factor
        coefficients = tuple(a * factor for a in wavefunction.coefficients)
        band = wavefunction.error_band
        if band is not None:
            band = tuple(b * factor for b in band)
    return replace(wavefunction, coefficients=coefficients, norm_applied=True, error_band=band)


def sample_wavefunction(wavefunction, L, samples):
    """[(x, psi(x))] as floats on a uniform grid including both walls.

    Values are computed for x >= 0 and mirrored, so odd states satisfy
    psi(-x) == -psi(x) exactly on the symmetric grid.
    """
    if int(samples) != samples or samples < 2:
        raise InvalidParameterError(f"samples must be an integer >= 2, got {samples}")
    L = to_fraction(L)
    span = samples - 1
    ts = [Fraction(2 * i - span, span) for i in range(samples)]
    half = sorted({abs(t) for t in ts})
    bits = wavefunction.precision + 64
    values, _ = _fixed_values(wavefunction, L, half, bits)
    with mp.workprec(64):
        lookup = {t: float(mp.ldexp(mp.mpf(int(v)), -bits)) for t, v in zip(half, values)}
    sign = wavefunction.parity.sign
    return [
        (float(t * L), lookup[t] if t >= 0 else sign * lookup[-t]) for t in ts
    ]
