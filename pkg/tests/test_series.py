from decimal import Decimal
from fractions import Fraction
import math

from hypothesis import given, settings, strategies as st
from mpmath import mp
import pytest

from triplewell import (
    BoxProblem,
    BracketError,
    DegenerateFunctionError,
    IncompleteScanError,
    InvalidParameterError,
    Parity,
    PolynomialPotential,
    PrecisionInsufficientError,
    SeriesWavefunction,
    boundary_value,
    build_triple_well,
    count_nodes,
    find_eigenvalue,
    normalize,
    sample_wavefunction,
    scan_levels,
    series_coefficients,
)
from triplewell.series import (
    digits_stable,
    norm_squared,
    recommended_precision,
    series_residual,
)

FREE = PolynomialPotential([0])
BOX_GROUND = mp.pi**2 / 32


def free_box(terms=60):
    return BoxProblem(FREE, 2, terms, 256, Fraction(1, 10**12))


# recurrence


@settings(max_examples=25, deadline=None)
@given(
    E=st.fractions(min_value=-5, max_value=60, max_denominator=1000),
    parity=st.sampled_from(list(Parity)),
    omega=st.sampled_from([1, 5, Fraction(21, 2), 20]),
)
def test_recurrence_residual_vanishes(E, parity, omega):
    V = build_triple_well(omega)
    problem = BoxProblem(V, 2, 40, 256, Fraction(1, 10**10))
    wf = series_coefficients(problem, E, parity)
    a = wf.coefficients
    residual = series_residual(wf, V)
    with mp.workprec(256):
        c = [mp.mpf(Fraction(ck).numerator) / Fraction(ck).denominator for ck in V.coefficients]
        for n in range(len(a) - 2):
            scale = abs((n + 1) * (n + 2) * a[n + 2]) + 2 * abs(wf.energy * a[n])
            scale += sum(2 * abs(ck * a[n - k]) for k, ck in enumerate(c) if 0 <= n - k)
            assert abs(residual[n]) <= scale * mp.mpf(2) ** -240


@settings(max_examples=20, deadline=None)
@given(E=st.fractions(min_value=0, max_value=40, max_denominator=100), parity=st.sampled_from(list(Parity)))
def test_sector_parity_of_coefficients(E, parity):
    problem = BoxProblem(build_triple_well(20), 2, 30, 128, Fraction(1, 10**8))
    wf = series_coefficients(problem, E, parity)
    other = 1 - parity.offset
    assert all(x == 0 for x in wf.coefficients[other::2])
    assert wf.coefficients[parity.offset] == 1
    assert wf.terms == 30


def test_seeds():
    problem = free_box()
    even = series_coefficients(problem, 1, "even").coefficients
    odd = series_coefficients(problem, 1, "odd").coefficients
    # cos(sqrt(2) x) and sin(sqrt(2) x) / sqrt(2)
    assert even[:3] == (1, 0, -1)
    assert odd[:3] == (0, 1, 0)
    assert abs(odd[3] + mp.mpf(1) / 3) < mp.mpf(2) ** -50


def test_non_finite_energy_rejected():
    with pytest.raises(InvalidParameterError):
        boundary_value(free_box(), float("nan"), "even")
    with pytest.raises(InvalidParameterError):
        series_coefficients(free_box(), float("inf"), "odd")


# problem validation


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(half_width=0),
        dict(terms=4),
        dict(precision=32),
        dict(root_tolerance=0),
        dict(potential=PolynomialPotential([0, 1, 1])),
    ],
)
def test_problem_validation(kwargs):
    args = dict(potential=FREE, half_width=2, terms=50, precision=128, root_tolerance=Fraction(1, 10**6))
    args.update(kwargs)
    with pytest.raises(InvalidParameterError):
        BoxProblem(**args)


@pytest.mark.parametrize(
    "tol, digits", [(Fraction(1, 10**13), 13), (Fraction(5, 10**14), 13), (Fraction(1, 3), 0), (Fraction(1), 0)]
)
def test_digits_from_tolerance(tol, digits):
    assert BoxProblem(FREE, 1, 10, 64, tol).digits == digits


def test_precision_floor_from_environment(monkeypatch, small_problem):
    monkeypatch.setenv("TRIPLEWELL_PRECISION_FLOOR", "1024")
    assert recommended_precision(small_problem, 10) >= 1024
    monkeypatch.setenv("TRIPLEWELL_PRECISION_FLOOR", "abc")
    with pytest.raises(InvalidParameterError):
        recommended_precision(small_problem, 10)
    monkeypatch.setenv("TRIPLEWELL_PRECISION_FLOOR", "32")
    with pytest.raises(InvalidParameterError):
        recommended_precision(small_problem, 10)


def test_precision_scales_with_digits():
    V = build_triple_well(100)
    p = BoxProblem.for_digits(V, Fraction(3, 2), 1500, 30)
    assert p.precision >= 512 and p.precision % 64 == 0
    assert p.precision >= 4 * 30 + 64


# roots


def test_free_box_ground_state():
    level = find_eigenvalue(free_box(), (0.3, 0.31), "even")
    assert abs(Fraction(level.energy) - Fraction(str(mp.nstr(BOX_GROUND, 20)))) <= Fraction(1, 10**12)
    assert level.nodes == 0


def test_bracket_without_root():
    with pytest.raises(BracketError):
        find_eigenvalue(free_box(), (0.1, 0.2), "even")


def test_cancellation_guard():
    problem = BoxProblem(build_triple_well(20), 2, 750, 64, Fraction(1, 10**13))
    with pytest.raises(PrecisionInsufficientError):
        boundary_value(problem, 9.11, "even")


@pytest.mark.parametrize(
    "parity, bracket, expected",
    [("even", (9.0, 9.2), "9.1100715702553"), ("odd", (17.4, 17.6), "17.5140977513941")],
)
def test_bracketed_published_levels(row20, parity, bracket, expected):
    problem = row20[0]
    level = find_eigenvalue(problem, bracket, parity)
    assert level.energy == expected


def test_reported_energy_is_a_root(row20):
    problem, levels, _ = row20
    tol = problem.root_tolerance
    for lv in levels:
        E = Fraction(lv.energy)
        value = boundary_value(problem, E, lv.parity)
        slope = (boundary_value(problem, E + tol, lv.parity) - boundary_value(problem, E - tol, lv.parity)) / 2
        assert abs(value) < abs(slope)


def test_energy_string_has_requested_places(small_levels, small_problem):
    for lv in small_levels:
        assert -Decimal(lv.energy).as_tuple().exponent == small_problem.digits


# scan


def test_scan_of_row_20(row20):
    _, levels, _ = row20
    assert [lv.energy for lv in levels] == ["9.1100715702553", "17.5140977513941", "17.6975924458074"]
    assert [lv.parity for lv in levels] == [Parity.EVEN, Parity.ODD, Parity.EVEN]
    assert [lv.index for lv in levels] == [0, 1, 2]
    assert [lv.nodes for lv in levels] == [0, 1, 2]


def test_scan_small_problem(small_levels):
    assert [lv.parity.value for lv in small_levels] == ["even", "odd", "even"]
    assert [lv.nodes for lv in small_levels] == [0, 1, 2]
    energies = [Fraction(lv.energy) for lv in small_levels]
    assert energies == sorted(energies)


def test_more_levels_keep_node_order(small_problem):
    levels = scan_levels(small_problem, 5)
    assert [lv.nodes for lv in levels] == list(range(5))
    assert [lv.parity.sign for lv in levels] == [1, -1, 1, -1, 1]


def test_incomplete_scan_reports_found_levels(small_problem):
    with pytest.raises(IncompleteScanError) as info:
        scan_levels(small_problem, 3, ceiling=2)
    assert [lv.energy for lv in info.value.found] == ["1.4922633524"]


def test_unconverged_truncation_finds_nothing():
    problem = BoxProblem.for_digits(build_triple_well(5), 2, 60, 10)
    with pytest.raises(IncompleteScanError):
        scan_levels(problem, 3)


@pytest.mark.parametrize("count", [0, -1, 1.5])
def test_bad_count(small_problem, count):
    with pytest.raises(InvalidParameterError):
        scan_levels(small_problem, count)


# stability


def test_digits_survive_more_precision_and_terms(row20):
    problem, levels, _ = row20
    precise = problem.with_precision(2 * problem.precision)
    longer = problem.with_terms(math.ceil(1.25 * problem.terms))
    for lv in levels:
        assert digits_stable(precise, lv)
        assert digits_stable(longer, lv)


def test_unconverged_truncation_is_flagged():
    problem = BoxProblem.for_digits(build_triple_well(5), 2, 150, 10)
    levels = scan_levels(problem, 3)
    longer = problem.with_terms(math.ceil(1.25 * problem.terms))
    assert not all(digits_stable(longer, lv) for lv in levels)


# nodes, norm, samples


def test_node_count_independent_of_grid(small_levels):
    for lv in small_levels:
        assert count_nodes(lv.wavefunction, 2, points=300) == lv.nodes
        assert count_nodes(lv.wavefunction, 2, points=2000) == lv.nodes


def test_error_band_attached(small_levels):
    wf = small_levels[0].wavefunction
    assert wf.error_band is not None
    assert len(wf.error_band) > len(wf.coefficients)


def test_normalize_constant():
    wf = SeriesWavefunction(Parity.EVEN, mp.zero, (mp.one,), False, 128)
    out = normalize(wf, 2)
    assert out.norm_applied
    assert out.coefficients == (mp.mpf(0.5),)


def test_normalize_flips_sign_and_is_idempotent():
    wf = SeriesWavefunction(Parity.ODD, mp.zero, (mp.zero, mp.mpf(-3)), False, 128)
    out = normalize(wf, 1)
    # 9 * 2/3 = 6 before scaling
    assert out.coefficients[1] > 0
    with mp.workprec(128):
        assert abs(out.coefficients[1] - mp.sqrt(mp.mpf(3) / 2)) < mp.mpf(2) ** -120
    assert normalize(out, 1).coefficients == out.coefficients


def test_normalize_zero_function():
    wf = SeriesWavefunction(Parity.EVEN, mp.zero, (mp.zero, mp.zero, mp.zero), False, 128)
    with pytest.raises(DegenerateFunctionError):
        normalize(wf, 1)


def test_eigenfunctions_are_normalized(row20):
    problem, levels, _ = row20
    for lv in levels:
        wf = lv.wavefunction
        assert wf.norm_applied
        with mp.workprec(wf.precision):
            exact = norm_squared(wf, problem.half_width, bits=4 * wf.precision)
            assert abs(exact - 1) < mp.mpf(10) ** -problem.digits


def test_eigenfunctions_orthogonal_within_sector(small_levels):
    a, c = small_levels[0].wavefunction, small_levels[2].wavefunction
    # |a + c|^2 = 2 + 2 <a|c>
    summed = SeriesWavefunction(
        Parity.EVEN, mp.zero, tuple(x + y for x, y in zip(a.coefficients, c.coefficients)), False, a.precision
    )
    assert abs(norm_squared(summed, 2) - 2) < 1e-8


def test_samples_respect_parity(small_levels):
    for lv in small_levels:
        samples = sample_wavefunction(lv.wavefunction, 2, 41)
        xs = [x for x, _ in samples]
        assert xs[0] == -2.0 and xs[-1] == 2.0 and xs[20] == 0.0
        sign = lv.parity.sign
        for (x1, p1), (x2, p2) in zip(samples, reversed(samples)):
            assert x1 == -x2
            assert p1 == sign * p2
        assert abs(samples[0][1]) < 1e-6
    assert sample_wavefunction(small_levels[1].wavefunction, 2, 41)[20][1] == 0.0


@pytest.mark.parametrize("samples", [1, 0, 2.5])
def test_sample_count_validated(small_levels, samples):
    with pytest.raises(InvalidParameterError):
        sample_wavefunction(small_levels[0].wavefunction, 2, samples)
