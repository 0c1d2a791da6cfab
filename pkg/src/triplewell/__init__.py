"""High-precision spectrum of the symmetric triple well (omega**2/2) x**2 (x**2 - 1)**2."""

from .errors import (
    AnalysisError,
    BracketError,
    DegenerateFunctionError,
    DegenerateMinimumError,
    IncompleteScanError,
    InvalidParameterError,
    NodeAmbiguityError,
    PrecisionInsufficientError,
    TripleWellError,
)
from .potential import PolynomialPotential, WellAnalysis, analyze_wells, build_triple_well
from .series import (
    BoxProblem,
    Eigenlevel,
    Parity,
    SeriesWavefunction,
    boundary_value,
    count_nodes,
    find_eigenvalue,
    normalize,
    sample_wavefunction,
    scan_levels,
    series_coefficients,
)

__version__ = "0.1.0"
