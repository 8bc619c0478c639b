"""Phase-space toolkit for 1-D quantum states.

Wigner distributions computed from wavefunctions or density matrices,
measurement as filtering/detection in phase space, Moyal time evolution
for polynomial potentials, and localization diagnostics, all on a single
consistent coordinate/momentum lattice.
"""

import os as _os

__version__ = "0.1.0"

# Cap worker-pool parallelism before the numerics stack loads its BLAS.
if "WIGNERLAB_THREADS" in _os.environ:
    _threads = _os.environ["WIGNERLAB_THREADS"]
    for _var in (
        "OMP_NUM_THREADS",
        "OPENBLAS_NUM_THREADS",
        "MKL_NUM_THREADS",
        "NUMEXPR_NUM_THREADS",
    ):
        _os.environ.setdefault(_var, _threads)

from .errors import GridMismatchError, InvariantViolation, WignerlabError
from .grid import (
    MOMENTUM,
    POSITION,
    Grid,
    WaveFunction,
    fourier_transform,
    inner_product,
    inverse_fourier_transform,
    make_grid,
    normalize,
    squared_norm,
)
from .wigner import (
    DensityMatrix,
    WignerFunction,
    expectation,
    marginal_p,
    marginal_q,
    mixed_density,
    overlap_probability,
    pure_density,
    purity,
    recover_wavefunction,
    uncertainty_product,
    wdf_from_density,
    wdf_from_wavefunction,
)
from .states import (
    CatSpec,
    GaussianSpec,
    cat_wavefunction,
    cat_wdf_closed_form,
    filtered_cat_wdf_closed_form,
    filtered_gaussian_wdf_closed_form,
    gaussian_wavefunction,
    gaussian_wdf_closed_form,
)
from .filtering import (
    DetectionMap,
    FilterSpec,
    InteractionReport,
    classify_interaction,
    detect,
    detect_from_wavefunctions,
    filter_wavefunction,
    filter_wdf,
)
from .evolution import (
    EvolutionConfig,
    PotentialSpec,
    moyal_rhs,
    propagate,
    split_step_schrodinger,
    stability_limit,
)
from .blobs import (
    BlobReport,
    blob_report,
    effective_area,
    smoothed_minimum,
    subplanck_scale,
)

__all__ = [
    "__version__",
    "WignerlabError",
    "GridMismatchError",
    "InvariantViolation",
    "POSITION",
    "MOMENTUM",
    "Grid",
    "WaveFunction",
    "make_grid",
    "fourier_transform",
    "inverse_fourier_transform",
    "inner_product",
    "normalize",
    "squared_norm",
    "WignerFunction",
    "DensityMatrix",
    "wdf_from_wavefunction",
    "wdf_from_density",
    "recover_wavefunction",
    "marginal_q",
    "marginal_p",
    "expectation",
    "uncertainty_product",
    "overlap_probability",
    "purity",
    "pure_density",
    "mixed_density",
    "GaussianSpec",
    "CatSpec",
    "gaussian_wavefunction",
    "gaussian_wdf_closed_form",
    "cat_wavefunction",
    "cat_wdf_closed_form",
    "filtered_gaussian_wdf_closed_form",
    "filtered_cat_wdf_closed_form",
    "FilterSpec",
    "DetectionMap",
    "InteractionReport",
    "filter_wavefunction",
    "filter_wdf",
    "detect",
    "detect_from_wavefunctions",
    "classify_interaction",
    "PotentialSpec",
    "EvolutionConfig",
    "moyal_rhs",
    "propagate",
    "split_step_schrodinger",
    "stability_limit",
    "BlobReport",
    "blob_report",
    "effective_area",
    "smoothed_minimum",
    "subplanck_scale",
]
