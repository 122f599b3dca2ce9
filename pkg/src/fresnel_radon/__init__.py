"""Phase-space tools for 1-D paraxial fields.

Wigner distributions and their Radon projections, Collins ABCD diffraction
integrals, and a harness checking that the output intensity of the
[D, -B, -C, A] system equals the (D, B) Radon projection of the input's
Wigner function.
"""

from .chirplet import (
    ChirpletParams,
    chirplet_field,
    chirplet_fresnel_intensity,
    chirplet_radon,
    chirplet_sampled,
    chirplet_wigner,
)
from .fields import (
    Domain,
    Grid1D,
    NyquistError,
    SampledField,
    hermite_gauss,
    inner,
    l2_norm,
    make_centered_grid,
    normalize,
    sample_function,
    unitary_ft,
)
from .optics import (
    OracleMode,
    RayMatrix,
    collins_direct_oracle,
    collins_dual_spatial,
    collins_frequency,
    collins_spatial,
    compose,
    dual,
    fourier_stage,
    free_space,
    identity,
    parse_matrix,
    thin_lens,
)
from .phase_space import (
    RadonMode,
    RadonProjection,
    WignerDistribution,
    marginal_frequency,
    marginal_space,
    radon_frequency,
    radon_spatial,
    wigner_from_spatial,
    wigner_from_spectrum,
)
from .theorem import TheoremReport, random_matrices, sweep, verify_frequency, verify_spatial

__version__ = "0.1.0"
