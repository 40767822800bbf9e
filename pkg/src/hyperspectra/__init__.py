"""Spectral radii of adjacency and signless Laplacian tensors of uniform
hypergraphs, and the degree-based bounds that control them."""

from ._backend import BACKEND
from .bounds import (
    BoundReport,
    Classification,
    adj_upper_d1d2,
    adj_upper_maxdeg,
    adj_upper_sqrt_dd,
    adj_upper_sqrt_mm,
    b_prime,
    classify_equality,
    coedge_pairs,
    full_report,
    q_lower_d1,
    q_upper_d1d2,
    q_upper_m,
    q_upper_pairdeg,
    q_upper_weighted,
)
from .generators import (
    gen_complete,
    gen_disjoint_blocks,
    gen_hyperstar,
    gen_random,
    gen_random_regular,
)
from .hypergraph import (
    DegreeProfile,
    Hypergraph,
    HypergraphError,
    blow_up,
    build,
    codegree,
    components,
    degrees,
    detect_blowup,
    is_connected,
    is_regular,
    m_value,
    star,
)
from .spectral import (
    NumericalError,
    SolverOptions,
    SpectralEstimate,
    residual,
    similarity_invariance_check,
    spectral_radius,
)
from .tensor import TensorKind, WeightVector, apply, apply_similar, rayleigh_interval, row_sums
from .uhg import UHGFormatError, read_uhg, write_uhg

__version__ = "0.1.0"
