"""General Fourier series with respect to orthonormal systems on [0, 1].

Closed-form cosine, Haar and doubled systems; kernels, partial sums and the
functional M_n(x); executable checks of the identities behind C_L boundedness;
and the extremal constructions showing those conditions are sharp.
"""

from .functions import CATALOG, CLFunction, get_function, squeeze
from .kernels import (
    B_kernel,
    KernelContext,
    M_functional,
    Q_antideriv,
    Q_kernel,
    SweepTrace,
    coefficients,
    e_phi_probe,
    fourier_coeff,
    gram_matrix,
    lemma1_stat,
    mn_values,
    partial_sum,
    partial_sum_trace,
)
from .quadrature import QuadratureError, QuadratureSpec, integrate
from .sharpness import (
    build_extremal,
    decompose_eq23,
    lower_bound_probe,
    partition_Dn,
    sign_profile,
    theorem4_demo,
)
from .systems import (
    G2,
    SystemDescriptor,
    breakpoints,
    cosine,
    double_system,
    eval_phi,
    g,
    haar,
    parse_system,
)
from .verify import (
    CheckReport,
    abel_identity,
    check_bessel,
    check_lemma3,
    check_lemma4,
    run_suite,
    theorem2_trace,
)

__version__ = "0.1.0"
