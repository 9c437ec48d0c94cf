"""Von Neumann entropy of pure-state ensembles as a function of perimeter,
visibility and geometric phase, with an interferometer simulator for
measuring the traces ``Tr rho**k``."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .su_basis import (  # noqa: F401
    GeneratorBasis,
    gellmann_basis,
    generalized_gellmann,
    pauli_basis,
    structure_constants,
)
from .ensemble import (  # noqa: F401
    CoherenceVector,
    DensityMatrix,
    Ensemble,
    PureState,
    bloch_state,
    coherence_to_density,
    density_from_ensemble,
    load_state_file,
    member_coherences,
    mixture_coherence,
    overlap_Q,
    parse_state_file,
    perimeter,
    perimeter_tilde,
    state_to_coherence,
    unsquared_P_Q,
)
from .geometric_phase import (  # noqa: F401
    BargmannInvariant,
    PhaseConvention,
    bargmann,
    gamma_sum,
    phase_2d_coherence,
    phase_3d_coherence,
)
from .entropy import (  # noqa: F401
    CubicCoefficients,
    RankDeficientWarning,
    Spectrum,
    cubic_coefficients_3states,
    cubic_coefficients_Nstates_3d,
    entropy_2d,
    entropy_2d_unequal,
    entropy_closed_form,
    entropy_from_eigs,
    entropy_from_power_sums,
    entropy_general_d,
    entropy_oracle,
    gram_schmidt_reduce,
    perimeter_from_gamma_2d,
    solve_cubic,
)
from .interferometer import (  # noqa: F401
    Exact,
    Shots,
    TraceEstimate,
    entropy_via_interferometry,
    estimate_trace_power,
    run_network,
    shift_operator,
)
