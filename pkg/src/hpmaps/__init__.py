"""Exact and analytic machinery for the halved Collatz-type maps H_p."""

from .chi import (
    CycleRecord,
    OrbitReport,
    branch_affine,
    chi,
    chi_mod,
    chi_of_B,
    find_periodic_points,
    hp,
    hp_orbit,
    r,
)
from .digits import TwoAdic, big_B, digit_profile, is_friend_of_2
from .dirichlet import (
    DEFAULT_CONFIG,
    EvalConfig,
    EvalResult,
    NearPoleError,
    aux_F,
    aux_G,
    c_omega,
    kappa,
    kappa_half,
    perron_integral,
    quadrature_reference,
    residue_R3,
    riemann_zeta,
    shifted_integral,
    sigma_p,
    xi_p,
    zeta_p,
)
from .l1bound import (
    DivergenceError,
    chi_kappa_hat,
    chi_kappa_real,
    chi_prime_real,
    d_kappa_member,
    fourier_reconstruct,
    l1_bound,
    l1_norm_truncated,
    tau_kappa,
)
from .prob import (
    bayes_check,
    chi_N_hat,
    congruence_sufficient,
    f_p,
    f_p_interval,
    f_p_montecarlo,
    lipschitz_bound,
    phi_p,
    vdp_coeff,
)
from .summatory import blancmange_tables, closed_sums, summatory, takagi, trollope_rhs

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
