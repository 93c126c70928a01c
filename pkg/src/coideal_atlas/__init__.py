"""Right coideal subalgebras of U_q(sl_{n+1}): root sequences, PBW
generators, the shuffle embedding of the positive part and a straightening
engine for the full double."""
from .double import (
    GroupElement,
    SignedWord,
    TriangularElement,
    consistency_experiment,
    psi_minus,
    psi_plus,
    straighten,
    tri_bracket,
    tri_product,
    verify_cross,
    verify_derm,
    verify_sh,
)
from .freealg import Bicharacter, FreeElement, d_w, decode, parse_bracket, partial, partial_star, psi, skew_bracket, u_bracket, u_pw
from .nichols import (
    CanonicalElement,
    coideal_check,
    deconcat,
    differential_closure_check,
    member,
    omega,
    pbw_decompose,
    pbw_monomials,
    psi_from_element,
    shuffle_product,
    subalgebra_basis,
    theorem26_span_check,
)
from .ring import LaurentPoly, LaurentRing, exact_rank_solve, laurent_arith
from .rootdata import (
    GenDesc,
    RootSequence,
    RTProfile,
    build_RT,
    cond_pair,
    count_borel,
    count_full,
    diagram,
    entrances,
    enumerate_theta,
    is_adr_invariant,
    is_hopf,
    kpi_of,
    max_hopf,
    pbw_generators,
    roots_of,
    simple_roots_of,
    theta_of_kpi,
)

__version__ = "0.1.0"
