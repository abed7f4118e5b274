"""Exact-arithmetic Iwahori-Weyl combinatorics.

Admissible sets, twisted-conjugacy invariants and their admissible classes,
stratum reports with basic-locus flags, connected-component predictions, and
the Levi-reduction move calculus, over based root data with a diagram twist.
"""

from .abelian import FgAbelian, coinvariants, fixed_subgroup, smith_normal_form
from .admissible import (
    AdmissibleSet,
    ClosurePoset,
    adm,
    adm_K,
    adm_very_special,
    closure_poset,
    k_adm,
    tau_of,
    very_special_levels,
)
from .errors import IwkError
from .iwahori_weyl import (
    AffineGen,
    FinWeyl,
    IwElement,
    affine_gens,
    apply_sigma,
    bruhat_leq,
    identity_element,
    inv,
    length,
    min_coset_rep,
    mul,
    omega_component,
    omega_element,
    reduced_word,
    simple_reflection,
    subgroup_finite,
    translation,
)
from .levi import (
    LeviDatum,
    Move,
    find_path,
    i_mu_b_m,
    is_weakly_dominant,
    levi_of_newton,
    minuscule_dominant_rep,
    move_applicable,
    move_irreducible,
    orbit_size,
    short_element_check,
)
from .root_datum import (
    EchelonnageSystem,
    Root,
    RootDatum,
    build_datum,
    fold,
    load_datum_file,
    preset_names,
)
from .sigma_conj import (
    BgMuEntry,
    SigmaClassInvariants,
    b_g_mu,
    basic_entry,
    invariants_of,
    is_straight,
    kottwitz,
    leq_b,
    newton,
    straight_elements,
)
from .strata import (
    ComponentReport,
    StratumReport,
    compact_type_factors,
    component_report,
    galois_factors,
    kr_basic_flag,
    pi1_I_sigma,
    sigma_orbit_parahorics,
    strata_table,
    supp_sigma,
)

__version__ = "0.1.0"
