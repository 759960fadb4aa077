"""Finite commutative rings and modules, amalgamated constructions, and
exhaustive checks of 2-absorbing submodule statements."""
from . import constructions, errors
from .budget import DEFAULT_BUDGET, budget_limit, get_budget, set_budget
from .module import (
    FiniteModule,
    ModuleHom,
    Submodule,
    annihilator,
    colon_by_element,
    direct_sum,
    enumerate_module_homs,
    enumerate_submodules,
    ideal_times_module,
    intersect_chain,
    is_2absorbing_submodule,
    is_cyclic,
    is_multiplication_module,
    is_primary_submodule,
    is_prime_submodule,
    mk_module_hom,
    prime_submodules,
    product_module,
    quotient_module,
    radical_submodule,
    regular_module,
    residual_by_ideal,
    residual_ideal,
    restrict_scalars,
    submodule_generated,
    union_chain,
    zero_divisors_on_quotient,
    zero_module,
)
from .ring import (
    FiniteRing,
    Ideal,
    MultSet,
    RingHom,
    enumerate_ideals,
    enumerate_mult_sets,
    enumerate_ring_homs,
    identity_hom,
    ideal_generated,
    is_2absorbing_ideal,
    is_prime_ideal,
    mk_ring_hom,
    mk_zmod,
    mult_closure,
    product_ring,
    quotient_ring,
    radical_ideal,
    subring,
    subring_f_plus_J,
)
from .verdict import Verdict

__version__ = "0.1.0"
