"""Core group invariants of classical and virtual link diagrams."""

from .abelian import AbelianGroup, Z, abelianize, direct_sum, mod2_rank, smith_normal_form, torsion_divisors
from .presentations import (
    CoxeterMatrix,
    Presentation,
    braid_presentation,
    core_functor,
    coxeter_presentation,
    cyclic_reduce,
    free_product,
    free_reduce,
    parse_presentation,
    format_presentation,
    parity_check,
    split_free_factor,
    tietze_simplify,
    tilde_pair,
    word,
)
from .enumeration import (
    FiniteGroup,
    alternating_group,
    coset_enumerate,
    count_homomorphisms,
    cyclic_group,
    hom_fingerprint,
    named_target,
    symmetric_group,
)

__all__ = [name for name in dir() if not name.startswith("_")]
