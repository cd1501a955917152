"""Evaluate tame Brauer classes at integral points of models over Z_p and
compare the result with how the points meet the boundary divisor."""

from .brauer import (
    ConstantInv,
    Cyclic,
    CupUnram,
    Product,
    Quaternion,
    check_diagram_4,
    evaluate,
    parse_class,
    residues,
    spanning_classes,
    theorem_0_1_check,
)
from .divisor import (
    OPoint,
    SchemeModel,
    gm_model,
    ideal_equality_a1,
    intersection_data,
    multiplicity,
    strong_equiv,
)
from .errors import TblError
from .finab import (
    FinAbGroup,
    GroupHom,
    example_1_4_orders,
    example_3_13_kernel,
    hom_cokernel,
    hom_kernel,
    leray_e2_orders,
    question_1_probe,
    smith_normal_form,
)
from .finitefield import (
    BACKEND,
    FqField,
    dlog_mu_n,
    kummer_class_index,
    norm_to_prime_field,
    primitive_nth_root,
)
from .localfield import PAdic, padic_arith, padic_make, unit_class_equal, unit_residue, valuation
from .scenario import Scenario, parse_scenario
from .symbols import (
    BrauerInvariant,
    hilbert_symbol,
    norm_residue_invariant,
    residue_character_index,
    tame_symbol,
)

__version__ = "0.1.0"
