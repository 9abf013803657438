"""Exact sum-product computations in prime fields.

Set arithmetic (sum, product, difference and ratio sets, S_xi(A), I(A)),
multiplicative structure (popular ratios, generated subgroups, cosets),
witness extraction for lower bounds on |I(A)|, per-set verification, and
scans over exhaustive or structured families of sets.
"""

from .errors import (
    CertificateError,
    CompositeModulus,
    EmptySet,
    FieldMismatch,
    HypothesisNotMet,
    NoCollision,
    NotSubsetOfGroup,
    ScanTooLarge,
    SetSpecError,
    SingletonSet,
    SumProdError,
    TooSmall,
    ZeroDenominator,
    ZeroInSet,
    ZeroInverse,
)
from .field import FieldElement, PrimeField, add, inverse, is_prime, make_field, mul, sub
from .setops import (
    CountTable,
    FieldSet,
    additive_energy_of_map,
    difference_set,
    dilate,
    field_set,
    i_set,
    product_counts,
    product_set,
    ratio_counts,
    ratio_set,
    repr_counts,
    s_xi_set,
    sum_set,
)
from .multiplicative import (
    CosetDecomposition,
    CosetStats,
    SubgroupData,
    all_subgroups,
    coset_decomposition,
    coset_diff_counts,
    generated_subgroup,
    heavy_coset,
    lemma5_stats,
    popular_ratios,
    popular_subgroup,
    subgroup_of_order,
)
from .witness import (
    Collision,
    WitnessReport,
    embed_witness,
    find_collision,
    select_xi_lemma2,
    select_xi_lemma4,
    theorem3_witness,
)
from .verify import (
    VerificationReport,
    measure,
    verify_all,
    verify_corollary2,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
from .explorer import (
    FamilySpec,
    ScanRecord,
    ScanResult,
    exhaustive_scan,
    family_scan,
    hbk_partial_sums,
    lemma5_empirical,
    parse_set,
)

__version__ = "0.1.0"
