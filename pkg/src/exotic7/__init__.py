"""Exact invariants of the 2-connected 7-manifolds M_{a,b}.

Generalized Dedekind sums are evaluated exactly in cyclotomic fields; the
Eells-Kuiper invariant and the oriented diffeomorphism class of homotopy
spheres follow in exact rational arithmetic.
"""

from .cyclotomic import (
    CyclotomicElement,
    CyclotomicField,
    RationalPolynomial,
    cyclotomic_field,
    cyclotomic_polynomial,
    extract_rational,
    format_rational,
    invert,
    numeric_value,
    parse_rational,
    root_power,
)
from .dedekind import DedekindArgs, dedekind_sum_exact, dedekind_sum_numeric, paper_D, q3_closed_form
from .invariants import (
    NON_MILNOR_CLASSES,
    ManifoldParams,
    ParamTriple,
    characteristic_numbers,
    classify,
    cohomology,
    eells_kuiper,
    ek_decomposition,
    invariant_report,
    m_invariant,
    n_invariant,
    orbifold_report,
    validate,
)
from .search import SearchSpec, corollary_table, enumerate_valid, run_search

__version__ = "0.1.0"
