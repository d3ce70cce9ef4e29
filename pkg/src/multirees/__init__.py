"""Exact computations with extended Rees algebras of multi-filtered graded rings.

The layers, bottom up:

* :mod:`polycore`, :mod:`groebner`: sparse rational polynomials, term orders,
  Buchberger, initial ideals;
* :mod:`linalg`, :mod:`quotient`, :mod:`gradedla`: per-degree linear algebra
  on R = P/I and intersection complexes;
* :mod:`filtration`, :mod:`rees`: principal image filtrations, Rees windows,
  flatness certificates and central fibers;
* :mod:`toric`, :mod:`cone`: simplicial toric models and rational cones;
* :mod:`cli`: the ``multirees`` JSON job runner.
"""

__version__ = "0.1.0"

from .polycore import (  # noqa: E402
    GREVLEX,
    LEX,
    ParseError,
    Polynomial,
    PolynomialRing,
    TermOrder,
    WeightVector,
    initial_form,
    weight_value,
)
from .groebner import (  # noqa: E402
    BudgetExceeded,
    GroebnerBasis,
    Ideal,
    buchberger,
    ideal_membership,
    initial_ideal,
    normal_form,
)
from .linalg import Subspace  # noqa: E402
from .quotient import IdealDescriptor, QuotientRing  # noqa: E402
from .gradedla import (  # noqa: E402
    DegreeSlice,
    GradedComplex,
    build_intersection_complex,
    degree_slice,
    homology_dims,
)
from .filtration import (  # noqa: E402
    FiltrationFamily,
    ZeroElementError,
    filtration_piece,
    multi_piece,
    ord_alpha,
)
from .rees import (  # noqa: E402
    OutOfWindow,
    ReesWindow,
    build_window,
    central_fiber,
    check_flatness,
    check_flatness_table,
    domain_test,
    fiber_multiply,
    verify_graded_bookkeeping,
    weight_cone_sample,
)
from .toric import (  # noqa: E402
    LatticeBox,
    ToricModel,
    check_noncartier_sum,
    check_valuative_ideal,
    divisor_sections,
    dual_monoid_points,
    is_cartier,
    toric_valuation,
)
