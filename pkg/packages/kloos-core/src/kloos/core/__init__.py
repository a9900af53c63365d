"""This module contains all core related exports."""

# skipcq: PY-W2000
from kloos.core.aggregate import (
    bound_ratio_report,
    complete_sum_series,
    complete_sums,
    dyadic_triple_scan,
    normalized_moment,
    second_moment,
    triple_sum,
)

# skipcq: PY-W2000
from kloos.core.arith import (
    Factorization,
    TotientTable,
    divisor_count,
    factorize,
    mod_inverse,
    moebius,
    point_count,
    totient_table,
)
from kloos.core.backends import SumBackend, get_backend, kloosterman_sum  # skipcq: PY-W2000
from kloos.core.discrepancy.balls import ball_discrepancy_search  # skipcq: PY-W2000
from kloos.core.discrepancy.baseline import random_baseline, random_polygons  # skipcq: PY-W2000
from kloos.core.discrepancy.boxes import box_discrepancy  # skipcq: PY-W2000

# skipcq: PY-W2000
from kloos.core.discrepancy.cover import convex_count, dyadic_cover, hyperbola_convex_lower_bound

# skipcq: PY-W2000
from kloos.core.discrepancy.functionals import bmv_error, harman_error, koksma_szusz_bound

# skipcq: PY-W2000
from kloos.core.discrepancy.models import Box, ConvexPolygon, Disc, DyadicCover, HyperbolaRegion

# skipcq: PY-W2000
from kloos.core.exceptions import CapacityError, ConfigurationError, KloosException, PreconditionError

# skipcq: PY-W2000
from kloos.core.kloosterman import kloosterman_direct, kloosterman_fast, ramanujan, selberg_rewrite, weil_bound

# skipcq: PY-W2000
from kloos.core.models import (
    BoundRatioRow,
    CompleteSumSeries,
    InversePair,
    KloostermanQuery,
    KloostermanValue,
    Method,
    MomentResult,
    SumGrid,
)
from kloos.core.pointset import PointCloud, PointSet, generate  # skipcq: PY-W2000
from kloos.core.settings import Settings  # skipcq: PY-W2000
