"""This file contains the acceptance report.

Every check recomputes a claim about the inverse point set or the Kloosterman sums and
compares it with an independent computation or a recorded bound. The report only holds
values that do not depend on the machine, so two runs with any thread count write the
same bytes; timings go to the log.
"""

import logging
import math
import time
from collections.abc import Callable

import numpy as np

from kloos.cli.consts import BOX_ENVELOPE_CONSTANT, SCHEMA_VERSION
from kloos.cli.settings import ExperimentConfig
from kloos.core import (
    ConvexPolygon,
    DyadicCover,
    InversePair,
    KloostermanQuery,
    PointCloud,
    ball_discrepancy_search,
    box_discrepancy,
    complete_sum_series,
    complete_sums,
    dyadic_cover,
    generate,
    hyperbola_convex_lower_bound,
    kloosterman_direct,
    kloosterman_fast,
    oracles,
    random_baseline,
    random_polygons,
    second_moment,
    selberg_rewrite,
    weil_bound,
)
from kloos.core._types import JSON
from kloos.core.discrepancy.models import CONVEX_WELL_SHAPED
from kloos.core.kloosterman import modular_sums, tolerance
from kloos.core.pointset import empty_box_witnesses

logger = logging.getLogger("kloos")

# polygons are drawn with this seed, independent of the configured one
POLYGON_SEED = 2024


class Check:
    """Class that represents the outcome of one acceptance check."""

    def __init__(self, name: str, passed: bool, details: dict[str, JSON]):
        self.name: str = name
        self.passed: bool = passed
        self.details: dict[str, JSON] = details

    def to_json(self) -> dict[str, JSON]:
        return {"name": self.name, "passed": self.passed, "details": self.details}

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(name={self.name}, passed={self.passed})>"


def check_point_count(config: ExperimentConfig, quick: bool) -> Check:
    """generate(600) holds exactly 109500 points."""
    count = generate(600, config).count
    return Check("point-count", count == 109500, {"X": 600, "count": count, "expected": 109500})


def check_weil_bound(config: ExperimentConfig, quick: bool) -> Check:
    """No sum exceeds gcd(m, n, c)**(1/2) c**(1/2) tau(c) on a full grid and on random queries."""
    c_max, samples, sample_c_max = (100, 500, 2000) if quick else (500, 10_000, 10_000)
    slack = 1 + 1e-9
    grid = np.array([(m, n) for m in range(-8, 9) for n in range(-8, 9)], dtype=np.int64)
    violations = 0
    worst = 0.0
    for c in range(1, c_max + 1):
        values = np.abs(modular_sums(c, grid[:, 0], grid[:, 1]))
        bounds = np.array([weil_bound(KloostermanQuery(int(m), int(n), c)) for m, n in grid])
        violations += int((values > bounds * slack).sum())
        worst = max(worst, float((values / bounds).max()))
    rng = np.random.default_rng(config.seed)
    ms = rng.integers(-1000, 1001, size=samples)
    ns = rng.integers(-1000, 1001, size=samples)
    cs = rng.integers(1, sample_c_max + 1, size=samples)
    for m, n, c in zip(ms.tolist(), ns.tolist(), cs.tolist()):
        query = KloostermanQuery(m, n, c)
        ratio = abs(kloosterman_direct(query, config).value) / weil_bound(query)
        violations += ratio > slack
        worst = max(worst, ratio)
    details = {
        "c_max": c_max,
        "random_samples": samples,
        "evaluated": c_max * len(grid) + samples,
        "violations": violations,
        "max_ratio": worst,
    }
    return Check("weil-bound", violations == 0, details)


def check_fast_direct(config: ExperimentConfig, quick: bool) -> Check:
    """The prime power splitting agrees with the direct sum and the Selberg rewrite holds."""
    c_max, selberg_c_max = (500, 60) if quick else (5000, 300)
    pairs = [(m, n) for m in (1, 2, 3, 5) for n in (1, 2, 3, 5)]
    ms = np.array([m for m, _ in pairs], dtype=np.int64)
    ns = np.array([n for _, n in pairs], dtype=np.int64)
    split_violations = 0
    for c in range(1, c_max + 1):
        direct = modular_sums(c, ms, ns)
        limit = tolerance(c, config)
        for (m, n), expected in zip(pairs, direct.tolist()):
            split_violations += abs(kloosterman_fast(KloostermanQuery(m, n, c), config).value - expected) > limit
    selberg_violations = 0
    for c in range(1, selberg_c_max + 1):
        for m in range(1, 7):
            for n in range(1, 7):
                query = KloostermanQuery(m, n, c)
                left = kloosterman_direct(query, config).value
                right = math.fsum(d * kloosterman_direct(term, config).value for d, term in selberg_rewrite(query))
                selberg_violations += abs(left - right) > 1e-8 * c
    details = {
        "c_max": c_max,
        "split_violations": split_violations,
        "selberg_c_max": selberg_c_max,
        "selberg_violations": selberg_violations,
    }
    return Check("fast-direct", split_violations == 0 and selberg_violations == 0, details)


def check_weyl_identity(config: ExperimentConfig, quick: bool) -> Check:
    """The Weyl sums of S(X) equal the complete Kloosterman sums up to X."""
    Xs, bound = ((50,), 4) if quick else ((50, 100, 200), 8)
    vectors = [(m1, m2) for m1 in range(-bound, bound + 1) for m2 in range(-bound, bound + 1)]
    violations = 0
    worst = 0.0
    for X in Xs:
        weyl = generate(X, config).weyl_sums(vectors)
        totals = complete_sums(vectors, X, config)
        errors = np.abs(weyl - totals) / np.maximum(1.0, np.abs(totals))
        violations += int((errors > config.identity_tolerance).sum())
        worst = max(worst, float(errors.max()))
    details = {"X": list(Xs), "bound": bound, "violations": violations, "max_relative_error": worst}
    return Check("weyl-identity", violations == 0, details)


def check_hyperbola_structure(config: ExperimentConfig, quick: bool) -> Check:
    """Below x y = 1/X sit exactly the points (1, 1, c) with sqrt(X) < c, and the empty boxes are empty."""
    Xs = (9, 100) if quick else (9, 100, 400)
    rows = []
    for X in Xs:
        ps = generate(X, config)
        expected = [InversePair(1, 1, c) for c in range(math.isqrt(X) + 1, X + 1)]
        empty = [ps.count_in_box(box, closed=True) for box in empty_box_witnesses(X)]
        below = ps.hyperbola_points()
        rows.append({"X": X, "below": len(below), "exact": below == expected, "empty": empty})
    passed = all(row["exact"] and not any(row["empty"]) for row in rows)
    return Check("hyperbola-structure", passed, {"sets": rows})


def check_hyperbola_floor(config: ExperimentConfig, quick: bool) -> Check:
    """The region x y >= 1/X has discrepancy at least (log X - constant) / X."""
    Xs = (50, 100) if quick else (50, 100, 200, 400)
    bounds = [hyperbola_convex_lower_bound(generate(X, config)) for X in Xs]
    return Check("hyperbola-floor", all(bound.holds for bound in bounds), {"sets": [b.to_json() for b in bounds]})


def check_box_envelope(config: ExperimentConfig, quick: bool) -> Check:
    """Box discrepancy times X**(5/6) stays below a recorded constant."""
    Xs = (25, 50) if quick else (25, 50, 100, 200, 400)
    rows = []
    for X in Xs:
        result = box_discrepancy(generate(X, config), "auto", config)
        scaled = result.value * X ** (5 / 6)
        rows.append({"X": X, "value": result.value, "mode": result.mode, "scaled": scaled})
    passed = all(row["scaled"] <= BOX_ENVELOPE_CONSTANT for row in rows)
    return Check("box-envelope", passed, {"constant": BOX_ENVELOPE_CONSTANT, "sets": rows})


def _square_keys(squares: np.ndarray, shift: int = 0) -> np.ndarray:
    return (squares[:, 0] >> shift) * (1 << 32) + (squares[:, 1] >> shift)


def cover_violations(cover: DyadicCover, polygon: ConvexPolygon) -> list[str]:
    """Return the broken cover properties: containment, non-nesting, family sizes and measure defect.

    Args:
        cover: holds the cover of the polygon, without offsets
        polygon: holds the covered polygon

    Returns:
        one message per violation, empty when the cover is valid
    """
    problems = []
    families = {
        level: np.array(cover.squares(level), dtype=np.int64).reshape(-1, 2) for level in range(1, cover.depth + 1)
    }
    for level, squares in families.items():
        if len(squares) > CONVEX_WELL_SHAPED * 2 ** (level + 1.5):
            problems.append(f"level {level}: {len(squares)} squares")
        if not len(squares):
            continue
        ones = np.ones(len(squares), dtype=np.int64)
        if not polygon.square_inside(squares[:, 0], squares[:, 1], ones, ones * 2**level).all():
            problems.append(f"level {level}: square outside")
        for parent in range(1, level):
            if np.isin(_square_keys(squares, level - parent), _square_keys(families[parent])).any():
                problems.append(f"level {level}: nested in level {parent}")
    defect = cover.defect()
    if not -1e-12 <= defect <= CONVEX_WELL_SHAPED * 2 ** (-cover.depth + 0.5):
        problems.append(f"defect {defect!r}")
    return problems


def check_cover_invariants(config: ExperimentConfig, quick: bool) -> Check:
    """Dyadic covers of random polygons satisfy containment, non-nesting and the size and defect bounds."""
    count, depth = (10, 8) if quick else (50, 12)
    problems = []
    for index, polygon in enumerate(random_polygons(count, POLYGON_SEED)):
        cover = dyadic_cover(polygon, depth)
        problems.extend(f"polygon {index}, {problem}" for problem in cover_violations(cover, polygon))
    return Check("cover-invariants", not problems, {"polygons": count, "depth": depth, "violations": problems})


def _exact_agrees(cloud: PointCloud, config: ExperimentConfig) -> bool:
    result = box_discrepancy(cloud, "exact-small", config)
    recount = cloud.count_in_box(result.witness, result.closed) / cloud.count - float(result.witness.measure)
    witness_value = recount if result.closed else -recount
    return abs(result.value - oracles.box_discrepancy(cloud)) <= 1e-12 and abs(witness_value - result.value) <= 1e-12


def check_exact_box(config: ExperimentConfig, quick: bool) -> Check:
    """The exact box discrepancy scan matches the brute force search."""
    Xs, samples = ((1, 4, 12), 5) if quick else (tuple(range(1, 13)), 20)
    rng = np.random.default_rng(config.seed)
    clouds: list[PointCloud] = [generate(X, config) for X in Xs]
    clouds.extend(random_baseline(int(n), seed) for seed, n in enumerate(rng.integers(5, 61, size=samples).tolist()))
    mismatches = [cloud.label for cloud in clouds if not _exact_agrees(cloud, config)]
    return Check("exact-box", not mismatches, {"sets": len(clouds), "mismatches": mismatches})


def check_determinism(config: ExperimentConfig, quick: bool) -> Check:
    """Parallel results are identical for one and eight threads and for repeated runs."""

    def sample(threads: int) -> str:
        settings = config.replace(threads=threads)
        small = generate(30, settings)
        document = {
            "complete_sums": complete_sums([(1, 1), (2, -3), (0, 5)], 150, settings).tolist(),
            "series": complete_sum_series(1, 2, 120, settings).partial.tolist(),
            "box": box_discrepancy(small, "auto", settings).to_json(),
            "search": box_discrepancy(small, "search", settings).to_json(),
            "ball": ball_discrepancy_search(small, settings=settings).to_json(),
        }
        return config.dumps(document)

    runs = {"threads=1": sample(1), "threads=8": sample(8), "threads=8 again": sample(8)}
    identical = len(set(runs.values())) == 1
    return Check("determinism", identical, {"runs": list(runs), "identical": identical})


def check_second_moment(config: ExperimentConfig, quick: bool) -> Check:
    """The second moment matches a plain double loop."""
    Ns, Xs = ((1, 2), (1, 10, 30)) if quick else ((1, 2, 3, 4), tuple(range(1, 31)))
    mismatches = []
    for N in Ns:
        for X in Xs:
            expected = oracles.second_moment(N, X)
            if abs(second_moment(N, X, config).value - expected) > 1e-9 * max(1.0, abs(expected)):
                mismatches.append([N, X])
    return Check("second-moment", not mismatches, {"N": list(Ns), "X": list(Xs), "mismatches": mismatches})


CHECKS: tuple[Callable[[ExperimentConfig, bool], Check], ...] = (
    check_point_count,
    check_weil_bound,
    check_fast_direct,
    check_weyl_identity,
    check_hyperbola_structure,
    check_hyperbola_floor,
    check_box_envelope,
    check_cover_invariants,
    check_exact_box,
    check_determinism,
    check_second_moment,
)


def run_acceptance(
    config: ExperimentConfig,
    quick: bool = False,
    checks: tuple[Callable[[ExperimentConfig, bool], Check], ...] = CHECKS,
) -> dict[str, JSON]:
    """Run the acceptance checks in order and return the report document.

    Args:
        config: holds the capacities, seed and thread count
        quick: holds whether to run the reduced parameter grids
        checks: holds the checks to run

    Returns:
        the document {schema_version, passed, checks}
    """
    results = []
    for check in checks:
        started = time.perf_counter()
        result = check(config, quick)
        elapsed = time.perf_counter() - started
        if result.passed:
            logger.info(f"Check {result.name} passed in {elapsed:.2f}s")
        else:
            logger.error(f"Check {result.name} failed in {elapsed:.2f}s: {result.details}")
        results.append(result)
    return {
        "schema_version": SCHEMA_VERSION,
        "passed": all(result.passed for result in results),
        "checks": [result.to_json() for result in results],
    }
