"""Self-contained consistency sweeps over the whole covered range.

Each check recomputes something two independent ways and reports a single
pass/fail result with a short detail string.  The random-data oracle and the
monomial-cone count deliberately avoid the closed formulas used by the
library: mismatches flag a defect in either path.
"""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass

from .cover import (
    BuildingData,
    CoverError,
    NON_NORMAL_GLUING,
    QUARTER_POINT,
    building_data,
    chi_oracle,
    invariants,
    ksq_oracle,
)
from .degenerations import degenerate
from .geography import FORMATS, atlas, emit
from .lattice import HIRZEBRUCH, PLANE, Ambient, DivClass, h0, hirzebruch, intersect, plane
from .recipes import (
    COVERED_REGIONS,
    DEGENERABLE_REGIONS,
    GENUS2_GENERAL,
    NOETHER_LINE,
    NOT_ADMISSIBLE,
    NOT_COVERED,
    PRODUCT_LINE,
    admissible,
    classify,
    construct,
)

DEFAULT_SEED = 20240
DEFAULT_SAMPLES = 10_000


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def covered_pairs(chi_max: int) -> Iterator[tuple[int, int]]:
    """Every pair the sweep constructs: the full strip up to the genus-3
    ceiling plus the product line."""
    for chi in range(1, chi_max + 1):
        for ksq in range(max(1, 2 * chi - 6), 8 * chi - 7):
            yield ksq, chi
        yield 8 * chi, chi


def check_classify_totality(chi_max: int = 12) -> CheckResult:
    regions = COVERED_REGIONS | {NOT_COVERED, NOT_ADMISSIBLE}
    tested = 0
    for chi in range(1, chi_max + 1):
        for ksq in range(-20, 9 * chi + 10):
            tested += 1
            region = classify(ksq, chi)
            if region not in regions:
                return CheckResult(
                    "classifyTotality", False, f"unknown region {region!r} at ({ksq}, {chi})"
                )
            if (region == NOT_ADMISSIBLE) != (not admissible(ksq, chi)):
                return CheckResult(
                    "classifyTotality", False, f"admissibility mismatch at ({ksq}, {chi})"
                )
    return CheckResult("classifyTotality", True, f"{tested} pairs classified")


def check_construction_sweep(chi_max: int = 12) -> CheckResult:
    built = 0
    for ksq, chi in covered_pairs(chi_max):
        cert = construct(ksq, chi)
        inv = cert.invariants
        if not cert.ok:
            bad = [c.name for c in cert.side_conditions if not c.satisfied]
            return CheckResult(
                "constructionSweep", False, f"({ksq}, {chi}) failed conditions {bad}"
            )
        if (inv.ksq, inv.chi) != (ksq, chi):
            return CheckResult(
                "constructionSweep",
                False,
                f"({ksq}, {chi}) rebuilt as ({inv.ksq}, {inv.chi})",
            )
        if inv.pg_estimated:
            return CheckResult(
                "constructionSweep", False, f"({ksq}, {chi}) pg only estimated"
            )
        if cert.region == PRODUCT_LINE:
            if (inv.pg, inv.q) != (2 * chi + 2, chi + 3):
                return CheckResult(
                    "constructionSweep", False, f"product ({ksq}, {chi}) pg/q off"
                )
        elif inv.q != 0:
            return CheckResult(
                "constructionSweep", False, f"({ksq}, {chi}) has q = {inv.q}"
            )
        built += 1
    return CheckResult("constructionSweep", True, f"{built} certificates exact")


def check_resolution_deltas(chi_max: int = 12) -> CheckResult:
    seen = 0
    for ksq, chi in covered_pairs(chi_max):
        cert = construct(ksq, chi)
        if cert.pre_resolution is None:
            continue
        pre = invariants(cert.pre_resolution)
        n = len(cert.data.ambient.points)
        if pre.ksq - n != cert.invariants.ksq or pre.chi != cert.invariants.chi:
            return CheckResult(
                "resolutionDeltas",
                False,
                f"({ksq}, {chi}): {n} points, ({pre.ksq}, {pre.chi}) -> "
                f"({cert.invariants.ksq}, {cert.invariants.chi})",
            )
        seen += n
    return CheckResult("resolutionDeltas", True, f"{seen} resolutions, each -1/0")


def check_horikawa_pairing(chi_max: int = 12) -> CheckResult:
    seen = 0
    for ksq, chi in covered_pairs(chi_max):
        cert = construct(ksq, chi)
        if cert.fibration_genus != 2:
            continue
        got = intersect(cert.data.d1, cert.data.d2)
        if got != ksq - (2 * chi - 6):
            return CheckResult(
                "horikawaPairing",
                False,
                f"({ksq}, {chi}): D1.D2 = {got}, expected {ksq - (2 * chi - 6)}",
            )
        seen += 1
    return CheckResult("horikawaPairing", True, f"{seen} genus-2 pairings match")


def check_degeneration_sweep(chi_max: int = 12) -> CheckResult:
    seen = 0
    for ksq, chi in covered_pairs(chi_max):
        cert = construct(ksq, chi)
        if cert.region not in DEGENERABLE_REGIONS:
            continue
        dc = degenerate(cert)
        if not dc.ok or dc.invariants != cert.invariants or not dc.ledger:
            return CheckResult(
                "degenerationSweep", False, f"({ksq}, {chi}) degeneration inconsistent"
            )
        kinds = [e.kind for e in dc.ledger]
        if cert.region == NOETHER_LINE:
            expected = kinds == [NON_NORMAL_GLUING] and dc.normalization is not None
        else:
            expected = kinds == [QUARTER_POINT] and dc.ledger[0].count == 1
        if not expected or any(e.gorenstein_index != 2 for e in dc.ledger):
            return CheckResult(
                "degenerationSweep", False, f"({ksq}, {chi}) ledger {kinds} unexpected"
            )
        seen += 1
    return CheckResult("degenerationSweep", True, f"{seen} degenerations verified")


def sample_building_data(rng: random.Random) -> BuildingData:
    """One random parity-consistent datum on F_e, e <= 3, coefficients <= 12.

    Raises CoverError when the draw violates a validity rule; callers
    resample.
    """
    amb = hirzebruch(rng.randrange(4))
    a3, b3 = rng.randrange(13), rng.randrange(13)

    def draw(parity: int) -> int:
        lo = parity % 2
        return lo + 2 * rng.randrange((12 - lo) // 2 + 1)

    d3 = amb.divisor(a3, b3)
    d1 = amb.divisor(draw(a3), draw(b3))
    d2 = amb.divisor(draw(a3), draw(b3))
    return building_data(amb, d1, d2, d3)


def check_oracle_sample(
    samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED
) -> CheckResult:
    rng = random.Random(seed)
    valid = 0
    mismatches = 0
    attempts = 0
    while valid < samples:
        attempts += 1
        if attempts > 50 * samples:
            return CheckResult(
                "oracleSample", False, f"only {valid} valid data in {attempts} draws"
            )
        try:
            bd = sample_building_data(rng)
        except CoverError:
            continue
        valid += 1
        inv = invariants(bd)
        if inv.chi != chi_oracle(bd) or inv.ksq != ksq_oracle(bd):
            mismatches += 1
    return CheckResult(
        "oracleSample",
        mismatches == 0,
        f"{valid} samples, {mismatches} mismatches",
    )


def monomial_count(ambient: Ambient, d: DivClass) -> int:
    """Sections counted as lattice points, term by term; no closed form."""
    if ambient.kind == PLANE:
        deg = d.coords[0]
        return sum(
            1 for i in range(deg + 1) for j in range(deg + 1) if i + j <= deg
        )
    if ambient.kind != HIRZEBRUCH:
        raise ValueError("monomial counting works on the plane and on F_e only")
    a, b = d.coords
    if a < 0:
        return 0
    total = 0
    for i in range(a + 1):
        fiber_degree = b - i * ambient.e
        for _ in range(fiber_degree + 1):
            total += 1
    return total


def check_h0_monomial_grid(limit: int = 12) -> CheckResult:
    tested = 0
    amb = plane()
    for deg in range(limit + 1):
        d = amb.divisor(deg)
        if h0(amb, d) != monomial_count(amb, d):
            return CheckResult("h0MonomialGrid", False, f"plane degree {deg}")
        tested += 1
    for e in range(4):
        amb = hirzebruch(e)
        for a in range(limit + 1):
            for b in range(limit + 1):
                d = amb.divisor(a, b)
                if h0(amb, d) != monomial_count(amb, d):
                    return CheckResult(
                        "h0MonomialGrid", False, f"F_{e} class ({a}, {b})"
                    )
                tested += 1
    return CheckResult("h0MonomialGrid", True, f"{tested} classes agree")


def check_h0_d3_identity(chi_max: int = 12) -> CheckResult:
    seen = 0
    for ksq, chi in covered_pairs(chi_max):
        if classify(ksq, chi) != GENUS2_GENERAL:
            continue
        cert = construct(ksq, chi)
        val = h0(cert.data.ambient, cert.data.d3)
        if val != 8 * chi - 4 - 2 * ksq or val < 8:
            return CheckResult(
                "h0D3Identity", False, f"({ksq}, {chi}): h0(D3) = {val}"
            )
        seen += 1
    return CheckResult("h0D3Identity", True, f"{seen} trisection spaces match")


def check_emission_determinism(chi_max: int = 6) -> CheckResult:
    first = {fmt: emit(atlas(chi_max), fmt) for fmt in FORMATS}
    second = {fmt: emit(atlas(chi_max), fmt) for fmt in FORMATS}
    for fmt in FORMATS:
        if first[fmt] != second[fmt]:
            return CheckResult("emissionDeterminism", False, f"{fmt} output drifted")
    sizes = ", ".join(f"{fmt} {len(first[fmt])}B" for fmt in FORMATS)
    return CheckResult("emissionDeterminism", True, sizes)


def run_all(chi_max: int = 12) -> list[CheckResult]:
    return [
        check_classify_totality(chi_max),
        check_construction_sweep(chi_max),
        check_resolution_deltas(chi_max),
        check_horikawa_pairing(chi_max),
        check_degeneration_sweep(chi_max),
        check_oracle_sample(),
        check_h0_monomial_grid(),
        check_h0_d3_identity(chi_max),
        check_emission_determinism(min(chi_max, 6)),
    ]
