"""One-parameter degenerations of the constructed covers.

Each covered region away from the product line carries a designated
degeneration: the branch divisors stay in their classes, so the numerical
invariants are untouched, but the configuration becomes special.  Either a
component is shared between two branches (the total branch goes non-reduced
and the cover glues to itself along a curve) or the three branches are made
to pass through a common point (the cover acquires a quarter point).  Both
produce a nonempty index-2 singularity ledger, and the degenerate cover is
no longer Gorenstein.

The non-reduced family on the even-degree line also records the building
classes of its normalization, which splits off the shared curve.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cover import (
    BuildingData,
    Component,
    Invariants,
    LedgerEntry,
    building_data,
    invariants,
    singularity_scan,
)
from .lattice import DivClass, PointLabel, intersect
from .recipes import (
    GENUS2_GENERAL,
    GENUS3,
    LINE_4CHI_MINUS_4,
    LINE_4CHI_MINUS_5,
    NOETHER_LINE,
    PLANE_SPECIAL_12,
    PLANE_SPECIAL_13,
    PRODUCT_LINE,
    ConstructionCertificate,
    SideCondition,
    construct,
)

TRIPLE_POINT_WITNESS = {
    PLANE_SPECIAL_12: "p",
    PLANE_SPECIAL_13: "p",
    GENUS2_GENERAL: "p",
    LINE_4CHI_MINUS_4: "p",
    LINE_4CHI_MINUS_5: "pPrime",
}


class DegenerationError(ValueError):
    pass


@dataclass(frozen=True)
class Normalization:
    """Building classes of the normalized cover of a non-reduced family."""

    c1: DivClass
    c2: DivClass
    c3: DivClass
    two_disjoint_copies: bool
    note: str

    def to_doc(self) -> dict:
        return {
            "classes": {
                "c1": list(self.c1.coords),
                "c2": list(self.c2.coords),
                "c3": list(self.c3.coords),
            },
            "twoDisjointCopies": self.two_disjoint_copies,
            "note": self.note,
        }


@dataclass(frozen=True)
class DegenerationCertificate:
    requested_ksq: int
    requested_chi: int
    region: str
    data: BuildingData
    invariants: Invariants
    parent_invariants: Invariants
    ledger: tuple[LedgerEntry, ...]
    gorenstein: bool
    normalization: Normalization | None
    side_conditions: tuple[SideCondition, ...]
    family_note: str
    ok: bool

    def to_doc(self) -> dict:
        return {
            "kind": "degeneration",
            "requested": {"ksq": self.requested_ksq, "chi": self.requested_chi},
            "region": self.region,
            "data": self.data.to_doc(),
            "invariants": self.invariants.to_doc(),
            "parentInvariants": self.parent_invariants.to_doc(),
            "ledger": [e.to_doc() for e in self.ledger],
            "gorenstein": self.gorenstein,
            "normalization": None
            if self.normalization is None
            else self.normalization.to_doc(),
            "sideConditions": [c.to_doc() for c in self.side_conditions],
            "familyNote": self.family_note,
            "ok": self.ok,
        }


def _noether_data(cert: ConstructionCertificate) -> BuildingData:
    # D2 degenerates onto the section already used by D1: the component
    # named d1 now sits in both branches, plus enough fibers to fill the
    # class.  The fiber multiple is (beta, e) = (2, 2) or (0, 0).
    src = cert.data
    amb = src.ambient
    fiber = amb.divisor(0, 1)
    rest = src.d2 - src.d1
    if rest.coords[0] != 0 or rest.coords[1] < 0:
        raise DegenerationError(
            f"D2 - D1 = {rest} is not a nonnegative fiber multiple"
        )
    branch2 = [Component("d1", 2, src.d1)]
    branch2 += [Component(f"f{i}", 2, fiber) for i in range(1, rest.coords[1] + 1)]
    comps = (Component("d1", 1, src.d1), *branch2, Component("d3", 3, src.d3))
    return building_data(
        amb, src.d1, src.d2, src.d3, comps, allow_nonreduced=True
    )


def _marked_point_data(
    cert: ConstructionCertificate, witness: str, component_names: tuple[str, str, str]
) -> BuildingData:
    src = cert.data
    point = PointLabel(witness, frozenset({1, 2, 3}), component_names)
    return building_data(
        src.ambient,
        src.d1,
        src.d2,
        src.d3,
        src.components,
        src.incidence + (point,),
        allow_nonreduced=not src.reduced,
    )


def _genus3_data(cert: ConstructionCertificate) -> tuple[BuildingData, str]:
    # split one fiber off the unmarked bulk of D1 and pass it through a
    # point of D2 and D3; the new point is numbered after the resolved ones
    src = cert.data
    eps = cert.parameters["epsilon"]
    witness = f"p{eps + 1}"
    new_fiber = f"f{eps + 1}"
    comps: list[Component] = []
    for c in src.components:
        if c.name != "f_rest":
            comps.append(c)
            continue
        comps.append(Component(new_fiber, 1, c.cls))
        if c.count > 1:
            comps.append(Component("f_rest", 1, c.cls, c.count - 1))
    point = PointLabel(witness, frozenset({1, 2, 3}), (new_fiber, "d2", "d3"))
    data = building_data(
        src.ambient,
        src.d1,
        src.d2,
        src.d3,
        tuple(comps),
        src.incidence + (point,),
    )
    return data, witness


def availability_conditions(
    cert: ConstructionCertificate, data: BuildingData
) -> tuple[SideCondition, ...]:
    """Recompute the degeneration's availability conditions from its data."""
    region = cert.region
    if region == NOETHER_LINE:
        rest = data.d2 - data.d1
        return (
            SideCondition(
                "sharedComponentFits",
                str(rest),
                rest.coords[0] == 0 and rest.coords[1] >= 0,
            ),
        )
    if region in (PLANE_SPECIAL_12, PLANE_SPECIAL_13):
        cand = intersect(data.d2, data.d3)
    elif region == GENUS3:
        cand = intersect(data.d2, data.d3)
        return (
            SideCondition("triplePointCandidates", cand, cand >= 1),
            SideCondition(
                "spareFibers",
                cert.parameters["alpha"] - cert.parameters["epsilon"],
                cert.parameters["alpha"] - cert.parameters["epsilon"] >= 1,
            ),
        )
    else:
        cand = intersect(data.d1, data.d2)
    return (SideCondition("triplePointCandidates", cand, cand >= 1),)


FAMILY_NOTES = {
    NOETHER_LINE: (
        "the second branch degenerates onto the section already contained in "
        "the first branch; the cover glues to itself along that curve"
    ),
    PLANE_SPECIAL_12: "the line moves through a point of the two cubics",
    PLANE_SPECIAL_13: "the first line moves through a point of the quintic and the other line",
    GENUS2_GENERAL: "the trisection moves through a point of the two bisections",
    LINE_4CHI_MINUS_5: (
        "a second ruling member of the third branch moves through a point of "
        "the strict transforms of the bisections"
    ),
    LINE_4CHI_MINUS_4: (
        "a ruling member of the third branch moves through a point of the two "
        "bisections"
    ),
    GENUS3: "one more fiber of the first branch moves through a point of the other branches",
}


def degenerate(cert: ConstructionCertificate) -> DegenerationCertificate:
    """Degenerate a constructed cover inside its family.

    Invariants are recomputed from the degenerate data and must match the
    parent; the singularity scan supplies the index-2 ledger.  Raises
    DegenerationError for the product family, which stays smooth.
    """
    region = cert.region
    if region == PRODUCT_LINE:
        raise DegenerationError(
            "the product family has no designated degeneration; its branches "
            "are disjoint ruling fibers"
        )
    if region not in FAMILY_NOTES:
        raise DegenerationError(f"no degeneration recipe for region {region!r}")
    if region == NOETHER_LINE:
        data = _noether_data(cert)
    elif region == GENUS3:
        data, _ = _genus3_data(cert)
    elif region == GENUS2_GENERAL:
        data = _marked_point_data(cert, "p", ("d1", "d2", "d3"))
    elif region in (PLANE_SPECIAL_12, PLANE_SPECIAL_13):
        data = _marked_point_data(cert, "p", ("d1", "d2", "d3"))
    elif region == LINE_4CHI_MINUS_5:
        data = _marked_point_data(cert, "pPrime", ("d1", "d2", "delta2"))
    else:
        data = _marked_point_data(cert, "p", ("d1", "d2", "delta1"))
    inv = invariants(data)
    ledger = singularity_scan(data)
    conds = availability_conditions(cert, data)
    normalization = normalization_if_any(region, data)
    ok = (
        all(c.satisfied for c in conds)
        and inv == cert.invariants
        and bool(ledger)
    )
    return DegenerationCertificate(
        requested_ksq=cert.requested_ksq,
        requested_chi=cert.requested_chi,
        region=region,
        data=data,
        invariants=inv,
        parent_invariants=cert.invariants,
        ledger=ledger,
        gorenstein=not ledger,
        normalization=normalization,
        side_conditions=conds,
        family_note=FAMILY_NOTES[region],
        ok=ok,
    )


def degenerate_pair(ksq: int, chi: int) -> DegenerationCertificate:
    """Construct the cover for a pair and degenerate it in one step."""
    return degenerate(construct(ksq, chi))


def normalization_if_any(region: str, data: BuildingData) -> Normalization | None:
    """The normalization record a degeneration in this region carries."""
    if region != NOETHER_LINE:
        return None
    return _normalization_from_data(data)


def _normalization_from_data(data: BuildingData) -> Normalization:
    zero = data.ambient.zero()
    return Normalization(
        c1=zero,
        c2=data.d2 - data.d1,
        c3=data.d1 + data.d3,
        two_disjoint_copies=True,
        note=(
            "normalizing separates the two sheets glued along the shared "
            "section; the result is the cover built from these classes, and "
            "the preimage of the shared section falls into two disjoint copies"
        ),
    )


def normalize_noether_line(dc: DegenerationCertificate) -> Normalization:
    """Building classes of the normalization of a non-reduced degeneration.

    Only the family with a shared component normalizes nontrivially; the
    marked-point degenerations are already normal, so asking for their
    normalization is an error.
    """
    if dc.region != NOETHER_LINE:
        raise DegenerationError(
            f"degeneration in region {dc.region!r} is normal; nothing to normalize"
        )
    return _normalization_from_data(dc.data)
