"""Building data for smooth Klein-four covers of rational surfaces.

A cover is encoded by three effective branch classes D1, D2, D3 on an
ambient from :mod:`bidouble.lattice` together with the derived line bundles

    L1 = (D2 + D3)/2,   L2 = (D1 + D3)/2,   L3 = L1 + L2 - D3,

which exist exactly when D2+D3 and D1+D3 have even coordinates.  The
numerical invariants of the covering surface X are computed on the base Y
(rational, so chi(O_Y) = 1 and p_g(Y) = 0):

    K_X^2    = (2K_Y + D1 + D2 + D3)^2
    chi(O_X) = 4 + (1/2) sum_i L_i.(L_i + K_Y)
    p_g(X)   = sum_i h0(K_Y + L_i)
    q(X)     = p_g - chi + 1

Components give names to the irreducible pieces of each branch divisor and
incidence records marked points; both are combinatorial bookkeeping.  The
total branch must be reduced (no component shared between branch divisors)
unless the caller is explicitly building degeneration data.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import (
    PLANE,
    Ambient,
    DivClass,
    PointLabel,
    canonical_class,
    exceptional,
    h0_flagged,
    intersect,
    pullback,
)

QUARTER_POINT = "QuarterPoint"
NON_NORMAL_GLUING = "NonNormalGluing"


class CoverError(ValueError):
    pass


class ParityError(CoverError):
    pass


class InvalidBuildingData(CoverError):
    pass


class NotTriplePoint(CoverError):
    pass


@dataclass(frozen=True)
class Component:
    """A named irreducible piece of one branch divisor.

    ``cls`` is the class of a single copy; ``count`` many disjoint copies are
    meant.  Reusing a name in another branch asserts that the same curve
    appears there too, which makes the total branch non-reduced.
    """

    name: str
    branch: int
    cls: DivClass
    count: int = 1

    def __post_init__(self) -> None:
        if self.branch not in (1, 2, 3):
            raise InvalidBuildingData(f"component branch must be 1..3, got {self.branch}")
        if self.count < 1:
            raise InvalidBuildingData("component count must be >= 1")

    def to_doc(self) -> dict:
        return {
            "name": self.name,
            "branch": self.branch,
            "class": list(self.cls.coords),
            "count": self.count,
        }


@dataclass(frozen=True)
class Invariants:
    ksq: int
    chi: int
    pg: int
    q: int
    pg_estimated: bool

    def __post_init__(self) -> None:
        if self.q != self.pg - self.chi + 1:
            raise InvalidBuildingData("q must equal pg - chi + 1")
        if self.q < 0:
            raise InvalidBuildingData("negative irregularity; data is not a valid cover")

    def to_doc(self) -> dict:
        return {
            "ksq": self.ksq,
            "chi": self.chi,
            "pg": self.pg,
            "q": self.q,
            "pgEstimated": self.pg_estimated,
        }


@dataclass(frozen=True)
class LedgerEntry:
    """One index-2 singularity record of a degenerate or marked cover."""

    kind: str
    count: int
    gorenstein_index: int
    witness_point: str | None = None
    witness_class: DivClass | None = None

    def to_doc(self) -> dict:
        witness: dict = {}
        if self.witness_point is not None:
            witness["point"] = self.witness_point
        if self.witness_class is not None:
            witness["class"] = list(self.witness_class.coords)
        return {
            "kind": self.kind,
            "count": self.count,
            "gorensteinIndex": self.gorenstein_index,
            "witness": witness,
        }


def derive_line_bundles(
    ambient: Ambient, d1: DivClass, d2: DivClass, d3: DivClass
) -> tuple[DivClass, DivClass, DivClass]:
    """The three line bundles determined by the branch classes."""
    for d in (d1, d2, d3):
        if d.ambient != ambient:
            raise InvalidBuildingData("branch class lives on a different ambient")
    l1 = (d2 + d3).try_half()
    if l1 is None:
        raise ParityError(f"D2 + D3 = {d2 + d3} is not divisible by two")
    l2 = (d1 + d3).try_half()
    if l2 is None:
        raise ParityError(f"D1 + D3 = {d1 + d3} is not divisible by two")
    l3 = l1 + l2 - d3
    for i, l in enumerate((l1, l2, l3), start=1):
        if l.is_zero():
            raise InvalidBuildingData(f"derived line bundle L{i} is zero")
    return l1, l2, l3


@dataclass(frozen=True)
class BuildingData:
    ambient: Ambient
    d1: DivClass
    d2: DivClass
    d3: DivClass
    l1: DivClass
    l2: DivClass
    l3: DivClass
    components: tuple[Component, ...] = ()
    incidence: tuple[PointLabel, ...] = ()
    reduced: bool = True

    def branches(self) -> tuple[DivClass, DivClass, DivClass]:
        return (self.d1, self.d2, self.d3)

    def bundles(self) -> tuple[DivClass, DivClass, DivClass]:
        return (self.l1, self.l2, self.l3)

    def branch_total(self) -> DivClass:
        return self.d1 + self.d2 + self.d3

    def branch(self, i: int) -> DivClass:
        return self.branches()[i - 1]

    def component(self, name: str, branch: int | None = None) -> Component:
        for c in self.components:
            if c.name == name and (branch is None or c.branch == branch):
                return c
        raise InvalidBuildingData(f"no component named {name!r}")

    def point(self, name: str) -> PointLabel:
        for p in self.incidence:
            if p.name == name:
                return p
        raise InvalidBuildingData(f"no marked point named {name!r}")

    def to_doc(self) -> dict:
        return {
            "ambient": self.ambient.to_doc(),
            "classes": {
                "d1": list(self.d1.coords),
                "d2": list(self.d2.coords),
                "d3": list(self.d3.coords),
                "l1": list(self.l1.coords),
                "l2": list(self.l2.coords),
                "l3": list(self.l3.coords),
            },
            "components": [c.to_doc() for c in self.components],
            "incidence": [p.to_doc() for p in self.incidence],
            "reduced": self.reduced,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "BuildingData":
        ambient = Ambient.from_doc(doc["ambient"])
        ds = [DivClass(ambient, tuple(doc["classes"][k])) for k in ("d1", "d2", "d3")]
        comps = tuple(
            Component(
                name=str(c["name"]),
                branch=int(c["branch"]),
                cls=DivClass(ambient, tuple(c["class"])),
                count=int(c.get("count", 1)),
            )
            for c in doc.get("components", [])
        )
        pts = tuple(PointLabel.from_doc(p) for p in doc.get("incidence", []))
        return building_data(
            ambient, ds[0], ds[1], ds[2], comps, pts, allow_nonreduced=True
        )


def _repeated_component_names(components: tuple[Component, ...]) -> list[str]:
    seen: dict[str, int] = {}
    for c in components:
        seen[c.name] = seen.get(c.name, 0) + 1
    return sorted(name for name, n in seen.items() if n > 1)


def building_data(
    ambient: Ambient,
    d1: DivClass,
    d2: DivClass,
    d3: DivClass,
    components: tuple[Component, ...] = (),
    incidence: tuple[PointLabel, ...] = (),
    allow_nonreduced: bool = False,
) -> BuildingData:
    """Validate and assemble cover building data.

    Checks parity, nonzero derived bundles, effectivity of the branch
    classes, per-branch component sums and incidence consistency.  A
    repeated component makes the total branch non-reduced, which the
    standard validator rejects; degeneration callers pass
    ``allow_nonreduced=True``.
    """
    if d1.is_zero() or d2.is_zero():
        raise InvalidBuildingData("D1 and D2 must be nonzero (only D3 may vanish)")
    l1, l2, l3 = derive_line_bundles(ambient, d1, d2, d3)
    for i, d in enumerate((d1, d2, d3), start=1):
        if d.is_zero():
            continue
        if h0_flagged(ambient, d)[0] <= 0:
            raise InvalidBuildingData(f"branch class D{i} = {d} is not effective")
    comps = tuple(components)
    for branch, total in ((1, d1), (2, d2), (3, d3)):
        entries = [c for c in comps if c.branch == branch]
        if not entries:
            continue
        acc = ambient.zero()
        for c in entries:
            if c.cls.ambient != ambient:
                raise InvalidBuildingData(f"component {c.name!r} lives on a different ambient")
            acc = acc + c.count * c.cls
        if acc != total:
            raise InvalidBuildingData(
                f"components of branch {branch} sum to {acc}, expected {total}"
            )
    names = {c.name for c in comps}
    pts = tuple(incidence)
    seen_pts = set()
    for p in pts:
        if p.name in seen_pts:
            raise InvalidBuildingData(f"marked point {p.name!r} repeated")
        seen_pts.add(p.name)
        for cname in p.components:
            if cname not in names:
                raise InvalidBuildingData(
                    f"point {p.name!r} names unknown component {cname!r}"
                )
    reduced = not _repeated_component_names(comps)
    if not reduced and not allow_nonreduced:
        raise InvalidBuildingData(
            "total branch is non-reduced (a component is repeated); "
            "only degeneration data may be non-reduced"
        )
    return BuildingData(ambient, d1, d2, d3, l1, l2, l3, comps, pts, reduced)


def invariants(bd: BuildingData) -> Invariants:
    """Numerical invariants of the covering surface, exact integers."""
    k = canonical_class(bd.ambient)
    two_k_plus_b = 2 * k + bd.branch_total()
    ksq = intersect(two_k_plus_b, two_k_plus_b)
    tot = sum(intersect(l, l + k) for l in bd.bundles())
    if tot % 2:
        raise InvalidBuildingData("parity failure in chi; lattice data is inconsistent")
    chi = 4 + tot // 2
    pg = 0
    estimated = False
    for l in bd.bundles():
        val, flagged = h0_flagged(bd.ambient, k + l)
        pg += val
        estimated = estimated or flagged
    return Invariants(ksq=ksq, chi=chi, pg=pg, q=pg - chi + 1, pg_estimated=estimated)


def chi_oracle(bd: BuildingData) -> int:
    """chi(O_X) summed character by character.

    Independent path: chi(O_Y) plus one Riemann-Roch evaluation of
    chi(O_Y(-L_i)) per bundle, each term halved separately.
    """
    k = canonical_class(bd.ambient)
    total = 1
    for l in bd.bundles():
        d = -l
        pairing = intersect(d, d - k)
        if pairing % 2:
            raise InvalidBuildingData("parity failure in Riemann-Roch term")
        total += 1 + pairing // 2
    return total


def ksq_oracle(bd: BuildingData) -> int:
    """K_X^2 through the bilinear expansion 4K.K + 4K.B + B.B."""
    k = canonical_class(bd.ambient)
    b = bd.branch_total()
    return 4 * intersect(k, k) + 4 * intersect(k, b) + intersect(b, b)


def singularity_scan(bd: BuildingData) -> tuple[LedgerEntry, ...]:
    """Index-2 singularity ledger of the cover described by ``bd``.

    One QuarterPoint per marked point lying on all three branch divisors;
    one NonNormalGluing per repeated component, whose count is the number
    of pinch points, i.e. the intersection of the shared curve with the
    branch divisors it does not belong to.  Deterministic: entries are
    sorted by witness, independent of incidence order.
    """
    entries: list[LedgerEntry] = []
    for p in sorted(bd.incidence, key=lambda p: p.name):
        if p.is_triple:
            entries.append(
                LedgerEntry(QUARTER_POINT, count=1, gorenstein_index=2, witness_point=p.name)
            )
    for name in _repeated_component_names(bd.components):
        shared = [c for c in bd.components if c.name == name]
        cls = shared[0].cls
        in_branches = {c.branch for c in shared}
        pinch = sum(
            intersect(cls, bd.branch(i)) for i in (1, 2, 3) if i not in in_branches
        )
        entries.append(
            LedgerEntry(
                NON_NORMAL_GLUING, count=pinch, gorenstein_index=2, witness_class=cls
            )
        )
    return tuple(entries)


def resolve_triple_point(bd: BuildingData, point: PointLabel | str) -> BuildingData:
    """Blow up one marked triple point and pull the data back.

    Every branch class and every component through the point picks up -E;
    the point moves from the incidence list into the ambient's centre list.
    K^2 drops by one and chi is unchanged.
    """
    p = bd.point(point if isinstance(point, str) else point.name)
    if not p.is_triple:
        raise NotTriplePoint(f"point {p.name!r} does not lie on all three branches")
    if bd.ambient.kind == PLANE:
        raise CoverError("triple point resolution is implemented on ruled models only")
    named = []
    for cname in p.components:
        c = bd.component(cname)
        if c.count != 1:
            raise CoverError(
                f"component {cname!r} through {p.name!r} must be a single copy"
            )
        named.append(c)
    if {c.branch for c in named} != {1, 2, 3}:
        raise CoverError(
            f"point {p.name!r} must name exactly one component per branch to resolve"
        )
    amb2 = bd.ambient.blow_up(p)
    exc = exceptional(amb2, -1)
    named_names = {c.name for c in named}

    def lift(d: DivClass, through: bool) -> DivClass:
        out = pullback(amb2, d)
        return out - exc if through else out

    comps2 = tuple(
        Component(c.name, c.branch, lift(c.cls, c.name in named_names), c.count)
        for c in bd.components
    )
    return building_data(
        amb2,
        lift(bd.d1, True),
        lift(bd.d2, True),
        lift(bd.d3, True),
        comps2,
        tuple(q for q in bd.incidence if q.name != p.name),
        allow_nonreduced=not bd.reduced,
    )
