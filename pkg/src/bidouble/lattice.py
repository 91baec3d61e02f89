"""Exact integer intersection theory on rational surface models.

Three ambient models are supported, each with a fixed integral basis of the
Picard group:

* projective plane          basis (H)            H.H = 1
* Hirzebruch surface F_e    basis (D0, F)        D0.D0 = -e, D0.F = 1, F.F = 0
* blow-up of F_e            basis (D0, F, E1..)  Ei.Ei = -1, Ei.Ej = 0, and
                                                 Ei orthogonal to pullbacks

Divisor classes are integer coordinate vectors in the ambient basis and all
arithmetic is exact.  Points are combinatorial labels carrying an incidence
record, never coordinates; "general position" is an assumption recorded on
the label, not a fact the lattice can check.

Canonical classes: -3H on the plane, -2*D0-(e+2)*F on F_e, and the pullback
plus the sum of exceptional classes on a blow-up.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PLANE = "ProjectivePlane"
HIRZEBRUCH = "Hirzebruch"
BLOWUP = "BlownUp"

AMPLE = "Ample"
NEF_ONLY = "NefOnly"
UNKNOWN = "Unknown"
NOT_NEF = "NotNef"


class LatticeError(ValueError):
    pass


class AmbientMismatch(LatticeError):
    pass


class UnsupportedClass(LatticeError):
    pass


@dataclass(frozen=True)
class PointLabel:
    """A named point together with its branch incidence record.

    ``branches`` lists which of the three branch divisors pass through the
    point; multiplicity is always one.  ``components`` optionally names the
    irreducible branch pieces through the point.  ``general`` records the
    blanket general-position assumption for the label.
    """

    name: str
    branches: frozenset[int] = frozenset()
    components: tuple[str, ...] = ()
    general: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "branches", frozenset(self.branches))
        object.__setattr__(self, "components", tuple(self.components))
        if not self.branches <= {1, 2, 3}:
            raise LatticeError(
                f"branch indices must lie in {{1,2,3}}, got {sorted(self.branches)}"
            )

    @property
    def is_triple(self) -> bool:
        return self.branches == frozenset({1, 2, 3})

    def to_doc(self) -> dict:
        return {
            "name": self.name,
            "branches": sorted(self.branches),
            "components": list(self.components),
            "general": self.general,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "PointLabel":
        return cls(
            name=str(doc["name"]),
            branches=frozenset(int(b) for b in doc["branches"]),
            components=tuple(str(c) for c in doc.get("components", [])),
            general=bool(doc.get("general", True)),
        )


@dataclass(frozen=True)
class Ambient:
    """One of the three surface models; immutable and hashable."""

    kind: str
    e: int = 0
    points: tuple[PointLabel, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if self.kind not in (PLANE, HIRZEBRUCH, BLOWUP):
            raise LatticeError(f"unknown ambient kind {self.kind!r}")
        if self.e < 0:
            raise LatticeError("Hirzebruch parameter e must be >= 0")
        if self.kind == PLANE and (self.e != 0 or self.points):
            raise LatticeError("the plane carries no e parameter and no blown-up points")
        if self.kind == HIRZEBRUCH and self.points:
            raise LatticeError("an unblown Hirzebruch surface carries no points")
        if self.kind == BLOWUP and not self.points:
            raise LatticeError("a blow-up needs at least one centre")
        names = [p.name for p in self.points]
        if len(set(names)) != len(names):
            raise LatticeError("blown-up centres must have distinct names")

    @property
    def rank(self) -> int:
        if self.kind == PLANE:
            return 1
        return 2 + len(self.points)

    def basis_labels(self) -> tuple[str, ...]:
        if self.kind == PLANE:
            return ("H",)
        return ("D0", "F") + tuple(f"E{i + 1}" for i in range(len(self.points)))

    def divisor(self, *coords: int) -> "DivClass":
        return DivClass(self, tuple(int(c) for c in coords))

    def zero(self) -> "DivClass":
        return DivClass(self, (0,) * self.rank)

    def blow_up(self, p: PointLabel) -> "Ambient":
        if self.kind == PLANE:
            raise LatticeError("only ruled models are blown up here")
        return Ambient(BLOWUP, self.e, self.points + (p,))

    def to_doc(self) -> dict:
        if self.kind == PLANE:
            return {"kind": PLANE}
        if self.kind == HIRZEBRUCH:
            return {"kind": HIRZEBRUCH, "e": self.e}
        return {"kind": BLOWUP, "e": self.e, "points": [p.to_doc() for p in self.points]}

    @classmethod
    def from_doc(cls, doc: dict) -> "Ambient":
        kind = doc["kind"]
        if kind == PLANE:
            return cls(PLANE)
        if kind == HIRZEBRUCH:
            return cls(HIRZEBRUCH, int(doc["e"]))
        if kind == BLOWUP:
            pts = tuple(PointLabel.from_doc(p) for p in doc["points"])
            return cls(BLOWUP, int(doc["e"]), pts)
        raise LatticeError(f"unknown ambient kind {kind!r}")


def plane() -> Ambient:
    return Ambient(PLANE)


def hirzebruch(e: int) -> Ambient:
    return Ambient(HIRZEBRUCH, e)


@dataclass(frozen=True)
class DivClass:
    """Integer divisor class in the basis of its ambient."""

    ambient: Ambient
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) != self.ambient.rank:
            raise LatticeError(
                f"expected {self.ambient.rank} coordinates, got {len(self.coords)}"
            )

    def _same(self, other: "DivClass") -> None:
        if self.ambient != other.ambient:
            raise AmbientMismatch("divisor classes live on different ambients")

    def __add__(self, other: "DivClass") -> "DivClass":
        self._same(other)
        return DivClass(self.ambient, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivClass") -> "DivClass":
        self._same(other)
        return DivClass(self.ambient, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "DivClass":
        return DivClass(self.ambient, tuple(-a for a in self.coords))

    def __mul__(self, n: int) -> "DivClass":
        return DivClass(self.ambient, tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def try_half(self) -> "DivClass | None":
        """Exact half of the class, or None if some coordinate is odd."""
        if any(c % 2 for c in self.coords):
            return None
        return DivClass(self.ambient, tuple(c // 2 for c in self.coords))

    def __str__(self) -> str:
        labels = self.ambient.basis_labels()
        parts: list[str] = []
        for c, lab in zip(self.coords, labels):
            if c == 0:
                continue
            if c == 1:
                term = lab
            elif c == -1:
                term = f"-{lab}"
            else:
                term = f"{c}{lab}"
            if parts and not term.startswith("-"):
                parts.append("+" + term)
            else:
                parts.append(term)
        return "".join(parts) if parts else "0"


def intersect(a: DivClass, b: DivClass) -> int:
    """Intersection number of two classes on the same ambient."""
    if a.ambient != b.ambient:
        raise AmbientMismatch("intersection needs both classes on one ambient")
    u, v = a.coords, b.coords
    if a.ambient.kind == PLANE:
        return u[0] * v[0]
    s = -a.ambient.e * u[0] * v[0] + u[0] * v[1] + u[1] * v[0]
    for i in range(2, len(u)):
        s -= u[i] * v[i]
    return s


def canonical_class(ambient: Ambient) -> DivClass:
    if ambient.kind == PLANE:
        return ambient.divisor(-3)
    coords = [-2, -(ambient.e + 2)] + [1] * len(ambient.points)
    return DivClass(ambient, tuple(coords))


def pullback(target: Ambient, d: DivClass) -> DivClass:
    """Total transform of ``d`` on a blow-up of its ambient.

    ``target`` must extend d.ambient: same e, and d's centres (if any) a
    prefix of target's.
    """
    src = d.ambient
    if src.kind == PLANE or target.kind == PLANE:
        raise LatticeError("pullback is defined between ruled models only")
    if target.e != src.e or target.points[: len(src.points)] != src.points:
        raise AmbientMismatch("target is not a blow-up of the class's ambient")
    pad = target.rank - src.rank
    if pad < 0:
        raise AmbientMismatch("target has lower rank than the class's ambient")
    return DivClass(target, d.coords + (0,) * pad)


def exceptional(ambient: Ambient, index: int) -> DivClass:
    """The class E_{index+1} over ambient.points[index]."""
    if ambient.kind != BLOWUP:
        raise LatticeError("exceptional classes live on blow-ups")
    k = len(ambient.points)
    if not -k <= index < k:
        raise LatticeError(f"no exceptional class with index {index}")
    index %= k
    coords = [0] * ambient.rank
    coords[2 + index] = 1
    return DivClass(ambient, tuple(coords))


def _h0_ruled(e: int, a: int, b: int) -> int:
    # pushforward along the ruling: sum of h0 of O(b - j*e) on the line
    if a < 0:
        return 0
    return sum(max(0, b - j * e + 1) for j in range(a + 1))


def h0_flagged(ambient: Ambient, d: DivClass) -> tuple[int, bool]:
    """h0 together with a flag marking use of the generic-position estimate.

    On the plane and on F_e the value is exact and the flag is False.  On a
    blow-up only classes q*A - sum m_i E_i with m_i in {0,1} are supported;
    the value is max(0, h0(A) - #{m_i = 1}), an estimate valid for points in
    general position, and the flag is True exactly when some m_i = 1.
    """
    if d.ambient != ambient:
        raise AmbientMismatch("class does not live on the given ambient")
    if ambient.kind == PLANE:
        n = d.coords[0]
        return ((n + 1) * (n + 2) // 2 if n >= 0 else 0, False)
    if ambient.kind == HIRZEBRUCH:
        return (_h0_ruled(ambient.e, d.coords[0], d.coords[1]), False)
    mults = [-c for c in d.coords[2:]]
    if any(m not in (0, 1) for m in mults):
        raise UnsupportedClass(
            f"unsupported blow-up class shape {d}: exceptional multiplicities must be 0 or 1"
        )
    for m, p in zip(mults, ambient.points):
        if m == 1 and not p.general:
            raise UnsupportedClass(
                f"point {p.name} is not flagged general; h0 estimate refused"
            )
    k = sum(mults)
    base = _h0_ruled(ambient.e, d.coords[0], d.coords[1])
    return (max(0, base - k), k > 0)


def h0(ambient: Ambient, d: DivClass) -> int:
    return h0_flagged(ambient, d)[0]


def _blowup_pairings(d: DivClass) -> list[int]:
    # pairings against the test classes q*F, q*D0, and for each centre
    # E_i, q*F - E_i, q*D0 - E_i
    a, b = d.coords[0], d.coords[1]
    e = d.ambient.e
    vals = [a, b - a * e]
    for c in d.coords[2:]:
        ci = -c
        vals.extend((ci, a - ci, b - a * e - ci))
    return vals


def positivity(ambient: Ambient, d: DivClass) -> str:
    """Positivity verdict: Ample, NefOnly, Unknown or NotNef.

    Exact on the plane and on F_e.  On blow-ups of F_0 the Ample branch is a
    sufficient test (the coefficient bound sum c_i < a + b rules out curves
    of impossible multiplicity through the centres); NefOnly requires every
    test pairing nonnegative, at least one zero, and d.d >= 0.  Blow-ups of
    F_e with e > 0 only ever report NotNef or Unknown.
    """
    if d.ambient != ambient:
        raise AmbientMismatch("class does not live on the given ambient")
    if ambient.kind == PLANE:
        n = d.coords[0]
        if n > 0:
            return AMPLE
        return NEF_ONLY if n == 0 else NOT_NEF
    if ambient.kind == HIRZEBRUCH:
        a, b = d.coords
        if a > 0 and b > a * ambient.e:
            return AMPLE
        if a >= 0 and b >= a * ambient.e:
            return NEF_ONLY
        return NOT_NEF
    pairings = _blowup_pairings(d)
    if any(v < 0 for v in pairings):
        return NOT_NEF
    if ambient.e != 0:
        return UNKNOWN
    a, b = d.coords[0], d.coords[1]
    mults = [-c for c in d.coords[2:]]
    dd = intersect(d, d)
    if (
        a > 0
        and b > 0
        and all(m > 0 for m in mults)
        and all(a - m > 0 for m in mults)
        and all(b - m > 0 for m in mults)
        and dd > 0
        and sum(mults) < a + b
    ):
        return AMPLE
    if any(v == 0 for v in pairings) and dd >= 0:
        return NEF_ONLY
    return UNKNOWN
