"""Command line interface.

Subcommands:

    construct KSQ CHI [--json]     build a certificate for one pair
    degenerate KSQ CHI [--json]    build, then degenerate inside the family
    verify PATH [--json]           re-derive a stored certificate field by field
    atlas --chi-max N [--format F] [--out PATH]
                                   emit the admissible-range atlas (csv/json/svg)
    check [--chi-max N]            run the internal consistency sweeps

Exit status: 0 on success, 1 when a verification or check fails, 2 when the
request itself is bad (pair outside the covered range, unreadable
certificate, unknown format).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .cover import BuildingData, CoverError, invariants, singularity_scan
from .checks import run_all
from .degenerations import (
    DegenerationError,
    FAMILY_NOTES,
    availability_conditions,
    degenerate,
    normalization_if_any,
)
from .geography import FORMATS, atlas, canonical_json, emit
from .lattice import (
    BLOWUP,
    HIRZEBRUCH,
    PLANE,
    Ambient,
    LatticeError,
    canonical_class,
    positivity,
)
from .recipes import (
    RegionError,
    classify,
    construct,
    evaluate_side_conditions,
)


class CertificateFormatError(ValueError):
    pass


def _ambient_label(amb: Ambient) -> str:
    if amb.kind == PLANE:
        return "P^2"
    if amb.kind == HIRZEBRUCH:
        return f"F_{amb.e}"
    names = ", ".join(p.name for p in amb.points)
    return f"F_{amb.e} blown up at {names}"


def _print_construction(cert) -> None:
    inv = cert.invariants
    print(f"pair: Ksq = {cert.requested_ksq}, chi = {cert.requested_chi}")
    print(f"region: {cert.region}")
    print(f"ambient: {_ambient_label(cert.data.ambient)}")
    d = cert.data
    print(f"branches: D1 = {d.d1}, D2 = {d.d2}, D3 = {d.d3}")
    print(f"bundles:  L1 = {d.l1}, L2 = {d.l2}, L3 = {d.l3}")
    if cert.pre_resolution is not None:
        pre = cert.pre_resolution
        marks = ", ".join(p.name for p in pre.incidence)
        print(
            f"resolved from: D1 = {pre.d1}, D2 = {pre.d2}, D3 = {pre.d3} "
            f"on {_ambient_label(pre.ambient)} with triple points {marks}"
        )
    print(
        f"invariants: Ksq = {inv.ksq}, chi = {inv.chi}, pg = {inv.pg}, q = {inv.q}"
    )
    print(f"ampleness: {cert.ampleness}")
    if cert.fibration_genus is not None:
        print(f"fibration: genus {cert.fibration_genus}, epsilon = {cert.epsilon}")
    good = sum(1 for c in cert.side_conditions if c.satisfied)
    print(f"side conditions: {good}/{len(cert.side_conditions)} satisfied")
    for c in cert.side_conditions:
        mark = "ok" if c.satisfied else "VIOLATED"
        print(f"  {mark} {c.name} = {c.value}")
    for note in cert.notes:
        print(f"note: {note}")
    print(f"status: {'OK' if cert.ok else 'FAILED'}")


def _print_degeneration(dc) -> None:
    inv = dc.invariants
    print(f"pair: Ksq = {dc.requested_ksq}, chi = {dc.requested_chi}")
    print(f"region: {dc.region}")
    print(f"ambient: {_ambient_label(dc.data.ambient)}")
    d = dc.data
    print(f"branches: D1 = {d.d1}, D2 = {d.d2}, D3 = {d.d3}")
    print(
        f"invariants: Ksq = {inv.ksq}, chi = {inv.chi}, pg = {inv.pg}, q = {inv.q}"
    )
    print(f"family: {dc.family_note}")
    print("ledger:")
    for e in dc.ledger:
        where = (
            f"at {e.witness_point}" if e.witness_point else f"along {e.witness_class}"
        )
        print(f"  {e.kind} x{e.count} (index {e.gorenstein_index}) {where}")
    print(f"gorenstein: {'yes' if dc.gorenstein else 'no'}")
    if dc.normalization is not None:
        n = dc.normalization
        copies = "two disjoint copies" if n.two_disjoint_copies else "connected"
        print(f"normalization: C1 = {n.c1}, C2 = {n.c2}, C3 = {n.c3} ({copies})")
    for c in dc.side_conditions:
        mark = "ok" if c.satisfied else "VIOLATED"
        print(f"  {mark} {c.name} = {c.value}")
    print(f"status: {'OK' if dc.ok else 'FAILED'}")


@dataclass(frozen=True)
class FieldCheck:
    name: str
    passed: bool
    detail: str

    def to_doc(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _require(doc: dict, *keys: str) -> None:
    for key in keys:
        if key not in doc:
            raise CertificateFormatError(f"certificate is missing field {key!r}")


def _verify_construction(doc: dict) -> list[FieldCheck]:
    _require(
        doc,
        "requested",
        "region",
        "data",
        "invariants",
        "sideConditions",
        "ampleness",
        "parameters",
        "ok",
    )
    ksq, chi = int(doc["requested"]["ksq"]), int(doc["requested"]["chi"])
    checks: list[FieldCheck] = []
    region = classify(ksq, chi)
    checks.append(
        FieldCheck(
            "region",
            region == doc["region"],
            f"({ksq}, {chi}) classifies as {region}, stored {doc['region']}",
        )
    )
    data = BuildingData.from_doc(doc["data"])
    stored = doc["data"]["classes"]
    bundles_ok = all(
        list(getattr(data, name).coords) == list(stored[name])
        for name in ("l1", "l2", "l3")
    )
    checks.append(
        FieldCheck(
            "lineBundles",
            bundles_ok,
            "stored bundle classes match the parity derivation"
            if bundles_ok
            else "stored bundle classes disagree with the parity derivation",
        )
    )
    pre = None
    if doc.get("preResolution") is not None:
        pre = BuildingData.from_doc(doc["preResolution"])
        resolved = pre
        for p in pre.incidence:
            if p.is_triple:
                from .cover import resolve_triple_point

                resolved = resolve_triple_point(resolved, p.name)
        checks.append(
            FieldCheck(
                "resolution",
                resolved == data,
                "resolving the marked points reproduces the stored data"
                if resolved == data
                else "resolving the marked points gives different data",
            )
        )
    inv = invariants(data)
    checks.append(
        FieldCheck(
            "invariants",
            inv.to_doc() == doc["invariants"],
            f"recomputed {inv.to_doc()}",
        )
    )
    checks.append(
        FieldCheck(
            "requestedMatch",
            (inv.ksq, inv.chi) == (ksq, chi),
            f"data realizes ({inv.ksq}, {inv.chi}), requested ({ksq}, {chi})",
        )
    )
    params = {k: int(v) for k, v in doc["parameters"].items()}
    conds = evaluate_side_conditions(doc["region"], params, data, pre, ksq, chi)
    conds_doc = [c.to_doc() for c in conds]
    checks.append(
        FieldCheck(
            "sideConditions",
            conds_doc == doc["sideConditions"],
            f"{sum(c.satisfied for c in conds)}/{len(conds)} satisfied on re-derivation",
        )
    )
    amp = positivity(
        data.ambient, 2 * canonical_class(data.ambient) + data.branch_total()
    )
    checks.append(
        FieldCheck(
            "ampleness",
            amp == doc["ampleness"],
            f"recomputed {amp}, stored {doc['ampleness']}",
        )
    )
    ok = all(c.satisfied for c in conds) and (inv.ksq, inv.chi) == (ksq, chi)
    checks.append(
        FieldCheck("okFlag", ok == bool(doc["ok"]), f"recomputed ok = {ok}")
    )
    return checks


def _verify_degeneration(doc: dict) -> list[FieldCheck]:
    _require(
        doc,
        "requested",
        "region",
        "data",
        "invariants",
        "parentInvariants",
        "ledger",
        "gorenstein",
        "normalization",
        "sideConditions",
        "familyNote",
        "ok",
    )
    ksq, chi = int(doc["requested"]["ksq"]), int(doc["requested"]["chi"])
    checks: list[FieldCheck] = []
    region = classify(ksq, chi)
    checks.append(
        FieldCheck(
            "region",
            region == doc["region"],
            f"({ksq}, {chi}) classifies as {region}, stored {doc['region']}",
        )
    )
    parent = construct(ksq, chi)
    checks.append(
        FieldCheck(
            "parentInvariants",
            parent.invariants.to_doc() == doc["parentInvariants"],
            f"reconstruction gives {parent.invariants.to_doc()}",
        )
    )
    data = BuildingData.from_doc(doc["data"])
    inv = invariants(data)
    checks.append(
        FieldCheck(
            "invariants", inv.to_doc() == doc["invariants"], f"recomputed {inv.to_doc()}"
        )
    )
    checks.append(
        FieldCheck(
            "invariantsStable",
            inv == parent.invariants,
            "degenerate data keeps the parent invariants"
            if inv == parent.invariants
            else "degenerate data changes the invariants",
        )
    )
    ledger = singularity_scan(data)
    ledger_doc = [e.to_doc() for e in ledger]
    checks.append(
        FieldCheck(
            "ledger",
            ledger_doc == doc["ledger"] and bool(ledger),
            f"scan finds {len(ledger)} entries",
        )
    )
    checks.append(
        FieldCheck(
            "gorenstein",
            (not ledger) == bool(doc["gorenstein"]),
            "gorenstein flag matches the ledger",
        )
    )
    norm = normalization_if_any(doc["region"], data)
    norm_doc = None if norm is None else norm.to_doc()
    checks.append(
        FieldCheck(
            "normalization",
            norm_doc == doc["normalization"],
            "normalization recomputed" if norm else "no normalization attached",
        )
    )
    conds = availability_conditions(parent, data)
    conds_doc = [c.to_doc() for c in conds]
    checks.append(
        FieldCheck(
            "sideConditions",
            conds_doc == doc["sideConditions"],
            f"{sum(c.satisfied for c in conds)}/{len(conds)} satisfied on re-derivation",
        )
    )
    checks.append(
        FieldCheck(
            "familyNote",
            doc["familyNote"] == FAMILY_NOTES.get(doc["region"]),
            "note text matches the family",
        )
    )
    ok = all(c.satisfied for c in conds) and inv == parent.invariants and bool(ledger)
    checks.append(
        FieldCheck("okFlag", ok == bool(doc["ok"]), f"recomputed ok = {ok}")
    )
    return checks


def _verify_doc(doc: dict) -> list[FieldCheck]:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise CertificateFormatError("certificate has no 'kind' field")
    if doc["kind"] == "construction":
        return _verify_construction(doc)
    if doc["kind"] == "degeneration":
        return _verify_degeneration(doc)
    raise CertificateFormatError(f"unknown certificate kind {doc['kind']!r}")


def _cmd_construct(args) -> int:
    cert = construct(args.ksq, args.chi)
    if args.json:
        print(canonical_json(cert.to_doc()), end="")
    else:
        _print_construction(cert)
    return 0


def _cmd_degenerate(args) -> int:
    dc = degenerate(construct(args.ksq, args.chi))
    if args.json:
        print(canonical_json(dc.to_doc()), end="")
    else:
        _print_degeneration(dc)
    return 0


def _cmd_verify(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as err:
        raise CertificateFormatError(f"cannot read {args.path}: {err}") from err
    except json.JSONDecodeError as err:
        raise CertificateFormatError(f"{args.path} is not JSON: {err}") from err
    try:
        checks = _verify_doc(doc)
    except (KeyError, TypeError, ValueError) as err:
        if isinstance(err, CertificateFormatError):
            raise
        raise CertificateFormatError(f"malformed certificate: {err}") from err
    passed = all(c.passed for c in checks)
    if args.json:
        print(
            canonical_json(
                {"ok": passed, "checks": [c.to_doc() for c in checks]}
            ),
            end="",
        )
    else:
        for c in checks:
            if c.passed:
                print(f"ok {c.name}")
            else:
                print(f"MISMATCH {c.name}: {c.detail}")
        print(f"verified: {'PASS' if passed else 'FAIL'}")
    return 0 if passed else 1


def _cmd_atlas(args) -> int:
    text = emit(atlas(args.chi_max), args.format)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return 0


def _cmd_check(args) -> int:
    results = run_all(args.chi_max)
    failures = 0
    for r in results:
        if r.passed:
            print(f"ok {r.name}: {r.detail}")
        else:
            failures += 1
            print(f"FAIL {r.name}: {r.detail}")
    print(f"checks: {len(results) - failures}/{len(results)} passed")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bidouble",
        description=(
            "exact-arithmetic construction and degeneration certificates for "
            "Klein-four covers of rational surfaces"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a certificate for one (Ksq, chi) pair")
    p.add_argument("ksq", type=int, help="requested self-intersection of the canonical class")
    p.add_argument("chi", type=int, help="requested holomorphic Euler characteristic")
    p.add_argument("--json", action="store_true", help="emit the certificate document")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("degenerate", help="build a pair and degenerate it in its family")
    p.add_argument("ksq", type=int)
    p.add_argument("chi", type=int)
    p.add_argument("--json", action="store_true", help="emit the certificate document")
    p.set_defaults(func=_cmd_degenerate)

    p = sub.add_parser("verify", help="re-derive a stored certificate field by field")
    p.add_argument("path", help="path to a certificate JSON document")
    p.add_argument("--json", action="store_true", help="emit the check report as JSON")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("atlas", help="emit the atlas of the admissible range")
    p.add_argument("--chi-max", type=int, required=True, help="largest chi row")
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--out", default=None, help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_atlas)

    p = sub.add_parser("check", help="run the internal consistency sweeps")
    p.add_argument("--chi-max", type=int, default=12)
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RegionError, DegenerationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except CertificateFormatError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (CoverError, LatticeError) as err:
        print(f"error: invalid data: {err}", file=sys.stderr)
        return 2
