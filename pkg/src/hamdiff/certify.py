"""Family verification and machine-checkable certificates.

A certificate pairs a family with one validated witness per unordered pair
of member paths.  The serialized form is a single JSON document with fixed
field names, canonical witness order (by pair index), and paths rendered as
comma-separated vertex sequences, so equal inputs produce byte-identical
files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .core import HamPath, ValidationError, cycle_lengths, union_of
from .constructions import ConstructedFamily
from .relations import DifferencePredicate, Witness, find_witness

CERTIFICATE_VERSION = 1


class VerificationError(Exception):
    """A pair of family members has no witness (or an invalid one).

    ``failures`` lists (i, j, cycle-length set) for every offending pair
    found; fail-fast verification stops at the first.
    """

    def __init__(self, failures: list[tuple[int, int, frozenset[int]]]):
        self.failures = failures
        i, j, lengths = failures[0]
        super().__init__(
            f"pair ({i}, {j}) has no witness; union cycle lengths are "
            f"{sorted(lengths)}"
        )


class CertificateFormatError(ValueError):
    """The certificate document itself is malformed."""


@dataclass(frozen=True)
class FamilyCertificate:
    """A verified family: every unordered pair carries a witness that has
    been checked against the recomputed union graph."""

    family: ConstructedFamily
    witnesses: Mapping[tuple[int, int], Witness]
    verified_at: Mapping[str, object]


def verify_family(family: ConstructedFamily,
                  exhaustive: bool = False) -> FamilyCertificate:
    """Search a witness for every pair of the family under its claim.

    Fails fast on the first witnessless pair in index order; with
    ``exhaustive`` all failing pairs are collected before raising.
    """
    paths = family.paths
    witnesses: dict[tuple[int, int], Witness] = {}
    failures: list[tuple[int, int, frozenset[int]]] = []
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            witness = find_witness(paths[i], paths[j], family.claim)
            if witness is None:
                lengths = frozenset(cycle_lengths(union_of(paths[i], paths[j])))
                failures.append((i, j, lengths))
                if not exhaustive:
                    raise VerificationError(failures)
            else:
                witnesses[(i, j)] = witness
    if failures:
        raise VerificationError(failures)
    return FamilyCertificate(
        family=family,
        witnesses=witnesses,
        verified_at={
            "n": family.n,
            "predicate": family.claim.render(),
            "size": family.size,
        },
    )


def certificate_doc(cert: FamilyCertificate) -> dict:
    """Serializable form of a certificate (fixed field names and order)."""
    return {
        "version": CERTIFICATE_VERSION,
        "n": cert.family.n,
        "predicate": cert.family.claim.render(),
        "construction": cert.family.provenance,
        "size": cert.family.size,
        "paths": [str(p) for p in cert.family.paths],
        "witnesses": [
            {
                "pair": [i, j],
                "kind": cert.witnesses[(i, j)].kind,
                "verts": ",".join(str(v) for v in cert.witnesses[(i, j)].verts),
            }
            for i, j in sorted(cert.witnesses)
        ],
    }


def dump_certificate(cert: FamilyCertificate) -> str:
    return json.dumps(certificate_doc(cert), indent=2) + "\n"


def _parse_vertex_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise CertificateFormatError(f"bad {what} {text!r}") from None


def load_certificate_doc(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"not valid JSON: {exc}") from None
    required = {
        "version": int, "n": int, "predicate": str, "construction": str,
        "size": int, "paths": list, "witnesses": list,
    }
    if not isinstance(doc, dict) or any(
        not isinstance(doc.get(key), kind) for key, kind in required.items()
    ):
        raise CertificateFormatError(
            f"certificate must carry the fields {tuple(required)}"
        )
    if doc["version"] != CERTIFICATE_VERSION:
        raise CertificateFormatError(f"unsupported version {doc['version']!r}")
    if not all(isinstance(p, str) for p in doc["paths"]):
        raise CertificateFormatError("paths must be vertex-sequence strings")
    for entry in doc["witnesses"]:
        if (not isinstance(entry, dict)
                or not isinstance(entry.get("pair"), list)
                or not all(isinstance(v, int) for v in entry["pair"])
                or not isinstance(entry.get("kind"), str)
                or not isinstance(entry.get("verts"), str)):
            raise CertificateFormatError(f"bad witness entry {entry!r}")
    return doc


def recheck_certificate(doc: dict) -> dict:
    """Recompute every witness of a certificate document from scratch.

    Rebuilds the paths, re-derives each pair's union graph, and revalidates
    the stored witness against it.  Returns a summary dict; raises
    :class:`VerificationError` (carrying the offending pair) on the first
    failure in pair order, :class:`CertificateFormatError` on malformed
    content.
    """
    try:
        predicate = DifferencePredicate.parse(doc["predicate"])
    except ValidationError as exc:
        raise CertificateFormatError(str(exc)) from None

    paths: list[HamPath] = []
    for text in doc["paths"]:
        seq = _parse_vertex_list(text, "path")
        try:
            path = HamPath(seq)
        except ValidationError as exc:
            raise CertificateFormatError(str(exc)) from None
        paths.append(path)
    n = doc["n"]
    if any(p.n != n for p in paths):
        raise CertificateFormatError("paths disagree with the stated n")
    if doc["size"] != len(paths):
        raise CertificateFormatError("stated size disagrees with the path list")

    def fail(i: int, j: int) -> VerificationError:
        lengths = frozenset(cycle_lengths(union_of(paths[i], paths[j])))
        return VerificationError([(i, j, lengths)])

    if len(set(paths)) != len(paths):
        dup = next(
            (i, j)
            for i in range(len(paths))
            for j in range(i + 1, len(paths))
            if paths[i] == paths[j]
        )
        raise fail(*dup)

    by_pair: dict[tuple[int, int], dict] = {}
    for entry in doc["witnesses"]:
        pair = tuple(entry.get("pair", ()))
        if (len(pair) != 2 or pair in by_pair
                or not 0 <= pair[0] < pair[1] < len(paths)):
            raise CertificateFormatError(f"bad witness pair {entry!r}")
        by_pair[pair] = entry

    checked = 0
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            entry = by_pair.get((i, j))
            if entry is None:
                raise fail(i, j)
            verts = _parse_vertex_list(entry["verts"], "witness")
            try:
                witness = Witness(entry["kind"], verts)
            except ValidationError:
                raise fail(i, j) from None
            if not witness.is_valid_for(union_of(paths[i], paths[j]), predicate):
                raise fail(i, j)
            checked += 1

    return {
        "n": n,
        "predicate": predicate.render(),
        "construction": doc["construction"],
        "size": len(paths),
        "pairs_checked": checked,
    }
