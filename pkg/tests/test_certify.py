import copy
import json

import pytest

from hamdiff.core import canonicalize, parse_dspec
from hamdiff.constructions import (
    ConstructedFamily,
    bipartite_family,
    block_family,
    triangle_matching_family,
)
from hamdiff.relations import DifferencePredicate
from hamdiff.certify import (
    CertificateFormatError,
    VerificationError,
    certificate_doc,
    dump_certificate,
    load_certificate_doc,
    recheck_certificate,
    verify_family,
)

EVEN = DifferencePredicate.cycle_in(parse_dspec("even"))


def same_closure_family():
    # two distinct paths inside one 5-cycle: their union is that odd cycle,
    # so an even-cycle claim must fail
    return ConstructedFamily(
        paths=tuple(sorted((canonicalize((1, 2, 3, 4, 5)),
                            canonicalize((2, 3, 4, 5, 1))))),
        claim=EVEN,
        provenance="counterexample",
    )


class TestVerifyFamily:
    def test_bipartite_all_even_witnesses(self):
        cert = verify_family(bipartite_family(5))
        assert len(cert.witnesses) == 15  # C(6,2)
        assert all(
            w.kind == "cycle" and w.length % 2 == 0
            for w in cert.witnesses.values()
        )

    def test_triangle_family_has_45_pairs(self):
        cert = verify_family(triangle_matching_family())
        assert len(cert.witnesses) == 45
        assert all(w.length == 3 for w in cert.witnesses.values())

    def test_failure_reports_pair_and_lengths(self):
        with pytest.raises(VerificationError) as err:
            verify_family(same_closure_family())
        (i, j, lengths) = err.value.failures[0]
        assert (i, j) == (0, 1)
        assert lengths == frozenset({5})

    def test_exhaustive_mode_collects_all(self):
        family = ConstructedFamily(
            paths=tuple(sorted({
                canonicalize((1, 2, 3, 4, 5)),
                canonicalize((2, 3, 4, 5, 1)),
                canonicalize((3, 4, 5, 1, 2)),
            })),
            claim=EVEN,
            provenance="counterexample",
        )
        with pytest.raises(VerificationError) as err:
            verify_family(family, exhaustive=True)
        assert len(err.value.failures) == 3

    def test_verified_at_parameters(self):
        cert = verify_family(block_family(6, 2))
        assert cert.verified_at == {
            "n": 6, "predicate": "cycle:div=2", "size": 6,
        }


class TestCertificateDocuments:
    def test_doc_shape_and_round_trip(self):
        cert = verify_family(triangle_matching_family())
        doc = certificate_doc(cert)
        assert doc["version"] == 1
        assert doc["n"] == 5
        assert doc["predicate"] == "cycle:in=3"
        assert doc["size"] == 10
        assert len(doc["paths"]) == 10
        assert len(doc["witnesses"]) == 45
        assert doc["witnesses"] == sorted(
            doc["witnesses"], key=lambda w: w["pair"]
        )
        loaded = load_certificate_doc(dump_certificate(cert))
        summary = recheck_certificate(loaded)
        assert summary["pairs_checked"] == 45
        assert summary["size"] == 10

    def test_dump_is_deterministic(self):
        a = dump_certificate(verify_family(block_family(6, 2)))
        b = dump_certificate(verify_family(block_family(6, 2)))
        assert a == b

    def test_rejects_bad_json(self):
        with pytest.raises(CertificateFormatError):
            load_certificate_doc("{not json")

    def test_rejects_missing_fields(self):
        with pytest.raises(CertificateFormatError):
            load_certificate_doc(json.dumps({"version": 1, "n": 5}))

    def test_rejects_wrong_version(self):
        cert = verify_family(block_family(6, 2))
        doc = certificate_doc(cert)
        doc["version"] = 99
        with pytest.raises(CertificateFormatError):
            load_certificate_doc(json.dumps(doc))

    def test_rejects_wrong_field_shapes(self):
        cert = verify_family(block_family(6, 2))
        base = certificate_doc(cert)
        for mutate in (
            lambda d: d.update(paths="1,2,3"),
            lambda d: d.update(witnesses={"0": "1,2,3"}),
            lambda d: d["witnesses"].append({"pair": "01"}),
            lambda d: d.update(size="six"),
        ):
            doc = copy.deepcopy(base)
            mutate(doc)
            with pytest.raises(CertificateFormatError):
                load_certificate_doc(json.dumps(doc))


def tampered(doc, mutate):
    out = copy.deepcopy(doc)
    mutate(out)
    return out


class TestRecheck:
    @pytest.fixture()
    def doc(self):
        return certificate_doc(verify_family(triangle_matching_family()))

    def test_witness_vertex_removed(self, doc):
        def chop(d):
            d["witnesses"][0]["verts"] = "1,2"
        with pytest.raises(VerificationError):
            recheck_certificate(tampered(doc, chop))

    def test_witness_redirected_to_absent_cycle(self, doc):
        def swap(d):
            d["witnesses"][0]["verts"] = "1,2,5"
        bad = tampered(doc, swap)
        try:
            recheck_certificate(bad)
        except VerificationError as err:
            assert err.failures[0][:2] == tuple(bad["witnesses"][0]["pair"])[:2]
        else:
            # only acceptable if 1,2,5 happens to be a real triangle there
            pytest.fail("tampered witness accepted")

    def test_duplicated_path(self, doc):
        def dup(d):
            d["paths"][1] = d["paths"][0]
        with pytest.raises(VerificationError):
            recheck_certificate(tampered(doc, dup))

    def test_missing_witness(self, doc):
        def drop(d):
            del d["witnesses"][3]
        with pytest.raises(VerificationError):
            recheck_certificate(tampered(doc, drop))

    def test_size_mismatch_is_format_error(self, doc):
        def shrink(d):
            d["size"] = 9
        with pytest.raises(CertificateFormatError):
            recheck_certificate(tampered(doc, shrink))

    def test_non_canonical_path_is_format_error(self, doc):
        def flip(d):
            d["paths"][0] = ",".join(reversed(d["paths"][0].split(",")))
        with pytest.raises(CertificateFormatError):
            recheck_certificate(tampered(doc, flip))

    def test_witness_pair_out_of_range(self, doc):
        def retarget(d):
            d["witnesses"][0]["pair"] = [0, 99]
        with pytest.raises(CertificateFormatError):
            recheck_certificate(tampered(doc, retarget))
