"""Degeneration certificates: ledgers, normalizations, invariant stability."""

import json

import pytest

from bidouble.cover import NON_NORMAL_GLUING, QUARTER_POINT
from bidouble.degenerations import (
    DegenerationError,
    degenerate,
    degenerate_pair,
    normalize_noether_line,
)
from bidouble.recipes import (
    GENUS2_GENERAL,
    GENUS3,
    NOETHER_LINE,
    PRODUCT_LINE,
    construct,
)


def covered_pairs(chi_max):
    for chi in range(1, chi_max + 1):
        for ksq in range(max(1, 2 * chi - 6), 8 * chi - 7):
            yield ksq, chi


class TestNoetherLine:
    def test_odd_chi_shared_whole_branch(self):
        dc = degenerate_pair(4, 5)
        assert dc.region == NOETHER_LINE
        assert not dc.data.reduced
        assert dc.invariants == dc.parent_invariants
        assert [e.kind for e in dc.ledger] == [NON_NORMAL_GLUING]
        entry = dc.ledger[0]
        assert entry.count == 6
        assert entry.gorenstein_index == 2
        assert list(entry.witness_class.coords) == [1, 0]
        assert not dc.gorenstein
        assert dc.ok

    def test_even_chi_shared_section_plus_fibers(self):
        dc = degenerate_pair(2, 4)
        assert not dc.data.reduced
        assert dc.data.d2 == dc.data.ambient.divisor(1, 2)
        names = [c.name for c in dc.data.components if c.branch == 2]
        assert names == ["d1", "f1", "f2"]
        assert [e.kind for e in dc.ledger] == [NON_NORMAL_GLUING]
        assert dc.ledger[0].count == 2
        assert dc.ok

    def test_normalization_frozen_odd(self):
        dc = degenerate_pair(4, 5)
        n = dc.normalization
        assert n is not None
        assert n.c1.is_zero()
        assert n.c2.is_zero()
        assert list(n.c3.coords) == [4, 6]
        assert n.two_disjoint_copies

    def test_normalization_frozen_even(self):
        n = degenerate_pair(6, 6).normalization
        assert list(n.c2.coords) == [0, 2]
        assert list(n.c3.coords) == [4, 10]
        assert n.two_disjoint_copies

    def test_normalize_function_matches_attached(self):
        dc = degenerate_pair(2, 4)
        assert normalize_noether_line(dc) == dc.normalization

    def test_normalize_rejects_normal_families(self):
        dc = degenerate_pair(20, 7)
        assert dc.normalization is None
        with pytest.raises(DegenerationError, match="normal"):
            normalize_noether_line(dc)


class TestMarkedPointFamilies:
    @pytest.mark.parametrize(
        "ksq, chi, witness, candidates",
        [
            (1, 2, "p", 9),
            (1, 3, "p", 5),
            (20, 7, "p", 12),
            (8, 3, "p", 8),
            (7, 3, "pPrime", 7),
            (17, 5, "p4", 11),
            (16, 4, "p1", 16),
        ],
    )
    def test_single_quarter_point(self, ksq, chi, witness, candidates):
        dc = degenerate_pair(ksq, chi)
        assert [e.kind for e in dc.ledger] == [QUARTER_POINT]
        entry = dc.ledger[0]
        assert entry.count == 1
        assert entry.gorenstein_index == 2
        assert entry.witness_point == witness
        assert dc.data.reduced
        assert not dc.gorenstein
        by_name = {c.name: c for c in dc.side_conditions}
        assert by_name["triplePointCandidates"].value == candidates
        assert dc.ok

    def test_genus2_point_sits_on_all_named_components(self):
        dc = degenerate_pair(20, 7)
        point = dc.data.point("p")
        assert point.components == ("d1", "d2", "d3")
        assert point.branches == frozenset({1, 2, 3})

    def test_line5_marks_a_fresh_fiber(self):
        dc = degenerate_pair(7, 3)
        point = dc.data.point("pPrime")
        assert point.components == ("d1", "d2", "delta2")
        # the resolved construction point is in the ambient, not incidence
        assert [p.name for p in dc.data.ambient.points] == ["p"]

    def test_genus3_splits_the_bulk_fiber(self):
        dc = degenerate_pair(17, 5)
        names = [c.name for c in dc.data.components if c.branch == 1]
        assert names == ["f1", "f2", "f3", "f4", "f_rest"]
        assert dc.data.component("f_rest").count == 1
        assert dc.data.point("p4").components == ("f4", "d2", "d3")
        by_name = {c.name: c for c in dc.side_conditions}
        assert by_name["spareFibers"].value == 2

    def test_genus3_with_no_remainder_fiber(self):
        dc = degenerate_pair(5, 2)
        names = [c.name for c in dc.data.components if c.branch == 1]
        assert names == ["f1", "f2", "f3", "f4"]
        assert dc.data.point("p4").components == ("f4", "d2", "d3")
        assert dc.ok


class TestAvailability:
    def test_product_line_refuses(self):
        cert = construct(8, 1)
        with pytest.raises(DegenerationError, match="product"):
            degenerate(cert)

    def test_every_covered_pair_degenerates(self):
        for ksq, chi in covered_pairs(10):
            dc = degenerate_pair(ksq, chi)
            assert dc.ok, (ksq, chi, dc.side_conditions)
            assert dc.invariants == dc.parent_invariants
            assert dc.ledger
            assert not dc.gorenstein
            assert all(e.gorenstein_index == 2 for e in dc.ledger)
            if dc.region == NOETHER_LINE:
                assert [e.kind for e in dc.ledger] == [NON_NORMAL_GLUING]
                assert dc.normalization is not None
            else:
                assert [e.kind for e in dc.ledger] == [QUARTER_POINT]
                assert dc.normalization is None


class TestDoc:
    def test_doc_shape(self):
        doc = degenerate_pair(4, 5).to_doc()
        assert doc["kind"] == "degeneration"
        assert doc["requested"] == {"ksq": 4, "chi": 5}
        assert doc["gorenstein"] is False
        assert doc["ledger"][0]["kind"] == NON_NORMAL_GLUING
        assert doc["ledger"][0]["gorensteinIndex"] == 2
        assert doc["ledger"][0]["witness"] == {"class": [1, 0]}
        assert doc["normalization"]["classes"] == {
            "c1": [0, 0],
            "c2": [0, 0],
            "c3": [4, 6],
        }
        assert doc["normalization"]["twoDisjointCopies"] is True
        json.dumps(doc)

    def test_quarter_point_doc_witness(self):
        doc = degenerate_pair(20, 7).to_doc()
        assert doc["ledger"] == [
            {
                "kind": QUARTER_POINT,
                "count": 1,
                "gorensteinIndex": 2,
                "witness": {"point": "p"},
            }
        ]
        assert doc["normalization"] is None

    def test_data_doc_reimports_nonreduced(self):
        from bidouble.cover import BuildingData

        dc = degenerate_pair(2, 4)
        clone = BuildingData.from_doc(dc.data.to_doc())
        assert clone == dc.data
        assert not clone.reduced
