import pytest

from skewlat import constructions, terms, varieties
from skewlat.core import CayleyPair, validate
from skewlat.varieties import FLAG_NAMES, classify, nc5_free


class TestClassify:
    def test_three_r0_flags(self, threes):
        r0, r1 = threes
        a = classify(r0)
        assert a["strongly_distributive"] and not a["co_strongly_distributive"]
        b = classify(r1)
        assert b["co_strongly_distributive"] and not b["strongly_distributive"]

    def test_all_flags_present(self, threes):
        report = classify(threes[0])
        for name in FLAG_NAMES:
            assert isinstance(report[name], bool)
        assert isinstance(report["quasi_distributive"], bool)

    def test_witness_is_lexicographically_first(self, threes):
        r0, _ = threes
        report = classify(r0)
        assert not report["co_strongly_distributive"]
        w = report.witnesses["co_strongly_distributive"]
        lib = terms.library()
        # re-derive independently from the defining formulas
        for name in ("co-strong-dist1", "co-strong-dist2"):
            res = terms.holds(r0, lib[name])
            if res is not True:
                assert res == w
                break

    def test_lattice_flag(self):
        S = constructions.chain((1, 1, 1))
        r = classify(S)
        assert r["lattice"] and r["symmetric"] and r["distributive"]

    def test_rectangular_flag(self):
        S = constructions.rectangular(2, 2)
        r = classify(S)
        assert r["rectangular"] and not r["lattice"]

    def test_chain_is_distributive_and_cancellative(self):
        r = classify(constructions.chain((2, 1, 3)))
        assert r["distributive"] and r["cancellative"]

    def test_to_text_stable(self, threes):
        assert classify(threes[0]).to_text() == classify(threes[0]).to_text()


class TestNc5Free:
    def test_nc5r_itself_contains_a_copy(self):
        S = constructions.fixed("NC5R")
        res = nc5_free(S)
        assert res is not True
        name, subset, img = res
        assert name == "NC5R" and subset == (0, 1, 2, 3, 4)

    def test_nc5l_detected(self):
        S = constructions.fixed("NC5L")
        res = nc5_free(S)
        assert res is not True and res[0] == "NC5L"

    def test_small_algebras_are_free(self, census5):
        for n in (1, 2, 3, 4):
            for S in census5[n]:
                assert nc5_free(S) is True

    def test_matches_simple_cancellativity_n5(self, census5):
        lib = terms.library()
        for S in census5[5]:
            free = nc5_free(S)
            assert (free is True) == (terms.holds(S, lib["simple-canc"]) is True)

    def test_embedded_copy_in_product(self):
        S = constructions.direct_product(
            constructions.fixed("NC5R"), constructions.chain((1,))
        )
        res = nc5_free(S)
        assert res is not True and res[0] == "NC5R"
