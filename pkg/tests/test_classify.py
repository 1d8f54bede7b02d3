"""Shape detection, closed-form minimality clauses, and the reference table."""

import pytest

from bridgekit.census import enumerate_words
from bridgekit.classify import (
    TABLE1_REFERENCE,
    nonminimal_matches,
    nonminimal_type,
    reconstruct_params,
    rows_to_csv,
    rows_to_json,
    rows_to_markdown,
    structure,
    table1,
    table1_diff,
)
from bridgekit.epim import is_minimal, ors_compose
from bridgekit.knot import canonical_word, knot_from_word


def braid_slice(c, braid):
    ell = c - 2 * (braid - 1)
    if ell < 0:
        return
    yield from enumerate_words(c, ell=ell)


class TestStructure:
    def test_examples(self):
        assert structure((2, -2, 2, -2)).tag == "B2"
        tag = structure((2, -4, 2, -2, 2, -2))
        assert (tag.tag, tag.positions) == ("T3a", (2,))
        tag = structure((2, -2, -2, 2, -2, 2, -2, 2))
        assert (tag.tag, tag.positions) == ("T3b", (2,))

    def test_braid_four_shapes(self):
        assert structure((2, -2, 2, -2, 2, -6, 2, -2)).tag == "T4a"
        assert structure((2, -2, 4, -2, 2, -4, 2, -2)).tag == "T4b"
        tag = structure((2, -2, -4, 2, -2, 2, -2, 2))
        assert (tag.tag, tag.positions) == ("T4c", (3, 2))
        assert structure((2, -2, -2, -2, 2, -2, 2, -2)).tag == "T4d"

    def test_beyond_braid_four(self):
        assert structure((2, -6, 6, -2)).tag == "other"

    @pytest.mark.parametrize("c", range(3, 16))
    def test_totality_and_exclusivity(self, c):
        """Every braid-3 word is exactly one of T3a/T3b; braid-4 one of T4a..T4d."""
        for braid, allowed in ((3, {"T3a", "T3b"}), (4, {"T4a", "T4b", "T4c", "T4d"})):
            for word in braid_slice(c, braid):
                assert structure(word).tag in allowed


class TestNonminimalClauses:
    def test_prime_torus_is_minimal(self):
        assert nonminimal_type((2, -2) * 3) is None  # T(7,2), 7 prime

    def test_composite_torus(self):
        match = nonminimal_type((2, -2) * 4)
        assert match.kind == "TORUS" and (match.r, match.m) == (1, 1)

    def test_merged_pair_clause(self):
        match = nonminimal_type((2, -4, 4, -2))
        assert match.kind == "4B3"
        assert (match.r, match.m) == (1, 1)
        assert (match.i0, match.i1, match.j0, match.j1) == (2, 3, 1, 2)

    def test_double_repeat_clause(self):
        match = nonminimal_type((2, -2, -2, -2, 2, -2, 2, -2))
        assert match.kind == "4D"

    def test_mirror_normalization(self):
        # the clause applies to the mirror orbit, not just the given word
        word = (2, -4, 2, -2, 2, -2)
        mirrored = tuple(-e for e in word)
        assert nonminimal_type(word).kind == "3A2"
        assert nonminimal_type(mirrored).kind == "3A2"

    def test_position_off_by_one_is_minimal(self):
        # same shape as a 3B row but the repeat sits at a bad position
        word = (2, 2, -2, 2, -2, 2, -2, 2)
        assert structure(word).tag == "T3b"
        assert nonminimal_type(word) is None

    def test_braid_five_rejected(self):
        with pytest.raises(ValueError):
            nonminimal_type((2, -6, 6, -2))

    @pytest.mark.parametrize("c", range(3, 16))
    def test_cross_validation_against_search(self, c):
        """The clause test and the interleaving search must agree exactly."""
        for braid in (2, 3, 4):
            for word in braid_slice(c, braid):
                closed = bool(nonminimal_matches(word))
                searched = not is_minimal(knot_from_word(word))
                assert closed == searched, word

    def test_reconstruction(self):
        for c in range(3, 16):
            for braid in (2, 3, 4):
                for word in braid_slice(c, braid):
                    for match in nonminimal_matches(word):
                        composed = ors_compose(reconstruct_params(match))
                        assert canonical_word(composed) == canonical_word(match.word)


class TestTable:
    def test_reference_reproduced(self):
        rows = table1(15)
        assert len(rows) == len(TABLE1_REFERENCE) == 28
        assert table1_diff(rows) == []

    def test_small_horizon(self):
        rows = table1(9)
        assert [(r.braid, r.kind, r.crossing) for r in rows] == [
            (2, "2", 9),
            (3, "3A2", 9),
            (4, "4B3", 9),
        ]
        assert table1_diff(rows, c_max=9) == []

    def test_trefoil_horizon_is_empty(self):
        assert table1(3) == []
        assert table1(2) == []

    def test_images_column(self):
        by_word = {row.word: row.images for row in table1(15)}
        assert by_word[(2, -2) * 7] == ("3_1", "5_1")
        assert by_word[(2, -2, 2, -4, 2, -2, 2, -2, 2, -2, 2, -2)] == ("5_1",)

    def test_chiral_table_covers_both_hands(self):
        mirror_rows = table1(11)
        chiral_rows = table1(11, up_to_mirror=False)

        def amphichiral(word):
            return canonical_word(word) == canonical_word(tuple(-e for e in word))

        expected = sum(1 if amphichiral(row.word) else 2 for row in mirror_rows)
        assert len(chiral_rows) == expected

    def test_diff_detects_corruption(self):
        rows = table1(9)
        assert table1_diff(rows[:-1], c_max=9)  # dropped row reported
        assert any("missing" in line for line in table1_diff(rows[:-1], c_max=9))

    def test_beyond_reference_horizon(self):
        # new non-minimal knots appear at c = 16; the diff only judges c <= 15
        rows = table1(16)
        assert any(row.crossing == 16 for row in rows)
        assert table1_diff(rows, c_max=16) == []


class TestEmission:
    def setup_method(self):
        self.rows = table1(9)

    def test_markdown(self):
        text = rows_to_markdown(self.rows)
        assert "| 4 | 4B3 | 9 | [2, -4, 4, -2] | 3_1 |" in text

    def test_csv(self):
        text = rows_to_csv(self.rows)
        assert text.splitlines()[0] == "braid,type,c,even continued fraction,onto"
        assert '4,4B3,9,"[2, -4, 4, -2]",3_1' in text

    def test_json(self):
        import json

        payload = json.loads(rows_to_json(self.rows))
        row = next(r for r in payload if r["type"] == "4B3")
        assert row["word"] == "2,-4,4,-2"
        assert row["matches"][0]["kind"] == "4B3"
        assert row["matches"][0]["j1"] == 2
