"""Interleaving composition, inequality audits, and epimorphism search."""

import json
import random

import pytest

from bridgekit.census import enumerate_words
from bridgekit.contfrac import rev_neg
from bridgekit.epim import (
    AuditFailure,
    BudgetExceeded,
    EpiWitness,
    OrsParams,
    SearchBudget,
    admits_epi,
    audit_inequality,
    audit_params,
    epi_graph,
    epi_targets,
    graph_to_dot,
    graph_to_json,
    is_minimal,
    ors_compose,
)
from bridgekit.knot import (
    braid_index,
    canonical_word,
    crossing_number,
    display_name,
    knot_from_word,
)

TREFOIL = knot_from_word((2, -2))
TORUS9 = knot_from_word((2, -2) * 4)
TORUS15 = knot_from_word((2, -2) * 7)


def params(target, r, eps, cvec):
    return OrsParams(target=tuple(target), r=r, eps=tuple(eps), cvec=tuple(cvec))


class TestCompose:
    def test_plain_interleaving(self):
        assert ors_compose(params((2, -2), 1, (1, 1, 1), (1, -1))) == (2, -2) * 4

    def test_enlarged_connector(self):
        assert ors_compose(params((2, -2), 1, (1, 1, 1), (1, -2))) == (
            2, -2, 2, -2, 2, -4, 2, -2,
        )

    def test_delete_and_merge(self):
        assert ors_compose(params((2, -2), 1, (1, 1, 1), (0, -1))) == (
            2, -4, 2, -2, 2, -2,
        )

    def test_double_merge(self):
        assert ors_compose(params((2, -2), 1, (1, 1, 1), (0, 0))) == (2, -4, 4, -2)

    def test_sign_flip_blocks(self):
        assert ors_compose(params((2, -2), 1, (1, -1, -1), (-1, 1))) == (
            2, -2, -2, 2, -2, 2, -2, 2,
        )

    def test_validation(self):
        with pytest.raises(ValueError):
            params((2, -2), 1, (-1, 1, 1), (1, -1))  # leading sign must be +1
        with pytest.raises(ValueError):
            params((2, -2), 1, (1, -1, 1), (0, 1))  # zero connector needs equal signs
        with pytest.raises(ValueError):
            params((2, -2), 0, (1,), ())
        with pytest.raises(ValueError):
            params((2, -3), 1, (1, 1, 1), (1, -1))  # target must be a reduced even word

    def test_composition_is_even_word(self):
        rng = random.Random(7)
        pool = [w for c in range(3, 8) for w in enumerate_words(c)]
        for _ in range(300):
            target = rng.choice(pool)
            r = rng.randint(1, 2)
            cvec = tuple(rng.randint(-2, 2) for _ in range(2 * r))
            eps = [1]
            for j, cj in enumerate(cvec):
                eps.append(eps[j] if cj == 0 else rng.choice((1, -1)))
            word = ors_compose(params(target, r, eps, cvec))
            assert len(word) % 2 == 0
            assert all(e and e % 2 == 0 for e in word)


class TestAudit:
    def test_equality_case_all_terms_zero(self):
        p = params((2, -2), 1, (1, 1, 1), (1, -1))
        audit = audit_params(p)
        assert audit.terms == (0, 0, 0, 0) and audit.slack == 0

    def test_enlarged_connector_charges_cbudget(self):
        audit = audit_params(params((2, -2), 1, (1, 1, 1), (1, -2)))
        assert audit.slack == 1
        assert audit.terms == (0, 1, 0, 0)

    def test_deleted_connector_charges_zero_term(self):
        audit = audit_params(params((2, -2), 1, (1, 1, 1), (0, -1)))
        assert audit.slack == 1
        assert audit.terms == (0, 0, 1, 0)

    def test_sign_flip_charges_signs_term(self):
        audit = audit_params(params((2, -2), 1, (1, -1, -1), (-1, 1)))
        assert audit.slack == 1
        assert audit.terms == (0, 0, 0, 1)

    def test_witness_audit_recomputes(self):
        witness = admits_epi(TORUS9, TREFOIL)
        assert audit_inequality(witness) == witness.audit

    def test_tampered_witness_rejected(self):
        witness = admits_epi(TORUS9, TREFOIL)
        tampered = EpiWitness(
            big=TORUS15, small=witness.small, params=witness.params, audit=witness.audit
        )
        with pytest.raises(AuditFailure):
            audit_inequality(tampered)

    def test_random_soundness(self):
        rng = random.Random(1729)
        pool = [w for c in range(3, 10) for w in enumerate_words(c)]
        for _ in range(2000):
            target = rng.choice(pool)
            r = rng.randint(1, 2)
            cvec = tuple(rng.randint(-3, 3) for _ in range(2 * r))
            eps = [1]
            for j, cj in enumerate(cvec):
                eps.append(eps[j] if cj == 0 else rng.choice((1, -1)))
            p = params(target, r, eps, cvec)
            composed = ors_compose(p)
            audit = audit_params(p, composed)  # raises on any violation
            assert braid_index(composed) >= 3 * braid_index(target) - 4
            assert crossing_number(composed) >= 3 * crossing_number(target)
            assert sum(audit.terms) == audit.slack


class TestSearch:
    def test_torus9_targets_trefoil_only(self):
        witnesses = epi_targets(TORUS9)
        assert [display_name(w.small) for w in witnesses] == ["3_1"]
        assert witnesses[0].params.cvec == (1, -1)

    def test_torus15_targets(self):
        names = sorted({display_name(w.small) for w in epi_targets(TORUS15)})
        assert names == ["3_1", "5_1"]

    def test_figure_eight_has_no_targets(self):
        assert epi_targets(knot_from_word((2, 2))) == []

    def test_admits_epi_examples(self):
        witness = admits_epi(knot_from_word((2, -2, 2, -2, 2, -4, 2, -2)), TREFOIL)
        assert witness is not None
        assert witness.params.r == 1 and witness.params.cvec == (1, -2)
        assert admits_epi(TREFOIL, TREFOIL) is None  # proper targets only
        assert admits_epi(knot_from_word((2, -4, 4, -2)), TREFOIL) is not None

    def test_admits_epi_crossing_bound(self):
        assert admits_epi(knot_from_word((2, 2)), TREFOIL) is None

    def test_admits_consistent_with_targets(self):
        big = knot_from_word((2, -2, 2, -2, 2, -4, 2, -2))
        witnesses = epi_targets(big)
        onto_trefoil = [w for w in witnesses if w.small == TREFOIL]
        assert onto_trefoil and admits_epi(big, TREFOIL) == onto_trefoil[0]

    def test_minimality_examples(self):
        assert is_minimal(TREFOIL)
        assert not is_minimal(TORUS9)
        assert is_minimal(knot_from_word((2, -2) * 3))  # 7 is prime

    def test_witnesses_recompose(self):
        for big_word in ((2, -2) * 4, (2, -4, 4, -2), (2, -2, -2, 2, -2, 2, -2, 2)):
            big = knot_from_word(big_word)
            for witness in epi_targets(big):
                assert canonical_word(ors_compose(witness.params)) == big.canon

    def test_rev_neg_connector_swap_same_class(self):
        first = ors_compose(params((2, -2), 1, (1, 1, 1), (2, -1)))
        second = ors_compose(params((2, -2), 1, (1, 1, 1), (1, -2)))
        assert first == rev_neg(second)
        assert knot_from_word(first) == knot_from_word(second)

    def test_mirror_symmetry_of_detection(self):
        # mirroring the big knot mirrors its target set
        big = knot_from_word((2, -2, -2, 2, -2, 2, -2, 2))
        mirrored = knot_from_word(tuple(-e for e in big.canon))
        names = lambda k: sorted({display_name(w.small) for w in epi_targets(k)})
        assert names(big) == names(mirrored) == ["3_1"]

    def test_budget_exceeded_carries_partial(self):
        with pytest.raises(BudgetExceeded) as info:
            epi_targets(TORUS15, SearchBudget(max_nodes=3))
        assert isinstance(info.value.partial, list)

    def test_deterministic_order(self):
        big = knot_from_word((2, -2, 2, -2, 2, -4, 2, -2))
        assert epi_targets(big) == epi_targets(big)


class TestGraph:
    def test_graph_smoke(self):
        graph = epi_graph(9)
        words = {node.canon for node in graph.nodes}
        assert (2, -2) in words and len(graph.nodes) == 2 + 1 + 4 + 5 + 14 + 21 + 48
        edges = {(big.canon, small.canon) for big, small, _ in graph.edges}
        assert ((2, -2, 2, -2, 2, -2, 2, -2), (2, -2)) in edges
        assert ((2, -4, 4, -2), (2, -2)) in edges

    def test_dot_output(self):
        dot = graph_to_dot(epi_graph(9))
        assert dot.startswith("digraph epimorphisms {") and dot.endswith("}")
        assert '"2,-2,2,-2,2,-2,2,-2" -> "2,-2"' in dot

    def test_json_output(self):
        payload = json.loads(graph_to_json(epi_graph(9)))
        assert payload["max_crossing"] == 9
        names = {node["name"] for node in payload["nodes"]}
        assert {"3_1", "4_1", "5_1"} <= names
        edge = next(
            e for e in payload["edges"] if e["source"] == "2,-2,2,-2,2,-2,2,-2"
        )
        assert edge["target"] == "2,-2"
        assert edge["witnesses"][0]["audit"]["slack"] == 0

    def test_graph_deterministic(self):
        assert graph_to_json(epi_graph(11)) == graph_to_json(epi_graph(11))
