"""Epimorphisms between two-bridge knot groups via the ORS pattern.

The Ohtsuki-Riley-Sakuma construction characterizes when one two-bridge
knot group surjects onto another: the big knot's reduced even word must
interleave 2r+1 signed copies of the target word a (alternating with
its reversal) with even connector entries 2*c_j,

    (eps_1 a, 2c_1, eps_2 a^rev, 2c_2, ..., 2c_{2r}, eps_{2r+1} a),

where eps_1 = +1.  A zero connector is deleted and the two adjacent
block-boundary entries merge by addition; the constraint eps_{j+1} =
eps_j for c_j = 0 keeps the merged entry nonzero and even.

Detection is generate-and-match: enumerate the finitely many parameter
tuples that could reach the big knot's crossing number, compose, and
compare canonical forms.  The crossing number of a composition is at
least (2r+1) times the target's plus twice the connector overshoot
sum_{c_j != 0} (|c_j| - 1), which makes the search space finite and the
enumeration exhaustive.

Every returned witness carries an audit splitting the braid-index gap
braid(big) - 3 braid(target) + 4 into four non-negative terms; the
audit recomputes everything from the parameters and the recomposed
word, trusting nothing from the search state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

from .census import enumerate_words
from .contfrac import Word, check_even_word, format_word, rev_neg, reverse, sign_changes
from .knot import (
    KnotClass,
    braid_index,
    canonical_word,
    crossing_number,
    display_name,
    knot_from_word,
)

DEFAULT_SEARCH_BUDGET = 5_000_000


class MergeCancellation(ArithmeticError):
    """Adjacent boundary entries summed to zero during a zero-connector merge.

    Impossible for valid parameters; raising signals a caller bug.
    """


class AuditFailure(AssertionError):
    """An audit term came out negative or the terms missed the slack."""


class BudgetExceeded(RuntimeError):
    """Search node budget exhausted; ``partial`` holds witnesses found so far."""

    def __init__(self, message: str, partial: list["EpiWitness"]):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = DEFAULT_SEARCH_BUDGET


@dataclass(frozen=True)
class OrsParams:
    """Parameters of one interleaving: target expansion, r, signs, connectors."""

    target: Word
    r: int
    eps: tuple[int, ...]
    cvec: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "eps", tuple(self.eps))
        object.__setattr__(self, "cvec", tuple(self.cvec))
        check_even_word(self.target)
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if len(self.eps) != 2 * self.r + 1:
            raise ValueError(f"need {2 * self.r + 1} signs, got {len(self.eps)}")
        if any(e not in (1, -1) for e in self.eps):
            raise ValueError(f"signs must be +-1, got {self.eps}")
        if self.eps[0] != 1:
            raise ValueError("leading sign must be +1")
        if len(self.cvec) != 2 * self.r:
            raise ValueError(f"need {2 * self.r} connectors, got {len(self.cvec)}")
        for j, cj in enumerate(self.cvec):
            if cj == 0 and self.eps[j + 1] != self.eps[j]:
                raise ValueError(
                    f"connector {j + 1} is zero but adjacent signs differ: {self.eps}"
                )

    def to_json(self) -> dict:
        return {
            "target": format_word(self.target),
            "r": self.r,
            "eps": list(self.eps),
            "cvec": list(self.cvec),
        }


@dataclass(frozen=True)
class InequalityAudit:
    """Decomposition of braid(big) - 3 braid(target) + 4 into >= 0 terms."""

    term_copies: int     # (2r - 2) (braid(target) - 2)
    term_cbudget: int    # sum over c_j != 0 of |c_j| - 1
    term_zero: int       # 2r - #{c_j != 0}
    term_signs: int      # (2r+1) t(target) + 2 #{c_j != 0} - t(big)
    slack: int           # braid(big) - 3 braid(target) + 4

    @property
    def terms(self) -> tuple[int, int, int, int]:
        return (self.term_copies, self.term_cbudget, self.term_zero, self.term_signs)

    def to_json(self) -> dict:
        return {
            "term_copies": self.term_copies,
            "term_cbudget": self.term_cbudget,
            "term_zero": self.term_zero,
            "term_signs": self.term_signs,
            "slack": self.slack,
        }


@dataclass(frozen=True)
class EpiWitness:
    big: KnotClass
    small: KnotClass
    params: OrsParams
    audit: InequalityAudit

    def sort_key(self):
        return (
            self.small.canon,
            self.params.r,
            self.params.target,
            self.params.cvec,
            self.params.eps,
        )

    def to_json(self) -> dict:
        return {
            "big": self.big.to_json(),
            "small": self.small.to_json(),
            "params": self.params.to_json(),
            "audit": self.audit.to_json(),
        }


def ors_compose(params: OrsParams) -> Word:
    """Interleave the blocks and connectors; delete-and-merge zero connectors."""
    forward = params.target
    backward = reverse(forward)
    out = [params.eps[0] * e for e in forward]
    for j in range(2 * params.r):
        block = backward if j % 2 == 0 else forward
        sign = params.eps[j + 1]
        cj = params.cvec[j]
        if cj != 0:
            out.append(2 * cj)
            out.extend(sign * e for e in block)
        else:
            merged = out[-1] + sign * block[0]
            if merged == 0:
                raise MergeCancellation(
                    f"boundary entries cancelled while merging connector {j + 1}"
                )
            out[-1] = merged
            out.extend(sign * e for e in block[1:])
    return tuple(out)


def audit_params(params: OrsParams, composed: Word | None = None) -> InequalityAudit:
    """Compute and check the four-term decomposition for one composition."""
    if composed is None:
        composed = ors_compose(params)
    t_small = sign_changes(params.target)
    t_big = sign_changes(composed)
    braid_small = braid_index(params.target)
    braid_big = braid_index(composed)
    nonzero = sum(1 for cj in params.cvec if cj != 0)
    audit = InequalityAudit(
        term_copies=(2 * params.r - 2) * (braid_small - 2),
        term_cbudget=sum(abs(cj) - 1 for cj in params.cvec if cj != 0),
        term_zero=2 * params.r - nonzero,
        term_signs=(2 * params.r + 1) * t_small + 2 * nonzero - t_big,
        slack=braid_big - 3 * braid_small + 4,
    )
    if min(audit.terms) < 0:
        raise AuditFailure(f"negative audit term for {params}: {audit}")
    if sum(audit.terms) != audit.slack:
        raise AuditFailure(f"audit terms do not sum to the slack for {params}: {audit}")
    return audit


def audit_inequality(witness: EpiWitness) -> InequalityAudit:
    """Re-derive the audit of a witness from scratch and verify it."""
    composed = ors_compose(witness.params)
    if canonical_word(composed) != witness.big.canon:
        raise AuditFailure(f"witness does not recompose to its big knot: {witness}")
    return audit_params(witness.params, composed)


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


def _connector_vectors(slots: int, budget: int) -> Iterator[tuple[int, ...]]:
    """All connector tuples whose nonzero entries overshoot by at most ``budget``."""
    if slots == 0:
        yield ()
        return
    for value in range(-(budget + 1), budget + 2):
        cost = 0 if value == 0 else abs(value) - 1
        if cost <= budget:
            for rest in _connector_vectors(slots - 1, budget - cost):
                yield (value,) + rest


def _sign_assignments(cvec: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All sign vectors consistent with the zero-connector constraint."""
    free = [j for j, cj in enumerate(cvec) if cj != 0]
    for bits in product((1, -1), repeat=len(free)):
        eps = [1]
        chosen = iter(bits)
        for j, cj in enumerate(cvec):
            eps.append(eps[j] if cj == 0 else next(chosen))
        yield tuple(eps)


def _target_patterns(small: KnotClass) -> tuple[Word, ...]:
    # Both reduced even expansions of the target knot serve as the
    # repeating block; they are not interchangeable in the pattern.
    canon = small.canon
    other = rev_neg(canon)
    return (canon,) if canon == other else (canon, other)


class _NodeCounter:
    __slots__ = ("nodes", "limit")

    def __init__(self, budget: SearchBudget | None):
        self.nodes = 0
        self.limit = budget.max_nodes if budget is not None else None

    def tick(self) -> bool:
        self.nodes += 1
        return self.limit is not None and self.nodes > self.limit


def _search(
    big: KnotClass,
    candidates: Iterable[tuple[KnotClass, Word]],
    budget: SearchBudget | None,
    *,
    stop_at_first: bool = False,
) -> list[EpiWitness]:
    found: list[EpiWitness] = []
    counter = _NodeCounter(budget)
    for small, pattern in candidates:
        r = 1
        while (2 * r + 1) * small.crossing <= big.crossing:
            overshoot = (big.crossing - (2 * r + 1) * small.crossing) // 2
            for cvec in _connector_vectors(2 * r, overshoot):
                for eps in _sign_assignments(cvec):
                    if counter.tick():
                        raise BudgetExceeded(
                            f"search exceeded {counter.limit} nodes",
                            sorted(found, key=EpiWitness.sort_key),
                        )
                    params = OrsParams(pattern, r, eps, cvec)
                    composed = ors_compose(params)
                    if crossing_number(composed) != big.crossing:
                        continue
                    if canonical_word(composed) != big.canon:
                        continue
                    witness = EpiWitness(
                        big=big,
                        small=small,
                        params=params,
                        audit=audit_params(params, composed),
                    )
                    found.append(witness)
                    if stop_at_first:
                        return found
            r += 1
    return sorted(found, key=EpiWitness.sort_key)


def _target_candidates(big: KnotClass) -> Iterator[tuple[KnotClass, Word]]:
    # Proper targets only: the crossing number of an image is at most a
    # third of the big knot's, which also rules out self-targets.
    for c_small in range(3, big.crossing // 3 + 1):
        for word in enumerate_words(c_small):
            small = knot_from_word(word)
            for pattern in _target_patterns(small):
                yield small, pattern


def epi_targets(big: KnotClass, budget: SearchBudget | None = None) -> list[EpiWitness]:
    """Every witness of an epimorphism from ``big`` onto a smaller knot.

    Exhaustive within the crossing-number bounds; sorted for
    reproducible output.  Raises BudgetExceeded (with partial results)
    if the node budget runs out.
    """
    return _search(big, _target_candidates(big), budget)


def admits_epi(
    big: KnotClass, small: KnotClass, budget: SearchBudget | None = None
) -> EpiWitness | None:
    """First witness (in epi_targets order) mapping ``big`` onto ``small``.

    Proper targets only: returns None for small == big.
    """
    if small.canon == big.canon or 3 * small.crossing > big.crossing:
        return None
    candidates = [(small, pattern) for pattern in _target_patterns(small)]
    witnesses = _search(big, candidates, budget)
    return witnesses[0] if witnesses else None


def is_minimal(big: KnotClass, budget: SearchBudget | None = None) -> bool:
    """True iff the knot's group surjects onto no smaller knot group."""
    return not _search(big, _target_candidates(big), budget, stop_at_first=True)


# ---------------------------------------------------------------------------
# Digraph export
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EpiGraph:
    max_crossing: int
    nodes: tuple[KnotClass, ...]
    edges: tuple[tuple[KnotClass, KnotClass, tuple[EpiWitness, ...]], ...]


def epi_graph(max_crossing: int, budget: SearchBudget | None = None) -> EpiGraph:
    """Epimorphism digraph over all knots with crossing number <= max_crossing."""
    nodes = []
    for c in range(3, max_crossing + 1):
        for word in enumerate_words(c):
            nodes.append(knot_from_word(word))
    edges = []
    for big in nodes:
        witnesses = epi_targets(big, budget)
        by_small: dict[Word, list[EpiWitness]] = {}
        for witness in witnesses:
            by_small.setdefault(witness.small.canon, []).append(witness)
        for canon in sorted(by_small):
            group = by_small[canon]
            edges.append((big, group[0].small, tuple(group)))
    return EpiGraph(max_crossing=max_crossing, nodes=tuple(nodes), edges=tuple(edges))


def graph_to_dot(graph: EpiGraph) -> str:
    lines = ["digraph epimorphisms {"]
    for node in graph.nodes:
        word = format_word(node.canon)
        name = display_name(node)
        label = name if name == word else f"{name}\\n{word}"
        lines.append(f'  "{word}" [label="{label}"];')
    for big, small, witnesses in graph.edges:
        first = witnesses[0]
        label = f"r={first.params.r} c={list(first.params.cvec)} x{len(witnesses)}"
        lines.append(
            f'  "{format_word(big.canon)}" -> "{format_word(small.canon)}" [label="{label}"];'
        )
    lines.append("}")
    return "\n".join(lines)


def graph_to_json(graph: EpiGraph) -> str:
    payload = {
        "max_crossing": graph.max_crossing,
        "nodes": [
            {**node.to_json(), "name": display_name(node)} for node in graph.nodes
        ],
        "edges": [
            {
                "source": format_word(big.canon),
                "target": format_word(small.canon),
                "witnesses": [witness.to_json() for witness in witnesses],
            }
            for big, small, witnesses in graph.edges
        ],
    }
    return json.dumps(payload, indent=2)
