"""Census of two-bridge knots by crossing number.

Enumeration side: every reduced even word with crossing number c is
reached exactly once through the parameterization (m, ell, signs,
magnitudes): half-length m, sign-change count ell (same parity as c),
a sign vector with exactly ell changes, and a composition of
(c + ell) / 2 into 2m positive halved magnitudes.  A word is emitted
iff it is the canonical representative of its class, so no seen-set is
needed and memory stays O(1) per word.

Formula side: closed forms for the number of knots TK(c) (and TK*(c)
up to mirror), the total sign change TS(c) / TS*(c), the per-class
counts N(c, ell), and the average braid index and genus.  Every
division is checked for zero remainder; a nonzero remainder means a
transcription bug, never a rounding choice.

The two sides are developed independently and must agree exactly; the
test suite treats the enumeration as the oracle for the formulas.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .contfrac import Word, format_fraction

DEFAULT_ENUM_CEILING = 22


class ResourceBound(RuntimeError):
    """Requested enumeration above the configured crossing ceiling."""


class NonIntegralFormula(ArithmeticError):
    """A closed-form division left a remainder (transcription bug)."""


def exact_div(numerator: int, denominator: int) -> int:
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise NonIntegralFormula(f"{numerator} is not divisible by {denominator}")
    return quotient


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Positive integer compositions of ``total`` into ``parts`` parts."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cuts in combinations(range(1, total), parts - 1):
        previous = 0
        out = []
        for cut in cuts:
            out.append(cut - previous)
            previous = cut
        out.append(total - previous)
        yield tuple(out)


def _sign_vectors(length: int, changes: int) -> Iterator[tuple[int, ...]]:
    """All +-1 vectors of given length with exactly ``changes`` sign changes."""
    for lead in (1, -1):
        for gaps in combinations(range(length - 1), changes):
            gapset = frozenset(gaps)
            out = [lead]
            current = lead
            for i in range(length - 1):
                if i in gapset:
                    current = -current
                out.append(current)
            yield tuple(out)


def _ell_values(c: int, m: int) -> range:
    """Admissible sign-change counts for crossing number c at half-length m."""
    low = 0 if c % 2 == 0 else 1
    low = max(low, 4 * m - c)
    if low % 2 != c % 2:
        low += 1
    return range(low, 2 * m, 2)


def _partitions(c: int, ell: int | None = None) -> Iterator[tuple[int, int]]:
    for m in range(1, (c - 1) // 2 + 1):
        for ell_value in _ell_values(c, m):
            if ell is None or ell_value == ell:
                yield m, ell_value


def _raw_words(c: int, *, ell: int | None = None) -> Iterator[Word]:
    """Every reduced even word with crossing number c, each exactly once."""
    for m, ell_value in _partitions(c, ell):
        total = (c + ell_value) // 2
        for signs in _sign_vectors(2 * m, ell_value):
            for parts in _compositions(total, 2 * m):
                yield tuple(s * 2 * n for s, n in zip(signs, parts))


def enumerate_words(c: int, *, ell: int | None = None) -> Iterator[Word]:
    """Canonical class representatives with crossing number c, one per knot.

    Deterministic order; a word is emitted iff it is <= its
    reverse-negation, so each class appears exactly once with no
    global storage.  Optional ``ell`` restricts to one sign-change count.
    """
    if c < 3:
        raise ValueError(f"crossing number must be >= 3, got {c}")
    for word in _raw_words(c, ell=ell):
        if word <= tuple(-x for x in reversed(word)):
            yield word


def is_mirror_representative(word: Word) -> bool:
    """True iff this class-canonical word also represents its mirror pair.

    The mirror knot's class is canonicalized by min(negate, reverse);
    keeping only words at most that quotients the census by mirror
    image, with equality covering the amphichiral case.
    """
    negated = tuple(-x for x in word)
    reversed_ = word[::-1]
    return word <= min(negated, reversed_)


def _count_partition(task: tuple[int, int, int]) -> tuple[int, int, int, int]:
    """Count canonical (and mirror-canonical) words in one (m, ell) slice."""
    c, m, ell = task
    total = (c + ell) // 2
    count = 0
    star = 0
    for signs in _sign_vectors(2 * m, ell):
        for parts in _compositions(total, 2 * m):
            word = tuple(s * 2 * n for s, n in zip(signs, parts))
            if word > tuple(-x for x in reversed(word)):
                continue
            count += 1
            if is_mirror_representative(word):
                star += 1
    return m, ell, count, star


# ---------------------------------------------------------------------------
# Aggregates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignClassCount:
    c: int
    ell: int
    count: int


@dataclass(frozen=True)
class CensusRow:
    c: int
    tk: int
    ts: int
    tk_star: int
    ts_star: int
    avg_braid: Fraction
    avg_braid_star: Fraction
    avg_genus: Fraction
    by_ell: tuple[SignClassCount, ...]


def _assemble_row(
    c: int,
    by_ell: dict[int, int],
    by_ell_star: dict[int, int],
    genus_total: int,
) -> CensusRow:
    tk = sum(by_ell.values())
    ts = sum(ell * n for ell, n in by_ell.items())
    tk_star = sum(by_ell_star.values())
    ts_star = sum(ell * n for ell, n in by_ell_star.items())
    return CensusRow(
        c=c,
        tk=tk,
        ts=ts,
        tk_star=tk_star,
        ts_star=ts_star,
        avg_braid=Fraction(c, 2) + 1 - Fraction(ts, 2 * tk),
        avg_braid_star=Fraction(c, 2) + 1 - Fraction(ts_star, 2 * tk_star),
        avg_genus=Fraction(genus_total, tk),
        by_ell=tuple(
            SignClassCount(c, ell, by_ell[ell]) for ell in sorted(by_ell)
        ),
    )


def brute_counts(
    c: int, *, ceiling: int = DEFAULT_ENUM_CEILING, workers: int = 1
) -> CensusRow:
    """All census aggregates for crossing number c by direct enumeration.

    The (m, ell) slices are independent, so with workers > 1 they are
    counted in parallel; totals are merged by integer addition and the
    result is identical regardless of scheduling.
    """
    if c < 3:
        raise ValueError(f"crossing number must be >= 3, got {c}")
    if c > ceiling:
        raise ResourceBound(f"c={c} exceeds the enumeration ceiling {ceiling}")
    tasks = [(c, m, ell) for m, ell in _partitions(c)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_count_partition, tasks))
    else:
        results = [_count_partition(task) for task in tasks]
    by_ell: dict[int, int] = {}
    by_ell_star: dict[int, int] = {}
    genus_total = 0
    for m, ell, count, star in results:
        by_ell[ell] = by_ell.get(ell, 0) + count
        by_ell_star[ell] = by_ell_star.get(ell, 0) + star
        genus_total += m * count
    return _assemble_row(c, by_ell, by_ell_star, genus_total)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def closed_tk(c: int) -> int:
    """Number of two-bridge knots with c crossings (chiral pairs distinct)."""
    if c < 3:
        raise ValueError(f"crossing number must be >= 3, got {c}")
    if c % 2 == 0:
        return exact_div(2 ** (c - 2) - 1, 3)
    if c % 4 == 1:
        return exact_div(2 ** (c - 2) + 2 ** ((c - 1) // 2), 3)
    return exact_div(2 ** (c - 2) + 2 ** ((c - 1) // 2) + 2, 3)


def closed_tk_star(c: int) -> int:
    """Number of two-bridge knots with c crossings, up to mirror image."""
    if c < 3:
        raise ValueError(f"crossing number must be >= 3, got {c}")
    if c % 4 == 0:
        return exact_div(2 ** (c - 3) + 2 ** ((c - 4) // 2), 3)
    if c % 4 == 1:
        return exact_div(2 ** (c - 3) + 2 ** ((c - 3) // 2), 3)
    if c % 4 == 2:
        return exact_div(2 ** (c - 3) + 2 ** ((c - 4) // 2) - 1, 3)
    return exact_div(2 ** (c - 3) + 2 ** ((c - 3) // 2) + 1, 3)


def closed_ts(c: int) -> int:
    """Total sign change over all two-bridge knots with c crossings."""
    if c < 3:
        raise ValueError(f"crossing number must be >= 3, got {c}")
    if c % 2 == 0:
        numerator = (3 * c - 4) * 2 ** (c - 2) - 15 * c + 28
    elif c % 4 == 1:
        numerator = (3 * c - 4) * 2 ** (c - 2) + (3 * c + 4) * 2 ** ((c - 1) // 2) + 18 * c - 38
    else:
        numerator = (3 * c - 4) * 2 ** (c - 2) + (3 * c + 4) * 2 ** ((c - 1) // 2) + 12 * c - 18
    return exact_div(numerator, 27)


def closed_ts_star(c: int) -> int:
    """Total sign change up to mirror image."""
    if c < 3:
        raise ValueError(f"crossing number must be >= 3, got {c}")
    if c % 4 == 0:
        numerator = (3 * c - 4) * 2 ** (c - 2) + (3 * c - 8) * 2 ** ((c - 2) // 2) - 18 * c + 32
    elif c % 4 == 1:
        numerator = (3 * c - 4) * 2 ** (c - 2) + (3 * c + 4) * 2 ** ((c - 1) // 2) + 18 * c - 38
    elif c % 4 == 2:
        numerator = (3 * c - 4) * 2 ** (c - 2) + (3 * c - 8) * 2 ** ((c - 2) // 2) - 12 * c + 24
    else:
        numerator = (3 * c - 4) * 2 ** (c - 2) + (3 * c + 4) * 2 ** ((c - 1) // 2) + 12 * c - 18
    return exact_div(numerator, 54)


def closed_n(c: int, ell: int) -> int:
    """Number of c-crossing knots whose word has exactly ell sign changes.

    Zero whenever the parity or range constraints fail (ell must match
    c mod 2; ell <= c - 4 for even c, ell <= c - 2 for odd c).
    """
    if c < 3 or ell < 0 or (c - ell) % 2:
        return 0
    if c % 2 == 0:
        k, l = c // 2, ell // 2
        if l > k - 2:
            return 0
        return comb(k + l - 1, 2 * l) * sum(
            comb(k - l - 1, 2 * m - 2 * l - 1) for m in range(l + 1, (k + l) // 2 + 1)
        )
    k, l = (c - 1) // 2, (ell - 1) // 2
    if l > k - 1:
        return 0
    value = comb(k + l, 2 * l + 1) * sum(
        comb(k - l - 1, 2 * m - 2 * l - 2) for m in range(l + 1, (k + l + 1) // 2 + 1)
    )
    if (k + l + 1) % 2 == 0:
        value += comb((k + l - 1) // 2, l) * sum(
            comb((k - l - 1) // 2, m - l - 1) for m in range(l + 1, (k + l + 1) // 2 + 1)
        )
    return value


def closed_avg_braid(c: int) -> Fraction:
    """Average braid index over all two-bridge knots with c crossings."""
    base = Fraction(3 * c + 11, 9)
    if c % 2 == 0:
        return base + Fraction(2 * c - 4, 3 * (2 ** (c - 2) - 1))
    if c % 4 == 1:
        return base - Fraction(
            2 ** ((c + 3) // 2) + 9 * c - 19, 9 * (2 ** (c - 2) + 2 ** ((c - 1) // 2))
        )
    return base - Fraction(
        2 ** ((c + 3) // 2) + 3 * c - 5, 9 * (2 ** (c - 2) + 2 ** ((c - 1) // 2) + 2)
    )


def closed_avg_braid_star(c: int) -> Fraction:
    """Average braid index up to mirror image."""
    base = Fraction(3 * c + 11, 9)
    if c % 4 == 0:
        return base + Fraction(
            2 ** (c // 2) + 9 * c - 16, 9 * (2 ** (c - 2) + 2 ** ((c - 2) // 2))
        )
    if c % 4 == 1:
        return closed_avg_braid(c)
    if c % 4 == 2:
        return base + Fraction(
            2 ** (c // 2) + 3 * c - 8, 9 * (2 ** (c - 2) + 2 ** ((c - 2) // 2) - 2)
        )
    return closed_avg_braid(c)


def closed_avg_genus(c: int) -> Fraction:
    """Average genus over all two-bridge knots with c crossings."""
    base = Fraction(3 * c + 1, 12)
    if c % 2 == 0:
        return base + Fraction(c - 5, 2 ** c - 4)
    if c % 4 == 1:
        return base + Fraction(1, 3 * 2 ** ((c - 3) // 2))
    return base + Fraction(
        2 ** ((c + 1) // 2) - 3 * c + 11, 12 * (2 ** (c - 3) + 2 ** ((c - 3) // 2) + 1)
    )


def closed_row(c: int) -> CensusRow:
    """CensusRow assembled purely from the closed forms (no enumeration)."""
    ell_max = c - 4 if c % 2 == 0 else c - 2
    by_ell = tuple(
        SignClassCount(c, ell, closed_n(c, ell))
        for ell in range(0 if c % 2 == 0 else 1, ell_max + 1, 2)
    )
    return CensusRow(
        c=c,
        tk=closed_tk(c),
        ts=closed_ts(c),
        tk_star=closed_tk_star(c),
        ts_star=closed_ts_star(c),
        avg_braid=closed_avg_braid(c),
        avg_braid_star=closed_avg_braid_star(c),
        avg_genus=closed_avg_genus(c),
        by_ell=by_ell,
    )


# ---------------------------------------------------------------------------
# Reference values and verification
# ---------------------------------------------------------------------------

# Reference census for c = 3..15: (TK, TS, avg braid, TK*, TS*, avg braid*),
# starred columns counted up to mirror image.  Used by `census --verify`
# as a regression fixture alongside the closed forms.
TABLE2_REFERENCE: dict[int, tuple[int, int, Fraction, int, int, Fraction]] = {
    3: (2, 2, Fraction(2), 1, 1, Fraction(2)),
    4: (1, 0, Fraction(3), 1, 0, Fraction(3)),
    5: (4, 8, Fraction(5, 2), 2, 4, Fraction(5, 2)),
    6: (5, 6, Fraction(17, 5), 3, 4, Fraction(10, 3)),
    7: (14, 30, Fraction(24, 7), 7, 15, Fraction(24, 7)),
    8: (21, 44, Fraction(83, 21), 12, 24, Fraction(4)),
    9: (48, 132, Fraction(33, 8), 24, 66, Fraction(33, 8)),
    10: (85, 242, Fraction(389, 85), 45, 128, Fraction(206, 45)),
    11: (182, 598, Fraction(34, 7), 91, 299, Fraction(34, 7)),
    12: (341, 1208, Fraction(1783, 341), 176, 620, Fraction(461, 88)),
    13: (704, 2764, Fraction(1949, 352), 352, 1382, Fraction(1949, 352)),
    14: (1365, 5758, Fraction(8041, 1365), 693, 2920, Fraction(4084, 693)),
    15: (2774, 12678, Fraction(8620, 1387), 1387, 6339, Fraction(8620, 1387)),
}


def verify_row(c: int, row: CensusRow | None = None, *, workers: int = 1) -> list[str]:
    """Mismatch descriptions between enumeration, formulas, and reference.

    Empty list = everything agrees exactly.
    """
    if row is None:
        row = brute_counts(c, workers=workers)
    problems = []

    def expect(label: str, got, want) -> None:
        if got != want:
            problems.append(f"c={c} {label}: enumerated {got} != expected {want}")

    expect("TK", row.tk, closed_tk(c))
    expect("TS", row.ts, closed_ts(c))
    expect("TK*", row.tk_star, closed_tk_star(c))
    expect("TS*", row.ts_star, closed_ts_star(c))
    expect("avg braid", row.avg_braid, closed_avg_braid(c))
    expect("avg braid*", row.avg_braid_star, closed_avg_braid_star(c))
    expect("avg genus", row.avg_genus, closed_avg_genus(c))
    for entry in row.by_ell:
        expect(f"N(ell={entry.ell})", entry.count, closed_n(c, entry.ell))
    reference = TABLE2_REFERENCE.get(c)
    if reference is not None:
        got = (row.tk, row.ts, row.avg_braid, row.tk_star, row.ts_star, row.avg_braid_star)
        if got != reference:
            problems.append(f"c={c} reference row mismatch: {got} != {reference}")
    return problems


# ---------------------------------------------------------------------------
# Binomial-sum identities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    statement: str
    max_param: int
    passed: bool
    counterexample: tuple | None


def _scan(name, statement, max_param, cases) -> IdentityCheck:
    for params, lhs, rhs in cases:
        if lhs != rhs:
            return IdentityCheck(name, statement, max_param, False, (params, lhs, rhs))
    return IdentityCheck(name, statement, max_param, True, None)


def verify_identities(n_max: int) -> list[IdentityCheck]:
    """Exact big-integer verification of the binomial-sum identities.

    Each sum is evaluated term by term and compared to its closed form
    for every parameter up to ``n_max``; failures are reported with the
    first counterexample, never raised.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    ns = range(1, n_max + 1)
    checks = [
        _scan(
            "weighted-count-a",
            "sum_{q=0}^{n-1} 2^q C(2n-1-q, q) == (4^n - 1) / 3",
            n_max,
            (
                (
                    (n,),
                    sum(2**q * comb(2 * n - 1 - q, q) for q in range(n)),
                    exact_div(4**n - 1, 3),
                )
                for n in ns
            ),
        ),
        _scan(
            "weighted-count-b",
            "sum_{q=0}^{n} 2^q C(2n-q, q) == (2*4^n + 1) / 3",
            n_max,
            (
                (
                    (n,),
                    sum(2**q * comb(2 * n - q, q) for q in range(n + 1)),
                    exact_div(2 * 4**n + 1, 3),
                )
                for n in ns
            ),
        ),
        _scan(
            "weighted-moment-a",
            "sum_{q=0}^{n-1} q 2^q C(2n-1-q, q) == 2((3n-2) 4^n - 6n + 2) / 27",
            n_max,
            (
                (
                    (n,),
                    sum(q * 2**q * comb(2 * n - 1 - q, q) for q in range(n)),
                    exact_div(2 * ((3 * n - 2) * 4**n - 6 * n + 2), 27),
                )
                for n in ns
            ),
        ),
        _scan(
            "weighted-moment-b",
            "sum_{q=0}^{n} q 2^q C(2n-q, q) == 2((6n-1) 4^n + 6n + 1) / 27",
            n_max,
            (
                (
                    (n,),
                    sum(q * 2**q * comb(2 * n - q, q) for q in range(n + 1)),
                    exact_div(2 * ((6 * n - 1) * 4**n + 6 * n + 1), 27),
                )
                for n in ns
            ),
        ),
        _scan(
            "odd-slice-partial-sum",
            "sum_{m=l+1}^{floor((k+l)/2)} C(k-l-1, 2m-2l-1) == 2^(k-l-2)  (0 <= l <= k-2)",
            n_max,
            (
                (
                    (k, l),
                    sum(comb(k - l - 1, 2 * m - 2 * l - 1) for m in range(l + 1, (k + l) // 2 + 1)),
                    2 ** (k - l - 2),
                )
                for k in range(2, n_max + 1)
                for l in range(0, k - 1)
            ),
        ),
        _scan(
            "even-slice-partial-sum",
            "sum_{m=l+1}^{floor((k+l+1)/2)} C(k-l-1, 2m-2l-2) == 2^(k-l-2), plus 1/2 when l = k-1",
            n_max,
            (
                (
                    (k, l),
                    Fraction(
                        sum(
                            comb(k - l - 1, 2 * m - 2 * l - 2)
                            for m in range(l + 1, (k + l + 1) // 2 + 1)
                        )
                    ),
                    Fraction(2) ** (k - l - 2) + (Fraction(1, 2) if l == k - 1 else 0),
                )
                for k in range(1, n_max + 1)
                for l in range(0, k)
            ),
        ),
        _scan(
            "halved-slice-partial-sum",
            "sum_{m=l+1}^{floor((k+l+1)/2)} C((k-l-1)/2, m-l-1) == 2^((k-l-1)/2)  (k+l+1 even)",
            n_max,
            (
                (
                    (k, l),
                    sum(
                        comb((k - l - 1) // 2, m - l - 1)
                        for m in range(l + 1, (k + l + 1) // 2 + 1)
                    ),
                    2 ** ((k - l - 1) // 2),
                )
                for k in range(1, n_max + 1)
                for l in range(0, k)
                if (k + l + 1) % 2 == 0
            ),
        ),
    ]
    return checks


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

_COLUMNS = ("c", "TK", "TS", "avg braid", "TK*", "TS*", "avg braid*")


def _row_cells(row: CensusRow, fmt=format_fraction) -> tuple[str, ...]:
    return (
        str(row.c),
        str(row.tk),
        str(row.ts),
        fmt(row.avg_braid),
        str(row.tk_star),
        str(row.ts_star),
        fmt(row.avg_braid_star),
    )


def rows_to_markdown(rows: Sequence[CensusRow], fmt=format_fraction) -> str:
    lines = [
        "| " + " | ".join(_COLUMNS) + " |",
        "|" + "|".join("---" for _ in _COLUMNS) + "|",
    ]
    for row in rows:
        lines.append("| " + " | ".join(_row_cells(row, fmt)) + " |")
    return "\n".join(lines)


def rows_to_csv(rows: Sequence[CensusRow], fmt=format_fraction) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_COLUMNS)
    for row in rows:
        writer.writerow(_row_cells(row, fmt))
    return buffer.getvalue().rstrip("\n")


def rows_to_json(rows: Sequence[CensusRow]) -> str:
    payload = [
        {
            "c": row.c,
            "tk": row.tk,
            "ts": row.ts,
            "tk_star": row.tk_star,
            "ts_star": row.ts_star,
            "avg_braid": format_fraction(row.avg_braid),
            "avg_braid_star": format_fraction(row.avg_braid_star),
            "avg_genus": format_fraction(row.avg_genus),
            "by_ell": {str(entry.ell): entry.count for entry in row.by_ell},
        }
        for row in rows
    ]
    return json.dumps(payload, indent=2)
