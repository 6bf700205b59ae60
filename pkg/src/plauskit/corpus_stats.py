"""Sparse syntactic-triple counts, PPMI scoring, and word frequencies.

Triples are ``(head, dependent, role)`` with ``role`` naming the syntactic
slot the dependent fills relative to the head (``subj``/``obj`` for the
scoring paths here, arbitrary labels allowed).  Counting is shard-mergeable:
tallies accumulate raw counts and the minimum-frequency cutoff is applied
only when a tally is finalized, so counting shards and merging equals
counting the concatenated stream exactly.

Sentence scoring maps semantic roles to logical syntax before lookup
(agent -> subj, patient -> obj), so passives score identically to their
active counterparts.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .dataset import Sentence
from .scoring import SentenceScore

Triple = tuple[str, str, str]

SUBJ = "subj"
OBJ = "obj"

SNAPSHOT_HEADER = "#plauskit-triples\tv1"


def tally(stream: Iterable[Triple | tuple[str, str, str, int]]) -> Counter:
    """Accumulate raw triple counts from (head, dependent, role[, count])."""
    counts: Counter = Counter()
    for entry in stream:
        if len(entry) == 4:
            head, dep, role, n = entry  # type: ignore[misc]
            counts[(head, dep, role)] += int(n)
        else:
            counts[tuple(entry)] += 1  # type: ignore[arg-type]
    return counts


def merge_tallies(*tallies: Counter) -> Counter:
    merged: Counter = Counter()
    for t in tallies:
        merged.update(t)
    return merged


@dataclass(frozen=True)
class TripleCounts:
    """Finalized triple table with marginals over the retained triples."""

    counts: Mapping[Triple, int]
    head_role: Mapping[tuple[str, str], int]
    dep_role: Mapping[tuple[str, str], int]
    total: int
    min_freq: int

    @classmethod
    def from_tally(cls, raw: Counter, min_freq: int = 2) -> "TripleCounts":
        counts = {t: n for t, n in raw.items() if n >= min_freq}
        head_role: dict[tuple[str, str], int] = {}
        dep_role: dict[tuple[str, str], int] = {}
        total = 0
        for (h, d, r), n in counts.items():
            head_role[(h, r)] = head_role.get((h, r), 0) + n
            dep_role[(d, r)] = dep_role.get((d, r), 0) + n
            total += n
        return cls(counts, head_role, dep_role, total, min_freq)

    @property
    def vocabulary_size(self) -> int:
        """Number of distinct retained triples."""
        return len(self.counts)

    def count(self, head: str, dependent: str, role: str) -> int:
        return self.counts.get((head, dependent, role), 0)

    def head_marginal(self, head: str, role: str) -> int:
        return self.head_role.get((head, role), 0)

    def dep_marginal(self, dependent: str, role: str) -> int:
        return self.dep_role.get((dependent, role), 0)

    def fillers(self, head: str, role: str) -> list[tuple[str, int]]:
        """All (dependent, count) entries observed under (head, role)."""
        return [(d, n) for (h, d, r), n in self.counts.items()
                if h == head and r == role]


def count_triples(stream: Iterable[Triple | tuple[str, str, str, int]],
                  min_freq: int = 2) -> TripleCounts:
    return TripleCounts.from_tally(tally(stream), min_freq)


def ppmi(tc: TripleCounts, head: str, dependent: str, role: str,
         laplace: int = 1) -> float:
    """Positive PMI of a triple against its role-marked marginals.

    Laplace smoothing adds ``laplace`` to each of the three counts entering
    the ratio; the total is adjusted to N + laplace * V with V the number
    of distinct retained triples.  Association at or below independence
    clips to 0.
    """
    joint = tc.count(head, dependent, role) + laplace
    h_marg = tc.head_marginal(head, role) + laplace
    d_marg = tc.dep_marginal(dependent, role) + laplace
    n = tc.total + laplace * tc.vocabulary_size
    if n <= 0:
        return 0.0
    value = math.log((joint * n) / (h_marg * d_marg))
    return max(0.0, value)


def score_sentence_ppmi(sentence: Sentence, tc: TripleCounts,
                        laplace: int = 1) -> SentenceScore:
    """Verb-subject PPMI plus verb-object PPMI, on logical roles."""
    verb = sentence.role_head("verb")
    agent = sentence.role_head("agent")
    patient = sentence.role_head("patient")
    value = (ppmi(tc, verb, agent, SUBJ, laplace)
             + ppmi(tc, verb, patient, OBJ, laplace))
    return SentenceScore(sentence.sentence_id, "syntax-ppmi", "sentence_ll", value)


def read_triple_stream(path: str | Path) -> Iterator[tuple[str, str, str, int]]:
    """Read a TSV triple stream: head, dependent, role, optional count."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) == 3:
                yield parts[0], parts[1], parts[2], 1
            elif len(parts) == 4:
                try:
                    yield parts[0], parts[1], parts[2], int(parts[3])
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: bad count field") from exc
            else:
                raise ValueError(f"{path}:{lineno}: expected 3 or 4 columns")


def save_snapshot(tc: TripleCounts, path: str | Path) -> None:
    """Persist retained triples; marginals are recomputed exactly on load."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{SNAPSHOT_HEADER}\tmin_freq={tc.min_freq}\n")
        for (h, d, r) in sorted(tc.counts):
            fh.write(f"{h}\t{d}\t{r}\t{tc.counts[(h, d, r)]}\n")


def load_snapshot(path: str | Path) -> TripleCounts:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        parts = header.split("\t")
        if parts[:2] != list(SNAPSHOT_HEADER.split("\t")) or not parts[2].startswith("min_freq="):
            raise ValueError(f"{path}: not a triple-count snapshot")
        min_freq = int(parts[2].split("=", 1)[1])
        raw: Counter = Counter()
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            h, d, r, n = line.split("\t")
            raw[(h, d, r)] = int(n)
    # Counts were already filtered at save time; min_freq=1 keeps them as-is.
    tc = TripleCounts.from_tally(raw, min_freq=1)
    return TripleCounts(tc.counts, tc.head_role, tc.dep_role, tc.total, min_freq)


@dataclass(frozen=True)
class FrequencyTable:
    """Word/phrase occurrence counts from a reference corpus."""

    counts: Mapping[str, int]
    source: str = ""

    def count(self, term: str) -> int:
        return self.counts.get(term, 0)


def load_frequency_table(path: str | Path, source: str = "") -> FrequencyTable:
    counts: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            try:
                term, n = line.split("\t")
                counts[term] = int(n)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: expected 'term<TAB>count'") from exc
            if counts[term] < 0:
                raise ValueError(f"{path}:{lineno}: negative count")
    return FrequencyTable(counts, source or str(path))


def log_frequency(term: str, ft: FrequencyTable) -> float:
    """Laplace-smoothed log occurrence count.

    Multi-word terms missing a phrase entry fall back to the mean of the
    per-word log frequencies.
    """
    if term in ft.counts or " " not in term:
        return math.log(ft.count(term) + 1)
    words = term.split()
    return math.fsum(math.log(ft.count(w) + 1) for w in words) / len(words)
