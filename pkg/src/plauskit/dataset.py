"""Minimal-pair sentence sets, human ratings, and score normalization.

The on-disk dataset format is UTF-8, tab-separated, one sentence per row:

    dataset  pair_id  item_type  voice  synonym_variant  plausibility
    sentence  agent_span  verb_span  patient_span

Spans are half-open 0-based whitespace-word ranges written ``start:end``
(``-`` if absent).  Ratings files carry one sentence per row:

    sentence_id  mean_rating  n_ratings  raw_ratings

with ``raw_ratings`` a comma-joined list of reals or ``-``.

For reversible control items both members describe plausible events; the
``plausibility`` column then records listing order (first member is filed
under ``plausible``) so downstream pairings stay well defined.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

DATASETS = ("D1", "D2", "D3")
ITEM_TYPES = ("AI", "AA", "AA_control", "NA")
VOICES = ("active", "passive", "NA")
SYNONYM_VARIANTS = ("1", "2", "NA")
PLAUSIBILITY = ("plausible", "implausible")
ROLES = ("agent", "verb", "patient")

DATASET_COLUMNS = (
    "dataset",
    "pair_id",
    "item_type",
    "voice",
    "synonym_variant",
    "plausibility",
    "sentence",
    "agent_span",
    "verb_span",
    "patient_span",
)

RATINGS_COLUMNS = ("sentence_id", "mean_rating", "n_ratings", "raw_ratings")

RATING_MIN = 1.0
RATING_MAX = 7.0
MIN_RATINGS_D1 = 18


class LoadError(ValueError):
    """Raised when a dataset or ratings file fails validation."""


def sentence_id(dataset: str, pair_id: str, plausibility: str, voice: str,
                synonym_variant: str) -> str:
    """Stable join key for one sentence, shared by all score files."""
    key = "|".join((dataset, pair_id, plausibility, voice, synonym_variant))
    return hashlib.sha1(key.encode("utf-8")).hexdigest()[:12]


def _parse_span(text: str, n_words: int, where: str) -> tuple[int, int] | None:
    if text == "-":
        return None
    try:
        start_s, end_s = text.split(":")
        start, end = int(start_s), int(end_s)
    except ValueError as exc:
        raise LoadError(f"{where}: malformed span {text!r}") from exc
    if not 0 <= start < end <= n_words:
        raise LoadError(f"{where}: span {text!r} outside sentence of {n_words} words")
    return start, end


@dataclass(frozen=True)
class Sentence:
    """One sentence row with its role spans and derived sentence id."""

    dataset: str
    pair_id: str
    item_type: str
    voice: str
    synonym_variant: str
    plausibility: str
    text: str
    spans: Mapping[str, tuple[int, int]]  # role -> half-open word range

    @property
    def sentence_id(self) -> str:
        return sentence_id(self.dataset, self.pair_id, self.plausibility,
                           self.voice, self.synonym_variant)

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(self.text.split())

    def role_words(self, role: str) -> tuple[str, ...]:
        span = self.spans.get(role)
        if span is None:
            raise KeyError(f"sentence {self.sentence_id} has no {role} span")
        return self.words[span[0]:span[1]]

    def role_head(self, role: str) -> str:
        """Head word of a role span (rightmost word, lowercased)."""
        return self.role_words(role)[-1].lower()


@dataclass(frozen=True)
class MinimalPairItem:
    """A plausible/implausible sentence pair at one voice and variant."""

    dataset: str
    pair_id: str
    item_type: str
    voice: str
    synonym_variant: str
    plausible: Sentence
    implausible: Sentence

    @property
    def key(self) -> tuple[str, str, str, str]:
        return (self.pair_id, self.voice, self.synonym_variant, self.dataset)


@dataclass(frozen=True)
class PairTable:
    """Immutable collection of minimal-pair items from one or more files."""

    items: tuple[MinimalPairItem, ...]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[MinimalPairItem]:
        return iter(self.items)

    def sentences(self) -> Iterator[Sentence]:
        for item in self.items:
            yield item.plausible
            yield item.implausible

    def pair_ids(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for item in self.items:
            seen.setdefault(item.pair_id)
        return tuple(seen)

    def item_counts(self) -> dict[str, int]:
        """Distinct pair_ids per item_type."""
        by_type: dict[str, set[str]] = {}
        for item in self.items:
            by_type.setdefault(item.item_type, set()).add(item.pair_id)
        return {t: len(ids) for t, ids in sorted(by_type.items())}

    def select(self, *, dataset: str | None = None,
               item_type: str | Sequence[str] | None = None,
               voice: str | Sequence[str] | None = None,
               synonym_variant: str | Sequence[str] | None = None) -> "PairTable":
        def wanted(value: str, crit: str | Sequence[str] | None) -> bool:
            if crit is None:
                return True
            if isinstance(crit, str):
                return value == crit
            return value in crit

        kept = tuple(
            item for item in self.items
            if wanted(item.dataset, dataset)
            and wanted(item.item_type, item_type)
            and wanted(item.voice, voice)
            and wanted(item.synonym_variant, synonym_variant)
        )
        return PairTable(kept)

    def headline(self, dataset: str | None = None) -> "PairTable":
        """One decision pair per item: active voice, first synonym variant."""
        table = self if dataset is None else self.select(dataset=dataset)
        return table.select(voice=("active", "NA"), synonym_variant=("1", "NA"))

    def write_tsv(self, path: str | Path) -> None:
        rows = []
        for item in sorted(self.items, key=lambda it: it.key):
            for sent in (item.plausible, item.implausible):
                rows.append(_sentence_row(sent))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\t".join(DATASET_COLUMNS) + "\n")
            for row in rows:
                fh.write("\t".join(row) + "\n")


def _sentence_row(sent: Sentence) -> tuple[str, ...]:
    def fmt(role: str) -> str:
        span = sent.spans.get(role)
        return "-" if span is None else f"{span[0]}:{span[1]}"

    return (sent.dataset, sent.pair_id, sent.item_type, sent.voice,
            sent.synonym_variant, sent.plausibility, sent.text,
            fmt("agent"), fmt("verb"), fmt("patient"))


def _validate_enum(value: str, allowed: tuple[str, ...], column: str, where: str) -> str:
    if value not in allowed:
        raise LoadError(f"{where}: {column} value {value!r} not in {allowed}")
    return value


def _spans_disjoint(spans: Mapping[str, tuple[int, int]]) -> bool:
    taken = sorted(spans.values())
    return all(a[1] <= b[0] for a, b in zip(taken, taken[1:]))


def _read_rows(path: str | Path) -> list[tuple[str, ...]]:
    path = Path(path)
    if not path.exists():
        raise LoadError(f"dataset file not found: {path}")
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise LoadError(f"{path}: empty file")
    header = tuple(lines[0].split("\t"))
    if header != DATASET_COLUMNS:
        raise LoadError(f"{path}: header {header} does not match {DATASET_COLUMNS}")
    rows = [tuple(line.split("\t")) for line in lines[1:] if line]
    if not rows:
        raise LoadError(f"{path}: no data rows")
    return rows


def _parse_sentence(row: tuple[str, ...], where: str) -> Sentence:
    if len(row) != len(DATASET_COLUMNS):
        raise LoadError(f"{where}: expected {len(DATASET_COLUMNS)} columns, got {len(row)}")
    rec = dict(zip(DATASET_COLUMNS, row))
    _validate_enum(rec["dataset"], DATASETS, "dataset", where)
    _validate_enum(rec["item_type"], ITEM_TYPES, "item_type", where)
    _validate_enum(rec["voice"], VOICES, "voice", where)
    _validate_enum(rec["synonym_variant"], SYNONYM_VARIANTS, "synonym_variant", where)
    _validate_enum(rec["plausibility"], PLAUSIBILITY, "plausibility", where)
    text = rec["sentence"]
    if not text.strip():
        raise LoadError(f"{where}: empty sentence text")
    n_words = len(text.split())
    spans = {}
    for role in ROLES:
        span = _parse_span(rec[f"{role}_span"], n_words, where)
        if span is not None:
            spans[role] = span
    if not _spans_disjoint(spans):
        raise LoadError(f"{where}: overlapping role spans")
    return Sentence(rec["dataset"], rec["pair_id"], rec["item_type"], rec["voice"],
                    rec["synonym_variant"], rec["plausibility"], text, spans)


def _check_pair_content(plaus: Sentence, implaus: Sentence, where: str) -> None:
    if plaus.text == implaus.text:
        raise LoadError(f"{where}: plausible and implausible texts are identical")
    if plaus.dataset in ("D1", "D3"):
        if sorted(plaus.words) != sorted(implaus.words):
            raise LoadError(
                f"{where}: word content differs between pair members "
                f"(expected a pure phrase swap)")
    elif plaus.dataset == "D2":
        p_span = plaus.spans.get("patient")
        i_span = implaus.spans.get("patient")
        if p_span is None or i_span is None:
            raise LoadError(f"{where}: D2 pair member lacks a patient span")
        if p_span[0] != i_span[0]:
            raise LoadError(f"{where}: D2 patient spans start at different positions")
        same_prefix = plaus.words[:p_span[0]] == implaus.words[:i_span[0]]
        same_suffix = plaus.words[p_span[1]:] == implaus.words[i_span[1]:]
        if not (same_prefix and same_suffix):
            raise LoadError(f"{where}: D2 pair differs outside the patient phrase")


def load_dataset(path: str | Path, dataset: str | None = None) -> PairTable:
    """Load and validate a sentence-pair file.

    Raises LoadError on schema violations, out-of-vocabulary enum values,
    orphan pair members, or content violating the dataset's pairing rules;
    the message names the offending row or pair_id.
    """
    rows = _read_rows(path)
    sentences = []
    for lineno, row in enumerate(rows, start=2):
        sent = _parse_sentence(row, where=f"{path}:{lineno}")
        if dataset is not None and sent.dataset != dataset:
            raise LoadError(f"{path}:{lineno}: expected dataset {dataset}, got {sent.dataset}")
        sentences.append(sent)

    groups: dict[tuple[str, str, str, str], dict[str, Sentence]] = {}
    for sent in sentences:
        key = (sent.dataset, sent.pair_id, sent.voice, sent.synonym_variant)
        slot = groups.setdefault(key, {})
        if sent.plausibility in slot:
            raise LoadError(f"{path}: duplicate {sent.plausibility} member for pair "
                            f"{sent.pair_id} ({sent.voice}, variant {sent.synonym_variant})")
        slot[sent.plausibility] = sent

    orphans = sorted({key[1] for key, slot in groups.items() if len(slot) != 2})
    if orphans:
        raise LoadError(f"{path}: pair members without a partner: {', '.join(orphans)}")

    items = []
    for key in sorted(groups):
        slot = groups[key]
        plaus, implaus = slot["plausible"], slot["implausible"]
        if plaus.item_type != implaus.item_type:
            raise LoadError(f"{path}: item_type mismatch within pair {key[1]}")
        _check_pair_content(plaus, implaus, where=f"{path} pair {key[1]}")
        items.append(MinimalPairItem(plaus.dataset, plaus.pair_id, plaus.item_type,
                                     plaus.voice, plaus.synonym_variant, plaus, implaus))
    return PairTable(tuple(items))


@dataclass(frozen=True)
class Rating:
    """Aggregated human judgment for one sentence."""

    sentence_id: str
    mean_rating: float
    n_ratings: int
    raw_ratings: tuple[float, ...] | None = None


def load_ratings(path: str | Path) -> dict[str, Rating]:
    """Load a ratings file keyed by sentence_id."""
    path = Path(path)
    if not path.exists():
        raise LoadError(f"ratings file not found: {path}")
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or tuple(lines[0].split("\t")) != RATINGS_COLUMNS:
        raise LoadError(f"{path}: header does not match {RATINGS_COLUMNS}")
    out: dict[str, Rating] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise LoadError(f"{path}:{lineno}: expected 4 columns")
        sid, mean_s, n_s, raw_s = parts
        if sid in out:
            raise LoadError(f"{path}:{lineno}: duplicate sentence_id {sid}")
        try:
            mean = float(mean_s)
            n = int(n_s)
        except ValueError as exc:
            raise LoadError(f"{path}:{lineno}: malformed numeric field") from exc
        if not RATING_MIN <= mean <= RATING_MAX:
            raise LoadError(f"{path}:{lineno}: mean_rating {mean} outside "
                            f"[{RATING_MIN}, {RATING_MAX}]")
        if n < 1:
            raise LoadError(f"{path}:{lineno}: n_ratings must be >= 1")
        raw: tuple[float, ...] | None = None
        if raw_s != "-":
            raw = tuple(float(v) for v in raw_s.split(","))
            if len(raw) != n:
                raise LoadError(f"{path}:{lineno}: n_ratings={n} but {len(raw)} raw values")
            if any(not RATING_MIN <= v <= RATING_MAX for v in raw):
                raise LoadError(f"{path}:{lineno}: raw rating outside scale")
            if not math.isclose(mean, sum(raw) / len(raw), abs_tol=1e-6):
                raise LoadError(f"{path}:{lineno}: mean_rating does not match raw mean")
        out[sid] = Rating(sid, mean, n, raw)
    if not out:
        raise LoadError(f"{path}: no ratings")
    return out


def validate_ratings_for(table: PairTable, ratings: Mapping[str, Rating]) -> None:
    """Check coverage and per-dataset rating-count rules for a pair table."""
    missing = [s.sentence_id for s in table.sentences() if s.sentence_id not in ratings]
    if missing:
        raise LoadError(f"ratings missing for {len(missing)} sentences, "
                        f"first: {missing[0]}")
    for sent in table.sentences():
        if sent.dataset == "D1" and ratings[sent.sentence_id].n_ratings < MIN_RATINGS_D1:
            raise LoadError(f"sentence {sent.sentence_id}: D1 requires at least "
                            f"{MIN_RATINGS_D1} ratings")


@dataclass(frozen=True)
class NormalizedScore:
    """Per-sentence score on the canonical higher-is-more-plausible scale."""

    sentence_id: str
    scorer_id: str
    value: float


def normalize_scores(scores: Iterable[tuple[str, float]], mode: str = "minmax",
                     scorer_id: str = "") -> list[NormalizedScore]:
    """Rescale raw sentence scores over the given normalization population.

    ``minmax`` maps the population min to 0 and max to 1; ``zscore``
    centers to mean 0 and population sd 1.  Inputs must already be on the
    canonical orientation (surprisal-type scores negated at ingestion).
    """
    pairs = list(scores)
    if len(pairs) < 2:
        raise ValueError("normalization needs at least 2 scores")
    values = [v for _, v in pairs]
    if mode == "minmax":
        lo, hi = min(values), max(values)
        if hi == lo:
            raise ValueError("minmax normalization undefined for constant scores (zero range)")
        scale = hi - lo
        return [NormalizedScore(sid, scorer_id, (v - lo) / scale) for sid, v in pairs]
    if mode == "zscore":
        mean = sum(values) / len(values)
        var = sum((v - mean) ** 2 for v in values) / len(values)
        if var == 0.0:
            raise ValueError("zscore normalization undefined for constant scores")
        sd = math.sqrt(var)
        return [NormalizedScore(sid, scorer_id, (v - mean) / sd) for sid, v in pairs]
    raise ValueError(f"unknown normalization mode {mode!r}")


def mean_pair_difference(norm_scores: Mapping[str, float],
                         items: Iterable[MinimalPairItem]) -> tuple[float, float]:
    """Mean and sample sd of (plausible - implausible) scores across pairs."""
    diffs = []
    for item in items:
        try:
            p = norm_scores[item.plausible.sentence_id]
            i = norm_scores[item.implausible.sentence_id]
        except KeyError as exc:
            raise ValueError(f"missing score for pair {item.pair_id}: {exc}") from exc
        diffs.append(p - i)
    if not diffs:
        raise ValueError("mean_pair_difference over an empty selection")
    mean = sum(diffs) / len(diffs)
    if len(diffs) == 1:
        return mean, 0.0
    var = sum((d - mean) ** 2 for d in diffs) / (len(diffs) - 1)
    return mean, math.sqrt(var)


def scores_by_id(norm_scores: Iterable[NormalizedScore]) -> dict[str, float]:
    return {ns.sentence_id: ns.value for ns in norm_scores}
