"""Design construction for the per-scorer mixed-effects analysis.

One observation per sentence.  Plausibility is dummy coded with
``plausible`` as the reference level, item type is dummy coded with the
animate-animate class as the reference, voice is sum coded (+1 active,
-1 passive), and all continuous predictors (role and average word log
frequencies, sentence length) are z-scored before fitting.  Random
effects: per-item intercept and per-item plausibility slope.

Two-pair datasets without the item-type and voice manipulations use the
simplified formula (plausibility plus the continuous covariates only).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .corpus_stats import FrequencyTable, log_frequency
from .dataset import PairTable, Sentence
from .stats import FitResult, fit_lmm_arrays

FULL_TERMS = (
    "intercept",
    "implausible",
    "type_AI",
    "type_control",
    "voice",
    "implausible:type_AI",
    "implausible:type_control",
    "implausible:voice",
    "voice:type_AI",
    "voice:type_control",
    "implausible:voice:type_AI",
    "implausible:voice:type_control",
    "agent_freq",
    "patient_freq",
    "verb_freq",
    "avg_word_freq",
    "length",
)

SIMPLE_TERMS = (
    "intercept",
    "implausible",
    "agent_freq",
    "patient_freq",
    "verb_freq",
    "avg_word_freq",
    "length",
)

SURFACE_TERMS = (
    "voice",
    "agent_freq",
    "patient_freq",
    "verb_freq",
    "avg_word_freq",
    "length",
    "voice:type_AI",
    "voice:type_control",
    "implausible:voice:type_AI",
    "implausible:voice:type_control",
)


@dataclass(frozen=True)
class RegressionSpec:
    """What to regress and how to code it."""

    scorer_id: str
    dataset: str
    length_unit: str = "words"  # 'tokens' for subword-scored sources
    diagonal_cov: bool = False


CONTINUOUS_TERMS = ("agent_freq", "patient_freq", "verb_freq",
                    "avg_word_freq", "length")


def _zscore(col: np.ndarray) -> np.ndarray:
    sd = col.std()
    if sd == 0:
        raise ValueError("constant continuous predictor; cannot z-score")
    return (col - col.mean()) / sd


def _phrase(sentence: Sentence, role: str) -> str:
    return " ".join(w.lower() for w in sentence.role_words(role))


def _sentence_length(sentence: Sentence, length_unit: str,
                     token_counts: Mapping[str, int] | None) -> float:
    if length_unit == "words":
        return float(len(sentence.words))
    if token_counts is None or sentence.sentence_id not in token_counts:
        raise ValueError(f"token count missing for sentence {sentence.sentence_id}")
    return float(token_counts[sentence.sentence_id])


def build_design(spec: RegressionSpec, table: PairTable,
                 norm_scores: Mapping[str, float], freqs: FrequencyTable,
                 token_counts: Mapping[str, int] | None = None):
    """Assemble (y, X, groups, Z, names) for the mixed-model fit."""
    full = spec.dataset == "D1"
    names = FULL_TERMS if full else SIMPLE_TERMS
    rows_y: list[float] = []
    rows_x: list[list[float]] = []
    groups: list[str] = []
    z_rows: list[list[float]] = []
    for item in table:
        if item.dataset != spec.dataset:
            raise ValueError(f"item {item.pair_id} is from {item.dataset}, "
                             f"spec wants {spec.dataset}")
        for sentence in (item.plausible, item.implausible):
            sid = sentence.sentence_id
            if sid not in norm_scores:
                raise ValueError(f"score missing for sentence {sid}")
            implaus = 1.0 if sentence.plausibility == "implausible" else 0.0
            agent_f = log_frequency(_phrase(sentence, "agent"), freqs)
            patient_f = log_frequency(_phrase(sentence, "patient"), freqs)
            verb_f = log_frequency(_phrase(sentence, "verb"), freqs)
            avg_f = float(np.mean([log_frequency(w.lower(), freqs)
                                   for w in sentence.words]))
            length = _sentence_length(sentence, spec.length_unit, token_counts)
            if full:
                ai = 1.0 if item.item_type == "AI" else 0.0
                ctrl = 1.0 if item.item_type == "AA_control" else 0.0
                voice = 1.0 if item.voice == "active" else -1.0
                row = [1.0, implaus, ai, ctrl, voice,
                       implaus * ai, implaus * ctrl, implaus * voice,
                       voice * ai, voice * ctrl,
                       implaus * voice * ai, implaus * voice * ctrl,
                       agent_f, patient_f, verb_f, avg_f, length]
            else:
                row = [1.0, implaus, agent_f, patient_f, verb_f, avg_f, length]
            rows_y.append(norm_scores[sid])
            rows_x.append(row)
            groups.append(item.pair_id)
            z_rows.append([1.0, implaus])
    y = np.asarray(rows_y)
    X = np.asarray(rows_x)
    Z = np.asarray(z_rows)
    # Constant columns carry no information: continuous predictors go
    # degenerate on fully templated sentence sets, and factor dummies go
    # all-zero when a level is absent.  Drop them rather than fail.
    keep = []
    kept_names = []
    for i, nm in enumerate(names):
        if nm != "intercept" and X[:, i].std() == 0:
            continue
        if nm in CONTINUOUS_TERMS:
            X[:, i] = _zscore(X[:, i])
        keep.append(i)
        kept_names.append(nm)
    return y, X[:, keep], groups, Z, kept_names


def fit_scorer_lmm(spec: RegressionSpec, table: PairTable,
                   norm_scores: Mapping[str, float], freqs: FrequencyTable,
                   token_counts: Mapping[str, int] | None = None) -> FitResult:
    """Fit the mixed model for one scorer over one dataset's sentences."""
    import dataclasses

    y, X, groups, Z, names = build_design(spec, table, norm_scores, freqs,
                                          token_counts)
    fit = fit_lmm_arrays(y, X, groups, Z, names,
                         diagonal_cov=spec.diagonal_cov)
    expected = FULL_TERMS if spec.dataset == "D1" else SIMPLE_TERMS
    dropped = sorted(set(expected) - set(names))
    if dropped:
        note = f"dropped constant predictors: {', '.join(dropped)}"
        combined = f"{fit.notes}; {note}" if fit.notes else note
        fit = dataclasses.replace(fit, notes=combined)
    return fit
