"""Linear probes over sentence embeddings with pair-preserving folds.

Probes are L2-regularized logistic classifiers (penalty strength 1.0 on
the weights, intercept unpenalized, features used as-is) trained to the
convex optimum with an analytic-gradient quasi-Newton minimizer, so every
fit is deterministic.  Cross-validation folds partition sentence *pairs*,
never sentences, so the two versions of an item always share a fold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np
from scipy import optimize

SUMMARY_TOKENS = ("cls", "final")
RATING_CLASSES = ("impossible", "unlikely", "plausible")


@dataclass(frozen=True)
class EmbeddingRecord:
    """One layer's summary-token representation of one sentence."""

    sentence_id: str
    scorer_id: str
    layer: int
    summary_token: str
    vector: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.layer < 0:
            raise ValueError("layer must be >= 0")
        if self.summary_token not in SUMMARY_TOKENS:
            raise ValueError(f"unknown summary token {self.summary_token!r}")


def write_embeddings(records: Iterable[EmbeddingRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps({
                "sentence_id": rec.sentence_id, "scorer_id": rec.scorer_id,
                "layer": rec.layer, "summary_token": rec.summary_token,
                "vector": list(rec.vector),
            }) + "\n")


def read_embeddings(path: str | Path) -> Iterator[EmbeddingRecord]:
    dims: dict[tuple[str, int], int] = {}
    summaries: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            raw = json.loads(line)
            rec = EmbeddingRecord(raw["sentence_id"], raw["scorer_id"],
                                  int(raw["layer"]), raw["summary_token"],
                                  tuple(float(x) for x in raw["vector"]))
            key = (rec.scorer_id, rec.layer)
            if dims.setdefault(key, len(rec.vector)) != len(rec.vector):
                raise ValueError(f"{path}:{lineno}: inconsistent dimension for {key}")
            if summaries.setdefault(rec.scorer_id, rec.summary_token) != rec.summary_token:
                raise ValueError(f"{path}:{lineno}: mixed summary tokens for "
                                 f"{rec.scorer_id!r}")
            yield rec


def pair_preserving_folds(pair_ids: Sequence[str], k: int = 10,
                          seed: int = 0) -> tuple[tuple[str, ...], ...]:
    """Partition pairs into k folds whose sizes differ by at most one."""
    unique = list(dict.fromkeys(pair_ids))
    if k < 2:
        raise ValueError("need at least 2 folds")
    if k > len(unique):
        raise ValueError(f"cannot make {k} folds from {len(unique)} pairs")
    rng = np.random.default_rng(seed)
    order = [unique[i] for i in rng.permutation(len(unique))]
    base, rem = divmod(len(order), k)
    folds = []
    start = 0
    for i in range(k):
        size = base + (1 if i < rem else 0)
        folds.append(tuple(order[start:start + size]))
        start += size
    return tuple(folds)


# ---------------------------------------------------------------------------
# Classifier cores
# ---------------------------------------------------------------------------

def _fit_binary_logistic(X: np.ndarray, y: np.ndarray, l2: float = 1.0
                         ) -> tuple[np.ndarray, float]:
    """Minimize sum log-loss + l2/2 * ||w||^2; returns (w, b)."""
    n, d = X.shape
    signs = np.where(y > 0, 1.0, -1.0)

    def objective(params):
        w, b = params[:d], params[d]
        margins = signs * (X @ w + b)
        # log(1 + exp(-m)) computed stably
        loss = np.logaddexp(0.0, -margins).sum() + 0.5 * l2 * float(w @ w)
        s = -signs / (1.0 + np.exp(margins))
        grad_w = X.T @ s + l2 * w
        grad_b = s.sum()
        return loss, np.concatenate([grad_w, [grad_b]])

    res = optimize.minimize(objective, np.zeros(d + 1), jac=True, method="L-BFGS-B",
                            options={"maxiter": 1000, "ftol": 1e-14, "gtol": 1e-10})
    return res.x[:d], float(res.x[d])


def _fit_multinomial_logistic(X: np.ndarray, y: np.ndarray, n_classes: int,
                              class_weights: np.ndarray, l2: float = 1.0
                              ) -> tuple[np.ndarray, np.ndarray]:
    """Weighted softmax regression; returns (W of shape (K, d), b of shape (K,))."""
    n, d = X.shape
    K = n_classes
    onehot = np.zeros((n, K))
    onehot[np.arange(n), y] = 1.0
    sample_w = class_weights[y]

    def objective(params):
        W = params[:K * d].reshape(K, d)
        b = params[K * d:]
        scores = X @ W.T + b
        scores -= scores.max(axis=1, keepdims=True)
        logz = np.log(np.exp(scores).sum(axis=1))
        loglik = (scores[np.arange(n), y] - logz)
        loss = -(sample_w * loglik).sum() + 0.5 * l2 * float((W * W).sum())
        probs = np.exp(scores - logz[:, None])
        delta = (probs - onehot) * sample_w[:, None]
        grad_W = delta.T @ X + l2 * W
        grad_b = delta.sum(axis=0)
        return loss, np.concatenate([grad_W.ravel(), grad_b])

    res = optimize.minimize(objective, np.zeros(K * d + K), jac=True,
                            method="L-BFGS-B",
                            options={"maxiter": 2000, "ftol": 1e-14, "gtol": 1e-10})
    W = res.x[:K * d].reshape(K, d)
    return W, res.x[K * d:]


# ---------------------------------------------------------------------------
# Probe reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProbeReport:
    train_condition: str
    test_condition: str
    layer: int
    fold_accuracies: tuple[float, ...]
    ceiling: float | None = None

    def __post_init__(self) -> None:
        if any(not 0.0 <= a <= 1.0 for a in self.fold_accuracies):
            raise ValueError("fold accuracies must lie in [0, 1]")

    @property
    def mean_accuracy(self) -> float:
        return float(np.mean(self.fold_accuracies))


def _check_rows(X: np.ndarray, y: np.ndarray, row_pairs: Sequence[str]) -> None:
    if X.ndim != 2 or len(y) != X.shape[0] or len(row_pairs) != X.shape[0]:
        raise ValueError("X rows, labels, and pair ids must align")


def _fold_accuracy(X, y, train_rows, test_rows, l2):
    y_train = y[train_rows]
    if len(np.unique(y_train)) < 2:
        raise ValueError("training split contains a single class")
    w, b = _fit_binary_logistic(X[train_rows], y_train, l2)
    pred = (X[test_rows] @ w + b > 0).astype(int)
    return float((pred == y[test_rows]).mean())


def train_probe(X: np.ndarray, y: np.ndarray, row_pairs: Sequence[str],
                folds: Sequence[Sequence[str]], *, layer: int = 0,
                condition: str = "all", l2: float = 1.0,
                ceiling: float | None = None) -> ProbeReport:
    """Cross-validated binary probe accuracy over pair-preserving folds."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    _check_rows(X, y, row_pairs)
    pair_arr = np.asarray(row_pairs)
    accs = []
    for fold in folds:
        in_fold = np.isin(pair_arr, list(fold))
        test_rows = np.flatnonzero(in_fold)
        train_rows = np.flatnonzero(~in_fold)
        if len(test_rows) == 0:
            raise ValueError("fold has no test rows")
        accs.append(_fold_accuracy(X, y, train_rows, test_rows, l2))
    return ProbeReport(condition, condition, layer, tuple(accs), ceiling)


def ceiling_probe(mean_ratings: Sequence[float], y: np.ndarray,
                  row_pairs: Sequence[str], folds: Sequence[Sequence[str]], *,
                  condition: str = "all", l2: float = 1.0) -> ProbeReport:
    """The same probe pipeline on the 1-d human-rating feature."""
    X = np.asarray(mean_ratings, dtype=float).reshape(-1, 1)
    return train_probe(X, y, row_pairs, folds, layer=0, condition=condition, l2=l2)


def generalization_probe(X: np.ndarray, y: np.ndarray, row_pairs: Sequence[str],
                         memberships: Mapping[str, np.ndarray], train_cond: str,
                         test_cond: str, *, k: int = 10, seed: int = 0,
                         layer: int = 0, l2: float = 1.0,
                         ceiling: float | None = None) -> ProbeReport:
    """Train on one condition, test on another, without fold leakage.

    When the two conditions coincide this reduces exactly to ``train_probe``
    on that condition's rows.  Otherwise folds are computed on the union of
    both conditions' pairs so no pair straddles the train/test boundary.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    _check_rows(X, y, row_pairs)
    for cond in (train_cond, test_cond):
        if cond not in memberships:
            raise ValueError(f"unknown condition {cond!r}")
        if not bool(np.any(memberships[cond])):
            raise ValueError(f"condition {cond!r} selects no rows")
    pair_arr = np.asarray(row_pairs)
    if train_cond == test_cond:
        rows = np.flatnonzero(memberships[train_cond])
        folds = pair_preserving_folds([row_pairs[i] for i in rows], k, seed)
        report = train_probe(X[rows], y[rows], pair_arr[rows], folds,
                             layer=layer, condition=train_cond, l2=l2,
                             ceiling=ceiling)
        return report
    union = memberships[train_cond] | memberships[test_cond]
    union_rows = np.flatnonzero(union)
    folds = pair_preserving_folds([row_pairs[i] for i in union_rows], k, seed)
    accs = []
    for fold in folds:
        in_fold = np.isin(pair_arr, list(fold))
        train_rows = np.flatnonzero(~in_fold & memberships[train_cond])
        test_rows = np.flatnonzero(in_fold & memberships[test_cond])
        if len(test_rows) == 0:
            raise ValueError("fold has no test rows in the test condition")
        accs.append(_fold_accuracy(X, y, train_rows, test_rows, l2))
    return ProbeReport(train_cond, test_cond, layer, tuple(accs), ceiling)


def rating_class(mean_rating: float) -> str:
    """Three-way label from a rounded mean judgment on the 1-7 scale."""
    rounded = int(np.rint(mean_rating))
    if rounded <= 2:
        return "impossible"
    if rounded <= 5:
        return "unlikely"
    return "plausible"


def multiclass_probe(X: np.ndarray, mean_ratings: Sequence[float],
                     row_pairs: Sequence[str], folds: Sequence[Sequence[str]], *,
                     layer: int = 0, condition: str = "all",
                     l2: float = 1.0) -> ProbeReport:
    """Three-class probe on rating-derived labels with balanced class weights."""
    X = np.asarray(X, dtype=float)
    labels = np.array([RATING_CLASSES.index(rating_class(r)) for r in mean_ratings])
    _check_rows(X, labels, row_pairs)
    pair_arr = np.asarray(row_pairs)
    K = len(RATING_CLASSES)
    accs = []
    for fold in folds:
        in_fold = np.isin(pair_arr, list(fold))
        train_rows = np.flatnonzero(~in_fold)
        test_rows = np.flatnonzero(in_fold)
        y_train = labels[train_rows]
        counts = np.bincount(y_train, minlength=K)
        empty = [RATING_CLASSES[i] for i in range(K) if counts[i] == 0]
        if empty:
            raise ValueError(f"training split lacks class(es): {', '.join(empty)}")
        weights = len(y_train) / (K * counts.astype(float))
        W, b = _fit_multinomial_logistic(X[train_rows], y_train, K, weights, l2)
        pred = np.argmax(X[test_rows] @ W.T + b, axis=1)
        accs.append(float((pred == labels[test_rows]).mean()))
    return ProbeReport(condition, condition, layer, tuple(accs))


def write_probe_reports(reports: Iterable[ProbeReport], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("train\ttest\tlayer\tfold\taccuracy\n")
        for rep in reports:
            for fold, acc in enumerate(rep.fold_accuracies):
                fh.write(f"{rep.train_condition}\t{rep.test_condition}\t"
                         f"{rep.layer}\t{fold}\t{acc!r}\n")


def write_probe_summary(reports: Iterable[ProbeReport], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("train\ttest\tlayer\tmean_accuracy\tceiling\n")
        for rep in reports:
            ceiling = "" if rep.ceiling is None else repr(rep.ceiling)
            fh.write(f"{rep.train_condition}\t{rep.test_condition}\t"
                     f"{rep.layer}\t{rep.mean_accuracy!r}\t{ceiling}\n")
