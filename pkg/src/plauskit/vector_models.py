"""Thematic-fit prototypes and the structured event-graph score.

Both scorers combine a static word-embedding table with association
statistics from syntactic triples.  Association strength uses Local Mutual
Information (observed count times unclipped PMI); candidate rankings break
ties lexicographically so every result is deterministic given the inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus_stats import OBJ, SUBJ, TripleCounts
from .dataset import Sentence
from .scoring import SentenceScore

ROLE_SLOTS = {"agent": SUBJ, "patient": OBJ}


class VectorSpace:
    """Fixed-dimension word-embedding table with explicit-failure lookups."""

    def __init__(self, vectors: Mapping[str, np.ndarray]):
        if not vectors:
            raise ValueError("empty vector space")
        dims = {len(v) for v in vectors.values()}
        if len(dims) != 1:
            raise ValueError(f"inconsistent vector dimensions: {sorted(dims)}")
        self.dim = dims.pop()
        self._vectors = {w: np.asarray(v, dtype=float) for w, v in vectors.items()}

    def __contains__(self, word: str) -> bool:
        return word in self._vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def __getitem__(self, word: str) -> np.ndarray:
        try:
            return self._vectors[word]
        except KeyError:
            raise KeyError(f"word {word!r} not in vector space") from None

    @classmethod
    def load_text(cls, path: str | Path) -> "VectorSpace":
        """Load the usual static-embedding text format: 'count dim' header."""
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().split()
            if len(header) != 2:
                raise ValueError(f"{path}: expected 'count dim' header")
            count, dim = int(header[0]), int(header[1])
            vectors: dict[str, np.ndarray] = {}
            for lineno, line in enumerate(fh, start=2):
                parts = line.rstrip("\n").split(" ")
                if len(parts) != dim + 1:
                    raise ValueError(f"{path}:{lineno}: expected word + {dim} values")
                word = parts[0]
                if word in vectors:
                    raise ValueError(f"{path}:{lineno}: duplicate word {word!r}")
                vectors[word] = np.array([float(x) for x in parts[1:]])
        if len(vectors) != count:
            raise ValueError(f"{path}: header says {count} words, found {len(vectors)}")
        return cls(vectors)

    def save_text(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"{len(self._vectors)} {self.dim}\n")
            for word in sorted(self._vectors):
                values = " ".join(repr(float(x)) for x in self._vectors[word])
                fh.write(f"{word} {values}\n")


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine undefined for a zero vector")
    return float(np.dot(u, v) / (nu * nv))


def lmi(tc: TripleCounts, head: str, dependent: str, role: str) -> float:
    """Local Mutual Information: observed count times unclipped PMI."""
    f = tc.count(head, dependent, role)
    if f == 0:
        return 0.0
    f1 = tc.head_marginal(head, role)
    f2 = tc.dep_marginal(dependent, role)
    return f * math.log((f * tc.total) / (f1 * f2))


def _ranked_fillers(tc: TripleCounts, item: str, role: str,
                    limit: int | None = None) -> list[tuple[str, float]]:
    scored = [(filler, lmi(tc, item, filler, role))
              for filler, _ in tc.fillers(item, role)]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored if limit is None else scored[:limit]


class EventGraph:
    """Association store: (context item, role) -> ranked (filler, weight)."""

    def __init__(self, edges: Mapping[tuple[str, str], Sequence[tuple[str, float]]]):
        self._edges = {key: tuple(vals) for key, vals in edges.items()}
        for key, vals in self._edges.items():
            weights = [w for _, w in vals]
            if any(not math.isfinite(w) for w in weights):
                raise ValueError(f"non-finite weight under {key}")
            if weights != sorted(weights, reverse=True):
                raise ValueError(f"fillers under {key} not sorted by weight")

    @classmethod
    def from_counts(cls, tc: TripleCounts) -> "EventGraph":
        keys = {(h, r) for (h, _, r) in tc.counts}
        return cls({key: _ranked_fillers(tc, *key) for key in sorted(keys)})

    def query(self, item: str, role: str, limit: int | None = None) -> list[tuple[str, float]]:
        vals = list(self._edges.get((item, role), ()))
        return vals if limit is None else vals[:limit]

    def save_tsv(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("context_item\trole\tfiller\tweight\trank\n")
            for (item, role) in sorted(self._edges):
                for rank, (filler, weight) in enumerate(self._edges[(item, role)], start=1):
                    fh.write(f"{item}\t{role}\t{filler}\t{weight!r}\t{rank}\n")

    @classmethod
    def load_tsv(cls, path: str | Path) -> "EventGraph":
        edges: dict[tuple[str, str], list[tuple[str, float]]] = {}
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n").split("\t")
            if header != ["context_item", "role", "filler", "weight", "rank"]:
                raise ValueError(f"{path}: unexpected header {header}")
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                item, role, filler, weight, _rank = line.split("\t")
                edges.setdefault((item, role), []).append((filler, float(weight)))
        return cls(edges)


@dataclass(frozen=True)
class PrototypeVector:
    role: str
    vector: np.ndarray
    support: tuple[str, ...]


def patient_prototype(verb: str, subject: str, tc: TripleCounts, vs: VectorSpace,
                      k_retrieve: int = 200, k_top: int = 20) -> PrototypeVector:
    """Centroid of the object-slot entities most associated with the event.

    Retrieves the top ``k_retrieve`` object fillers for verb and subject,
    intersects them, ranks by the product of the two association weights,
    and averages the embeddings of the top ``k_top`` survivors.  An empty
    intersection falls back to the verb's own fillers.
    """
    verb_ranked = _ranked_fillers(tc, verb, OBJ, k_retrieve)
    if not verb_ranked:
        raise ValueError(f"verb {verb!r} has no object-slot fillers in the triple table")
    subj_ranked = _ranked_fillers(tc, subject, OBJ, k_retrieve)
    verb_scores = dict(verb_ranked)
    subj_scores = dict(subj_ranked)
    shared = sorted(set(verb_scores) & set(subj_scores))
    if shared:
        candidates = [(e, verb_scores[e] * subj_scores[e]) for e in shared]
    else:
        candidates = verb_ranked
    candidates = sorted(candidates, key=lambda pair: (-pair[1], pair[0]))[:k_top]
    support = tuple(e for e, _ in candidates if e in vs)
    if not support:
        raise ValueError(f"no retained entity for ({verb!r}, {subject!r}) has a vector")
    centroid = np.mean([vs[e] for e in support], axis=0)
    return PrototypeVector("patient", centroid, support)


def thematic_fit_score(sentence: Sentence, tc: TripleCounts, vs: VectorSpace,
                       k_retrieve: int = 200, k_top: int = 20) -> SentenceScore:
    """Cosine of the patient's embedding with its event prototype."""
    patient = sentence.role_head("patient")
    if patient not in vs:
        raise KeyError(f"patient {patient!r} not in vector space")
    proto = patient_prototype(sentence.role_head("verb"), sentence.role_head("agent"),
                              tc, vs, k_retrieve, k_top)
    return SentenceScore(sentence.sentence_id, "thematic-fit", "sentence_ll",
                         cosine(vs[patient], proto.vector))


@dataclass(frozen=True)
class RoleFit:
    """Per-role breakdown of the two-tier score."""

    role: str
    filler: str
    lc_cosine: float
    ac_cosine: float | None  # None when the graph returned no fillers

    @property
    def value(self) -> float:
        if self.ac_cosine is None:
            return self.lc_cosine
        return (self.lc_cosine + self.ac_cosine) / 2.0


def sdm_components(sentence: Sentence, deg: EventGraph, vs: VectorSpace,
                   k_ac: int = 20) -> list[RoleFit]:
    heads = {role: sentence.role_head(role) for role in ("agent", "verb", "patient")}
    fits = []
    for role in ("agent", "patient"):
        filler = heads[role]
        if filler not in vs:
            raise KeyError(f"{role} filler {filler!r} not in vector space")
        context = [heads[r] for r in ("agent", "verb", "patient") if r != role]
        missing = [w for w in context if w not in vs]
        if missing:
            raise KeyError(f"context items {missing} not in vector space")
        lc = np.sum([vs[w] for w in context], axis=0)

        weights: dict[str, float] = {}
        for item in context:
            for cand, w in deg.query(item, ROLE_SLOTS[role]):
                weights[cand] = weights.get(cand, 0.0) + w
        ranked = sorted(weights.items(), key=lambda pair: (-pair[1], pair[0]))[:k_ac]
        ac_support = [cand for cand, _ in ranked if cand in vs]
        ac_cos = None
        if ac_support:
            ac = np.mean([vs[c] for c in ac_support], axis=0)
            ac_cos = cosine(vs[filler], ac)
        fits.append(RoleFit(role, filler, cosine(vs[filler], lc), ac_cos))
    return fits


def sdm_score(sentence: Sentence, deg: EventGraph, vs: VectorSpace,
              k_ac: int = 20) -> SentenceScore:
    """Sum over agent and patient of the mean context/prototype cosines."""
    fits = sdm_components(sentence, deg, vs, k_ac)
    return SentenceScore(sentence.sentence_id, "sdm", "sentence_ll",
                         sum(fit.value for fit in fits))
