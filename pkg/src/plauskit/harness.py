"""Config-driven runs: ingestion, scoring, evaluation, regression, probing.

A run is driven by a declarative INI config (sections of key=value pairs,
any key overridable from the command line) and writes all artifacts into a
run-scoped output directory.  Every artifact starts with a comment line
carrying the config hash and seed, and a manifest records the full set, so
repeated runs with the same inputs are byte-identical and traceable.
"""

from __future__ import annotations

import configparser
import dataclasses
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import corpus_stats, probes, scoring, stats, vector_models
from .dataset import (PairTable, Rating, load_dataset,
                      load_ratings, mean_pair_difference, normalize_scores,
                      scores_by_id, validate_ratings_for)
from .regression import RegressionSpec, fit_scorer_lmm

HUMAN = "human"
RESULT_COLUMNS = ("analysis", "scorer", "statistic", "value", "p", "p_fdr", "n", "notes")


class HarnessError(RuntimeError):
    """A run-level failure with a single-line, user-facing message."""


@dataclass(frozen=True)
class RunConfig:
    path: Path
    seed: int
    output_dir: Path
    datasets: Mapping[str, Path]
    ratings: Mapping[str, Path]
    frequency_table: Path | None
    triples: Path | None
    vectors: Path | None
    scorers: Mapping[str, Path]
    token_counts: Mapping[str, Path]
    embeddings: Mapping[str, Path]
    categories: Mapping[str, str]
    normalization: str
    folds: int
    config_hash: str

    def category(self, scorer: str) -> str:
        if scorer == HUMAN:
            return "human"
        return self.categories.get(scorer, "model")


def load_config(path: str | Path, overrides: Sequence[str] = (),
                out: str | None = None, seed: int | None = None) -> RunConfig:
    path = Path(path)
    if not path.exists():
        raise HarnessError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    parser.read(path, encoding="utf-8")
    for item in overrides:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise HarnessError(f"override must look like section.key=value: {item!r}")
        key, value = item.split("=", 1)
        section, option = key.split(".", 1)
        if not parser.has_section(section):
            parser.add_section(section)
        parser.set(section, option, value)
    if out is not None:
        parser.setdefault("run", {})
        parser.set("run", "output_dir", out)
    if seed is not None:
        parser.set("run", "seed", str(seed))

    canonical = []
    for section in sorted(parser.sections()):
        for option in sorted(parser.options(section)):
            if (section, option) == ("run", "output_dir"):
                continue  # where results land does not change what they are
            canonical.append(f"{section}.{option}={parser.get(section, option)}")
    config_hash = hashlib.sha256("\n".join(canonical).encode("utf-8")).hexdigest()[:12]

    base = path.parent

    def resolve(value: str) -> Path:
        p = Path(value)
        return p if p.is_absolute() else (base / p)

    def section_paths(name: str) -> dict[str, Path]:
        if not parser.has_section(name):
            return {}
        return {k: resolve(v) for k, v in parser.items(name)}

    run = parser["run"] if parser.has_section("run") else {}
    datasets = section_paths("datasets")
    if not datasets:
        raise HarnessError("config has no [datasets] section")
    optional = section_paths("resources")
    return RunConfig(
        path=path,
        seed=int(run.get("seed", "0")),
        output_dir=resolve(run.get("output_dir", "runs/out")),
        datasets={k.upper(): v for k, v in datasets.items()},
        ratings={k.upper(): v for k, v in section_paths("ratings").items()},
        frequency_table=optional.get("frequency_table"),
        triples=optional.get("triples"),
        vectors=optional.get("vectors"),
        scorers=section_paths("scorers"),
        token_counts=section_paths("token_counts"),
        embeddings=section_paths("embeddings"),
        categories=dict(parser.items("categories")) if parser.has_section("categories") else {},
        normalization=(parser.get("analysis", "normalization", fallback="minmax")),
        folds=int(parser.get("analysis", "folds", fallback="10")),
        config_hash=config_hash,
    )


def _artifact_header(config: RunConfig) -> str:
    return f"# plauskit\tconfig={config.config_hash}\tseed={config.seed}\n"


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def _write_table(config: RunConfig, path: Path, columns: Sequence[str],
                 rows: Iterable[Sequence], sep: str = "\t") -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_artifact_header(config))
        fh.write(sep.join(columns) + "\n")
        for row in rows:
            fh.write(sep.join(_fmt(v) for v in row) + "\n")
    return path


# ---------------------------------------------------------------------------
# Input loading
# ---------------------------------------------------------------------------

@dataclass
class RunInputs:
    tables: dict[str, PairTable]
    ratings: dict[str, dict[str, Rating]]
    norm_scores: dict[tuple[str, str], dict[str, float]]  # (scorer, dataset) -> scores
    frequency: corpus_stats.FrequencyTable | None
    token_counts: dict[str, dict[str, int]]


def validate_inputs(config: RunConfig) -> RunInputs:
    """Load and validate everything the config references."""
    for label, p in [("dataset", v) for v in config.datasets.values()] + \
                    [("ratings", v) for v in config.ratings.values()] + \
                    [("scores", v) for v in config.scorers.values()] + \
                    [("embeddings", v) for v in config.embeddings.values()] + \
                    [("token records", v) for v in config.token_counts.values()]:
        if not p.exists():
            raise HarnessError(f"{label} file missing: {p}")
    for p in (config.frequency_table, config.triples, config.vectors):
        if p is not None and not p.exists():
            raise HarnessError(f"resource file missing: {p}")

    tables = {name: load_dataset(path, dataset=name)
              for name, path in sorted(config.datasets.items())}
    ratings = {}
    for name, path in sorted(config.ratings.items()):
        if name not in tables:
            raise HarnessError(f"ratings configured for unknown dataset {name}")
        ratings[name] = load_ratings(path)
        validate_ratings_for(tables[name], ratings[name])

    norm: dict[tuple[str, str], dict[str, float]] = {}
    for name, table in tables.items():
        if name not in ratings:
            continue
        raw = [(s.sentence_id, ratings[name][s.sentence_id].mean_rating)
               for s in table.sentences()]
        norm[(HUMAN, name)] = scores_by_id(
            normalize_scores(raw, config.normalization, scorer_id=HUMAN))

    for scorer, path in sorted(config.scorers.items()):
        by_id = {}
        for score in scoring.read_scores(path):
            by_id[score.sentence_id] = score.value
        for name, table in tables.items():
            ids = [s.sentence_id for s in table.sentences()]
            present = [i for i in ids if i in by_id]
            if not present:
                continue
            if len(present) != len(ids):
                raise HarnessError(f"scorer {scorer!r} covers only {len(present)}/"
                                   f"{len(ids)} sentences of {name}")
            norm[(scorer, name)] = scores_by_id(
                normalize_scores([(i, by_id[i]) for i in ids],
                                 config.normalization, scorer_id=scorer))

    frequency = None
    if config.frequency_table is not None:
        frequency = corpus_stats.load_frequency_table(config.frequency_table)

    token_counts = {}
    for scorer, path in sorted(config.token_counts.items()):
        token_counts[scorer] = {rec.sentence_id: len(rec.tokens)
                                for rec in scoring.read_records(path)}
    return RunInputs(tables, ratings, norm, frequency, token_counts)


# ---------------------------------------------------------------------------
# Native baseline scoring
# ---------------------------------------------------------------------------

def run_score(config: RunConfig, inputs: RunInputs) -> list[Path]:
    """Score all sentences with the native corpus baselines."""
    if config.triples is None:
        raise HarnessError("scoring needs resources.triples in the config")
    tc = corpus_stats.count_triples(corpus_stats.read_triple_stream(config.triples))
    out_dir = config.output_dir / "scores"
    out_dir.mkdir(parents=True, exist_ok=True)
    artifacts = []

    def all_sentences():
        for name in sorted(inputs.tables):
            yield from inputs.tables[name].sentences()

    ppmi_scores = [corpus_stats.score_sentence_ppmi(s, tc) for s in all_sentences()]
    path = out_dir / "syntax-ppmi.jsonl"
    scoring.write_scores(ppmi_scores, path)
    artifacts.append(path)

    if config.vectors is not None:
        vs = vector_models.VectorSpace.load_text(config.vectors)
        deg = vector_models.EventGraph.from_counts(tc)
        tf_scores = [vector_models.thematic_fit_score(s, tc, vs)
                     for s in all_sentences()]
        path = out_dir / "thematic-fit.jsonl"
        scoring.write_scores(tf_scores, path)
        artifacts.append(path)
        sdm_scores = [vector_models.sdm_score(s, deg, vs) for s in all_sentences()]
        path = out_dir / "sdm.jsonl"
        scoring.write_scores(sdm_scores, path)
        artifacts.append(path)
    return artifacts


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _segments(name: str, table: PairTable) -> list[tuple[str, PairTable]]:
    if name == "D1":
        head = table.headline()
        return [("AI", head.select(item_type="AI")),
                ("AA", head.select(item_type="AA"))]
    return [("all", table.headline())]


def _decisions(norm: Mapping[str, float], segment: PairTable, scorer: str):
    decisions = []
    for item in segment:
        plaus = scoring.SentenceScore(item.plausible.sentence_id, scorer,
                                      "sentence_ll", norm[item.plausible.sentence_id])
        implaus = scoring.SentenceScore(item.implausible.sentence_id, scorer,
                                        "sentence_ll", norm[item.implausible.sentence_id])
        decisions.append(scoring.pair_decision(item.pair_id, plaus, implaus))
    return decisions


@dataclass
class ResultRow:
    analysis: str
    scorer: str
    statistic: str
    value: float
    p: float | None
    p_fdr: float | None
    n: int | None
    notes: str = ""

    def as_tuple(self):
        return (self.analysis, self.scorer, self.statistic, self.value,
                self.p, self.p_fdr, self.n, self.notes)


def _apply_fdr(config: RunConfig, rows: list[ResultRow]) -> None:
    """BH adjustment across scorers of one category within each analysis."""
    buckets: dict[tuple[str, str], list[ResultRow]] = {}
    for row in rows:
        if row.p is None or math.isnan(row.p):
            continue
        buckets.setdefault((row.analysis, config.category(row.scorer)), []).append(row)
    for bucket in buckets.values():
        adjusted = stats.bh_fdr([row.p for row in bucket])
        for row, p_fdr in zip(bucket, adjusted):
            row.p_fdr = p_fdr


def evaluate_rows(config: RunConfig, inputs: RunInputs) -> list[ResultRow]:
    rows: list[ResultRow] = []
    scorers_by_dataset: dict[str, list[str]] = {}
    for (scorer, name) in inputs.norm_scores:
        scorers_by_dataset.setdefault(name, []).append(scorer)

    accuracy_counts: dict[tuple[str, str, str], tuple[int, int]] = {}
    for name in sorted(inputs.tables):
        table = inputs.tables[name]
        for scorer in sorted(scorers_by_dataset.get(name, []),
                             key=lambda s: (s != HUMAN, s)):
            norm = inputs.norm_scores[(scorer, name)]
            seg_counts = {}
            for seg_name, segment in _segments(name, table):
                analysis = f"accuracy:{name}:{seg_name}"
                decisions = _decisions(norm, segment, scorer)
                acc, se, k, n = scoring.binary_accuracy(decisions)
                binom = stats.binom_test(k, n)
                rows.append(ResultRow(analysis, scorer, "accuracy", acc,
                                      binom.p_value, None, n,
                                      notes=f"k={k};se={_fmt(se)}"))
                seg_counts[seg_name] = (k, n)
                accuracy_counts[(name, seg_name, scorer)] = (k, n)
                diff_mean, diff_sd = mean_pair_difference(norm, segment)
                rows.append(ResultRow(f"pair_difference:{name}:{seg_name}", scorer,
                                      "mean_diff", diff_mean, None, None, n,
                                      notes=f"sd={_fmt(diff_sd)}"))
            if name == "D1" and {"AI", "AA"} <= set(seg_counts):
                (k1, n1), (k2, n2) = seg_counts["AI"], seg_counts["AA"]
                gap = stats.equal_proportions_test(k1, n1, k2, n2)
                rows.append(ResultRow(f"ai_vs_aa_gap:{name}", scorer, "chi2",
                                      gap.statistic, gap.p_value, None,
                                      n1 + n2, notes=gap.notes))
            if name == "D1":
                for pairing, selection in (
                        ("active_vs_passive", table),
                        ("synonym", table),
                        ("plaus_vs_implaus:AI", table.headline().select(item_type="AI")),
                        ("plaus_vs_implaus:AA", table.headline().select(item_type="AA"))):
                    kind = pairing.split(":")[0]
                    try:
                        res = stats.paired_correlation(norm, selection, kind)
                    except ValueError:
                        continue
                    rows.append(ResultRow(f"correlation:{name}:{pairing}", scorer,
                                          "r", res.statistic, res.p_value, None,
                                          res.n))
    # Model-vs-human comparisons once all accuracies are known.
    for (name, seg_name, scorer), (k, n) in sorted(accuracy_counts.items()):
        if scorer == HUMAN:
            continue
        human_counts = accuracy_counts.get((name, seg_name, HUMAN))
        if human_counts is None:
            continue
        hk, hn = human_counts
        res = stats.equal_proportions_test(k, n, hk, hn)
        rows.append(ResultRow(f"vs_human:{name}:{seg_name}", scorer, "chi2",
                              res.statistic, res.p_value, None, n + hn,
                              notes=res.notes))
    _apply_fdr(config, rows)
    return rows


def run_evaluate(config: RunConfig, inputs: RunInputs) -> list[Path]:
    rows = evaluate_rows(config, inputs)
    rows.sort(key=lambda r: (r.analysis, r.scorer))
    out = _write_table(config, config.output_dir / "results.tsv", RESULT_COLUMNS,
                       (r.as_tuple() for r in rows))
    return [out] + emit_plot_data(config, inputs, rows)


def emit_plot_data(config: RunConfig, inputs: RunInputs,
                   rows: list[ResultRow]) -> list[Path]:
    """Tidy per-figure-role CSVs derived from evaluation results."""
    artifacts = []
    acc_rows = []
    for row in rows:
        if not row.analysis.startswith("accuracy:"):
            continue
        _, name, seg = row.analysis.split(":")
        se = row.notes.split("se=")[1] if "se=" in row.notes else ""
        acc_rows.append((name, seg, row.scorer, row.value, se, row.p, row.p_fdr))
    artifacts.append(_write_table(
        config, config.output_dir / "accuracy_bars.csv",
        ("dataset", "item_type", "scorer", "accuracy", "se", "p", "p_fdr"),
        sorted(acc_rows), sep=","))

    density = []
    scatter = []
    for (scorer, name) in sorted(inputs.norm_scores):
        norm = inputs.norm_scores[(scorer, name)]
        for item in inputs.tables[name].headline():
            p_id = item.plausible.sentence_id
            i_id = item.implausible.sentence_id
            density.append((name, item.item_type, scorer, "plausible", p_id,
                            norm[p_id]))
            density.append((name, item.item_type, scorer, "implausible", i_id,
                            norm[i_id]))
            scatter.append((name, item.item_type, scorer, item.pair_id,
                            norm[p_id], norm[i_id]))
    artifacts.append(_write_table(
        config, config.output_dir / "density_curves.csv",
        ("dataset", "item_type", "scorer", "plausibility", "sentence_id", "score"),
        density, sep=","))
    artifacts.append(_write_table(
        config, config.output_dir / "scatter_pairs.csv",
        ("dataset", "item_type", "scorer", "pair_id", "plaus_score", "implaus_score"),
        scatter, sep=","))

    profile_paths = _emit_error_profile(config, inputs)
    return artifacts + profile_paths


def _emit_error_profile(config: RunConfig, inputs: RunInputs) -> list[Path]:
    """Cross-scorer error profile for datasets scored by 2+ non-human scorers."""
    artifacts = []
    for name in sorted(inputs.tables):
        scorers = sorted(s for (s, d) in inputs.norm_scores
                         if d == name and s != HUMAN)
        if len(scorers) < 2 or (HUMAN, name) not in inputs.norm_scores:
            continue
        headline = inputs.tables[name].headline()
        segment = headline.select(item_type=("AI", "AA")) if name == "D1" else headline
        human_norm = inputs.norm_scores[(HUMAN, name)]
        diffs = {item.pair_id: human_norm[item.plausible.sentence_id]
                 - human_norm[item.implausible.sentence_id] for item in segment}
        types = {item.pair_id: item.item_type for item in segment}
        decisions = {s: {d.pair_id: d for d in
                         _decisions(inputs.norm_scores[(s, name)], segment, s)}
                     for s in scorers}
        profile, tests = stats.error_profile(decisions, diffs, types)
        artifacts.append(_write_table(
            config, config.output_dir / f"error_profile_{name}.csv",
            ("pair_id", "item_type", "n_correct", "n_scorers", "human_difference"),
            ((r.pair_id, r.item_type, r.n_correct, r.n_scorers, r.human_difference)
             for r in profile), sep=","))
        artifacts.append(_write_table(
            config, config.output_dir / f"error_profile_{name}_stats.tsv",
            RESULT_COLUMNS,
            ((f"error_profile:{name}:{itype}", "+".join(scorers), "r",
              res.statistic, res.p_value, None, res.n, res.notes)
             for itype, res in sorted(tests.items()))))
    return artifacts


# ---------------------------------------------------------------------------
# Regression
# ---------------------------------------------------------------------------

def run_regress(config: RunConfig, inputs: RunInputs) -> list[Path]:
    if inputs.frequency is None:
        raise HarnessError("regression needs resources.frequency_table in the config")
    rows = []
    for (scorer, name) in sorted(inputs.norm_scores):
        table = inputs.tables[name].select(synonym_variant=("1", "NA"))
        length_unit = "tokens" if scorer in inputs.token_counts else "words"
        spec = RegressionSpec(scorer, name, length_unit)
        fit = fit_scorer_lmm(spec, table, inputs.norm_scores[(scorer, name)],
                             inputs.frequency,
                             inputs.token_counts.get(scorer))
        for coef in fit.coefficients:
            rows.append((scorer, name, coef.name, coef.estimate, coef.se,
                         coef.z, coef.p_value, "" if fit.converged else "not converged"))
        rows.append((scorer, name, "var:intercept", fit.intercept_var, "", "", "", ""))
        rows.append((scorer, name, "var:slope", fit.slope_var, "", "", "", ""))
        rows.append((scorer, name, "cov:intercept_slope", fit.intercept_slope_cov,
                     "", "", "", ""))
        rows.append((scorer, name, "var:residual", fit.residual_var, "", "", "", ""))
        rows.append((scorer, name, "loglik", fit.loglik, "", "", "", fit.notes))
    out = _write_table(config, config.output_dir / "coefficients.tsv",
                       ("scorer", "dataset", "term", "estimate", "se", "z", "p",
                        "notes"), rows)
    return [out]


# ---------------------------------------------------------------------------
# Probing
# ---------------------------------------------------------------------------

def _probe_population(table: PairTable, ratings: Mapping[str, Rating],
                      voice: str = "active"):
    """Active-voice first-variant sentences of the contrastive item types."""
    voices = (voice, "NA") if voice != "all" else ("active", "passive", "NA")
    selected = table.select(item_type=("AI", "AA", "NA"), voice=voices,
                            synonym_variant=("1", "NA"))
    sentence_rows = []
    for item in selected:
        for sent, label in ((item.plausible, 1), (item.implausible, 0)):
            sentence_rows.append((sent, label, item.pair_id, item.item_type))
    ids = [s.sentence_id for s, *_ in sentence_rows]
    y = np.array([label for _, label, *_ in sentence_rows])
    pairs = [pid for *_, pid, _ in sentence_rows]
    features = np.array([[ratings[i].mean_rating] for i in ids])
    types = [t for *_, t in sentence_rows]
    return ids, features, y, pairs, types


def ceiling_reports(config: RunConfig, inputs: RunInputs,
                    dataset: str) -> dict[str, probes.ProbeReport]:
    """Ceiling probes on mean ratings for one dataset's active sentences."""
    if dataset not in inputs.ratings:
        raise HarnessError(f"no ratings configured for {dataset}")
    table = inputs.tables[dataset]
    ids, X, y, pairs, types = _probe_population(table, inputs.ratings[dataset])
    reports = {}
    conditions = {"all": np.ones(len(y), dtype=bool)}
    if dataset == "D1":
        type_arr = np.asarray(types)
        conditions["AI"] = type_arr == "AI"
        conditions["AA"] = type_arr == "AA"
    for cond, mask in conditions.items():
        rows = np.flatnonzero(mask)
        folds = probes.pair_preserving_folds([pairs[i] for i in rows],
                                             config.folds, config.seed)
        reports[cond] = probes.ceiling_probe(X[rows, 0], y[rows],
                                             [pairs[i] for i in rows], folds,
                                             condition=cond)
    return reports


def run_probe(config: RunConfig, inputs: RunInputs) -> list[Path]:
    curve_rows = []
    trend_rows = []
    all_reports: list[probes.ProbeReport] = []
    ceilings: dict[tuple[str, str], float] = {}
    for name in sorted(inputs.ratings):
        for cond, report in sorted(ceiling_reports(config, inputs, name).items()):
            ceilings[(name, cond)] = report.mean_accuracy
            all_reports.append(probes.ProbeReport(
                f"ceiling:{name}:{cond}", f"ceiling:{name}:{cond}", 0,
                report.fold_accuracies, report.mean_accuracy))
            curve_rows.append((f"ceiling:{name}:{cond}", f"ceiling:{name}:{cond}",
                               0, report.mean_accuracy, report.mean_accuracy))

    for scorer in sorted(config.embeddings):
        records = list(probes.read_embeddings(config.embeddings[scorer]))
        name = _embedding_dataset(records, inputs)
        table = inputs.tables[name]
        ids, _, y, pairs, types = _probe_population(table, inputs.ratings[name])
        index = {sid: i for i, sid in enumerate(ids)}
        by_layer: dict[int, np.ndarray] = {}
        for layer in sorted({r.layer for r in records}):
            layer_recs = [r for r in records if r.layer == layer]
            found = {r.sentence_id: r.vector for r in layer_recs}
            missing = [sid for sid in ids if sid not in found]
            if missing:
                raise HarnessError(f"embeddings for {scorer!r} layer {layer} miss "
                                   f"{len(missing)} sentences")
            by_layer[layer] = np.array([found[sid] for sid in ids])
        memberships = {"all": np.ones(len(y), dtype=bool)}
        if name == "D1":
            type_arr = np.asarray(types)
            memberships["AI"] = type_arr == "AI"
            memberships["AA"] = type_arr == "AA"
        pair_list = [(c, c) for c in sorted(memberships)]
        if len(memberships) > 1:
            pair_list += [("AI", "AA"), ("AA", "AI")]
        per_condition_acc: dict[tuple[str, str], list[float]] = {}
        for layer in sorted(by_layer):
            for train_cond, test_cond in pair_list:
                report = probes.generalization_probe(
                    by_layer[layer], y, pairs, memberships, train_cond, test_cond,
                    k=config.folds, seed=config.seed, layer=layer)
                ceiling = ceilings.get((name, test_cond))
                all_reports.append(probes.ProbeReport(
                    f"{scorer}:{train_cond}", f"{scorer}:{test_cond}", layer,
                    report.fold_accuracies, ceiling))
                curve_rows.append((f"{scorer}:{train_cond}", f"{scorer}:{test_cond}",
                                   layer, report.mean_accuracy, ceiling))
                per_condition_acc.setdefault((train_cond, test_cond), []).append(
                    report.mean_accuracy)
        for (train_cond, test_cond), accs in sorted(per_condition_acc.items()):
            ceiling = ceilings.get((name, test_cond))
            if len(accs) < 3 or ceiling is None:
                continue
            for group in stats.layer_group_trend(accs, ceiling):
                trend_rows.append((scorer, train_cond, test_cond, group.group,
                                   group.mean_accuracy,
                                   group.vs_ceiling.statistic, group.vs_ceiling.p_value,
                                   group.trend.statistic, group.trend.p_value))
    artifacts = [_write_table(config, config.output_dir / "probe_curves.csv",
                              ("train", "test", "layer", "mean_acc", "ceiling"),
                              curve_rows, sep=",")]
    config.output_dir.mkdir(parents=True, exist_ok=True)
    reports_path = config.output_dir / "probe_reports.tsv"
    probes.write_probe_reports(all_reports, reports_path)
    summary_path = config.output_dir / "probe_summary.tsv"
    probes.write_probe_summary(all_reports, summary_path)
    for path in (reports_path, summary_path):
        path.write_text(_artifact_header(config) + path.read_text(),
                        encoding="utf-8")
    artifacts += [reports_path, summary_path]
    if trend_rows:
        artifacts.append(_write_table(
            config, config.output_dir / "probe_trends.tsv",
            ("scorer", "train", "test", "group", "mean_acc", "vs_ceiling",
             "vs_ceiling_p", "trend_slope", "trend_p"), trend_rows))
    return artifacts


def _embedding_dataset(records: Sequence[probes.EmbeddingRecord],
                       inputs: RunInputs) -> str:
    ids = {r.sentence_id for r in records}
    for name, table in inputs.tables.items():
        table_ids = {s.sentence_id for s in table.sentences()}
        if ids & table_ids:
            return name
    raise HarnessError("embedding records match no configured dataset")


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

COMMANDS = ("validate", "score", "evaluate", "regress", "probe", "report")


def run(command: str, config: RunConfig) -> list[Path]:
    """Execute one command; returns the artifact list (also written to the manifest)."""
    if command not in COMMANDS:
        raise HarnessError(f"unknown command {command!r}")
    inputs = validate_inputs(config)
    artifacts: list[Path] = []
    if command == "validate":
        pass
    elif command == "score":
        artifacts += run_score(config, inputs)
    elif command == "evaluate":
        artifacts += run_evaluate(config, inputs)
    elif command == "regress":
        artifacts += run_regress(config, inputs)
    elif command == "probe":
        artifacts += run_probe(config, inputs)
    else:  # report
        if config.triples is not None:
            score_files = run_score(config, inputs)
            artifacts += score_files
            extra = {p.stem: p for p in score_files}
            config = dataclasses.replace(
                config, scorers={**config.scorers, **extra},
                categories={**config.categories,
                            **{name: "baseline" for name in extra}})
            inputs = validate_inputs(config)
        artifacts += run_evaluate(config, inputs)
        if config.frequency_table is not None:
            artifacts += run_regress(config, inputs)
        if config.ratings:
            artifacts += run_probe(config, inputs)
    manifest = {
        "command": command,
        "config": str(config.path),
        "config_hash": config.config_hash,
        "seed": config.seed,
        "artifacts": sorted(str(p.relative_to(config.output_dir)) for p in artifacts),
    }
    config.output_dir.mkdir(parents=True, exist_ok=True)
    manifest_path = config.output_dir / "manifest.json"
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return artifacts + [manifest_path]
