import json
from pathlib import Path

import numpy as np
import pytest

from plauskit.cli import main as cli_main
from plauskit.dataset import DATASET_COLUMNS, sentence_id
from plauskit.harness import HarnessError, load_config, run, validate_inputs

ROOT = Path(__file__).resolve().parent.parent
REFERENCE_CONFIG = ROOT / "configs" / "reference.ini"

WORDS = [("nanny", "tutored", "boy"), ("judge", "praised", "clerk"),
         ("coach", "trained", "boxer"), ("nurse", "treated", "farmer"),
         ("guard", "escorted", "tenant"), ("tutor", "advised", "pupil"),
         ("mayor", "thanked", "barber"), ("chef", "fed", "sailor")]


def write_tiny_dataset(tmp_path, n_items=8):
    lines = ["\t".join(DATASET_COLUMNS)]
    ratings = ["sentence_id\tmean_rating\tn_ratings\traw_ratings"]
    rng = np.random.default_rng(0)
    for i in range(n_items):
        a, v, p = WORDS[i % len(WORDS)]
        if i == 0:
            a = "social worker"  # one long NP keeps length and voice apart
        itype = "AI" if i % 2 else "AA"
        n_a, n_p = len(a.split()), len(p.split())

        def act(x, y, nx, ny):
            return (f"The {x} {v} the {y}", f"1:{1 + nx}",
                    f"{1 + nx}:{2 + nx}", f"{3 + nx}:{3 + nx + ny}")

        def pas(x, y, nx, ny):
            # surface: The <y> was <v> by the <x>
            return (f"The {y} was {v} by the {x}",
                    f"{5 + ny}:{5 + ny + nx}", f"{2 + ny}:{3 + ny}",
                    f"1:{1 + ny}")

        rows = [("active", "plausible", *act(a, p, n_a, n_p)),
                ("active", "implausible", *act(p, a, n_p, n_a)),
                ("passive", "plausible", *pas(a, p, n_a, n_p)),
                ("passive", "implausible", *pas(p, a, n_p, n_a))]
        for voice, plaus, text, a_span, v_span, p_span in rows:
            lines.append("\t".join(["D1", f"p{i}", itype, voice, "1", plaus,
                                    text, a_span, v_span, p_span]))
            sid = sentence_id("D1", f"p{i}", plaus, voice, "1")
            base = 6.2 if plaus == "plausible" else 1.8
            value = base + float(rng.uniform(-0.3, 0.3))
            ratings.append(f"{sid}\t{value}\t20\t-")
    (tmp_path / "d1.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    (tmp_path / "r1.tsv").write_text("\n".join(ratings) + "\n", encoding="utf-8")
    vocab = sorted({w.lower() for line in lines[1:]
                    for w in line.split("\t")[6].split()})
    freq = "\n".join(f"{w}\t{int(rng.integers(100, 100000))}" for w in vocab)
    (tmp_path / "freq.tsv").write_text(freq + "\n", encoding="utf-8")


def write_tiny_config(tmp_path, **extra):
    lines = ["[run]", "seed = 11", f"output_dir = out",
             "[datasets]", "d1 = d1.tsv",
             "[ratings]", "d1 = r1.tsv",
             "[resources]", "frequency_table = freq.tsv",
             "[analysis]", "normalization = minmax", "folds = 4"]
    for section, kv in extra.items():
        lines.append(f"[{section}]")
        lines.extend(f"{k} = {v}" for k, v in kv.items())
    path = tmp_path / "run.ini"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class TestConfig:
    def test_load_and_overrides(self, tmp_path):
        write_tiny_dataset(tmp_path)
        path = write_tiny_config(tmp_path)
        config = load_config(path, overrides=["analysis.folds=3"], seed=99)
        assert config.folds == 3
        assert config.seed == 99
        assert config.datasets["D1"] == tmp_path / "d1.tsv"

    def test_hash_stable_and_ignores_output_dir(self, tmp_path):
        write_tiny_dataset(tmp_path)
        path = write_tiny_config(tmp_path)
        a = load_config(path)
        b = load_config(path, out=str(tmp_path / "elsewhere"))
        assert a.config_hash == b.config_hash
        c = load_config(path, overrides=["analysis.folds=9"])
        assert c.config_hash != a.config_hash

    def test_bad_override_rejected(self, tmp_path):
        write_tiny_dataset(tmp_path)
        path = write_tiny_config(tmp_path)
        with pytest.raises(HarnessError, match="section.key"):
            load_config(path, overrides=["folds=3"])

    def test_missing_config_rejected(self, tmp_path):
        with pytest.raises(HarnessError, match="not found"):
            load_config(tmp_path / "nope.ini")


class TestValidate:
    def test_good_inputs_pass(self, tmp_path):
        write_tiny_dataset(tmp_path)
        config = load_config(write_tiny_config(tmp_path))
        inputs = validate_inputs(config)
        assert set(inputs.tables) == {"D1"}
        assert ("human", "D1") in inputs.norm_scores

    def test_missing_file_names_path(self, tmp_path):
        write_tiny_dataset(tmp_path)
        config = load_config(write_tiny_config(tmp_path),
                             overrides=["datasets.d1=missing.tsv"])
        with pytest.raises(HarnessError, match="missing.tsv"):
            validate_inputs(config)

    def test_partial_scorer_coverage_rejected(self, tmp_path):
        write_tiny_dataset(tmp_path)
        sid = sentence_id("D1", "p0", "plausible", "active", "1")
        (tmp_path / "scores.jsonl").write_text(
            json.dumps({"sentence_id": sid, "scorer_id": "m",
                        "metric": "sentence_ll", "value": -1.0}) + "\n",
            encoding="utf-8")
        config = load_config(write_tiny_config(
            tmp_path, scorers={"m": "scores.jsonl"}))
        with pytest.raises(HarnessError, match="covers only"):
            validate_inputs(config)


class TestCommands:
    def test_evaluate_emits_tables(self, tmp_path):
        write_tiny_dataset(tmp_path)
        config = load_config(write_tiny_config(tmp_path))
        artifacts = run("evaluate", config)
        names = {p.name for p in artifacts}
        assert {"results.tsv", "accuracy_bars.csv", "density_curves.csv",
                "scatter_pairs.csv", "manifest.json"} <= names
        results = (tmp_path / "out" / "results.tsv").read_text().splitlines()
        assert results[1].split("\t") == ["analysis", "scorer", "statistic",
                                          "value", "p", "p_fdr", "n", "notes"]
        assert any(line.startswith("accuracy:D1:AI\thuman") for line in results)
        bars = (tmp_path / "out" / "accuracy_bars.csv").read_text().splitlines()
        assert bars[1] == "dataset,item_type,scorer,accuracy,se,p,p_fdr"

    def test_manifest_carries_hash_and_seed(self, tmp_path):
        write_tiny_dataset(tmp_path)
        config = load_config(write_tiny_config(tmp_path))
        run("evaluate", config)
        manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
        assert manifest["config_hash"] == config.config_hash
        assert manifest["seed"] == 11
        header = (tmp_path / "out" / "results.tsv").read_text().splitlines()[0]
        assert config.config_hash in header and "seed=11" in header

    def test_regress_emits_coefficients(self, tmp_path):
        write_tiny_dataset(tmp_path, n_items=10)
        config = load_config(write_tiny_config(tmp_path))
        run("regress", config)
        text = (tmp_path / "out" / "coefficients.tsv").read_text()
        assert "implausible" in text and "var:residual" in text

    def test_probe_emits_ceiling_rows(self, tmp_path):
        write_tiny_dataset(tmp_path)
        config = load_config(write_tiny_config(tmp_path))
        run("probe", config)
        lines = (tmp_path / "out" / "probe_curves.csv").read_text().splitlines()
        assert lines[1] == "train,test,layer,mean_acc,ceiling"
        assert any(line.startswith("ceiling:D1:all") for line in lines)

    def test_report_deterministic(self, tmp_path):
        write_tiny_dataset(tmp_path)
        config_path = write_tiny_config(tmp_path)
        run("report", load_config(config_path))
        first = (tmp_path / "out" / "results.tsv").read_bytes()
        run("report", load_config(config_path))
        assert (tmp_path / "out" / "results.tsv").read_bytes() == first

    def test_unknown_command_rejected(self, tmp_path):
        write_tiny_dataset(tmp_path)
        config = load_config(write_tiny_config(tmp_path))
        with pytest.raises(HarnessError, match="unknown command"):
            run("explode", config)


class TestCli:
    def test_validate_exit_zero(self, tmp_path, capsys):
        write_tiny_dataset(tmp_path)
        path = write_tiny_config(tmp_path)
        assert cli_main(["validate", "--config", str(path)]) == 0

    def test_missing_input_exits_nonzero_with_record(self, tmp_path, capsys):
        write_tiny_dataset(tmp_path)
        path = write_tiny_config(tmp_path)
        rc = cli_main(["validate", "--config", str(path),
                       "--set", "datasets.d1=gone.tsv"])
        assert rc == 1
        record = json.loads(capsys.readouterr().err.strip())
        assert record["status"] == "error"
        assert "gone.tsv" in record["message"]

    def test_set_override_applies(self, tmp_path):
        write_tiny_dataset(tmp_path)
        path = write_tiny_config(tmp_path)
        rc = cli_main(["probe", "--config", str(path), "--set",
                       "analysis.folds=3", "--out", str(tmp_path / "o2")])
        assert rc == 0
        lines = (tmp_path / "o2" / "probe_curves.csv").read_text()
        assert "ceiling:D1:all" in lines


@pytest.mark.skipif(not REFERENCE_CONFIG.exists(),
                    reason="shipped reference config not present")
class TestShippedReference:
    def test_item_counts(self, tmp_path):
        config = load_config(REFERENCE_CONFIG, out=str(tmp_path / "run"))
        inputs = validate_inputs(config)
        assert inputs.tables["D1"].item_counts() == {"AA": 129,
                                                     "AA_control": 134,
                                                     "AI": 128}
        assert inputs.tables["D2"].item_counts() == {"NA": 395}
        assert inputs.tables["D3"].item_counts() == {"NA": 38}

    def test_human_headline_rows(self, tmp_path):
        config = load_config(REFERENCE_CONFIG, out=str(tmp_path / "run"))
        inputs = validate_inputs(config)
        from plauskit.harness import evaluate_rows
        rows = {(r.analysis, r.scorer): r for r in evaluate_rows(config, inputs)}
        assert rows[("accuracy:D1:AI", "human")].value == 1.0
        assert abs(rows[("accuracy:D1:AA", "human")].value - 0.95) < 0.01
        assert abs(rows[("ai_vs_aa_gap:D1", "human")].value - 5.24) < 0.5
