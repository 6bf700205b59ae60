"""End-to-end extraction tests on briefly trained miniature checkpoints,
including the secondary acceptance gate (scheme ordering on multi-subtoken
words, the qualitative item-type gap, and run-to-run determinism)."""

import json
import math
from pathlib import Path

import numpy as np
import pytest
import torch
from transformers import (AutoModelForCausalLM, AutoModelForMaskedLM,
                          AutoTokenizer)

from extractor.cli import main as cli_main
from extractor.embeddings import extract_embeddings
from extractor.jobs import ExtractionJob
from extractor.logprobs import _mask_sets, extract_token_logprobs, write_records
from extractor.tiny import (SPLIT_WORDS, synthetic_corpus,
                            train_causal_checkpoint, train_masked_checkpoint)


@pytest.fixture(scope="session")
def checkpoints(tmp_path_factory):
    root = tmp_path_factory.mktemp("tiny-checkpoints")
    uni = train_causal_checkpoint(root / "uni", seed=0)
    bi = train_masked_checkpoint(root / "bi", seed=0)
    return {"uni": uni, "bi": bi}


@pytest.fixture(scope="session")
def eval_sentences():
    _, items = synthetic_corpus(0)
    sentences = []
    for item in items:
        sentences.append((f"{item.pair_id}:p", item.plausible))
        sentences.append((f"{item.pair_id}:i", item.implausible))
    return items, tuple(sentences)


def load(kind, path):
    tok = AutoTokenizer.from_pretrained(path)
    cls = AutoModelForCausalLM if kind == "uni" else AutoModelForMaskedLM
    return cls.from_pretrained(path), tok


class TestMaskSets:
    def test_original_masks_only_target(self):
        assert _mask_sets("pll_original", [0, 1, 1, 2]) == [[0], [1], [2], [3]]

    def test_word_l2r_masks_within_word_right_context(self):
        # words: [w0] [w1 w1 w1] [w2]
        sets = _mask_sets("pll_word_l2r", [0, 1, 1, 1, 2])
        assert sets == [[0], [1, 2, 3], [2, 3], [3], [4]]

    def test_l2r_masks_everything_rightward(self):
        assert _mask_sets("l2r_masked", [0, 1, 2]) == [[0, 1, 2], [1, 2], [2]]


class TestRecords:
    def test_causal_record_invariants(self, checkpoints):
        model, tok = load("uni", checkpoints["uni"])
        job = ExtractionJob("tiny-uni", "unidirectional", ("causal",), (),
                            (("s1", "The nanny tutored the boy"),
                             ("s2", "The teacher bought the laptop")))
        records = list(extract_token_logprobs(model, tok, job, "causal"))
        assert len(records) == 2
        for rec in records:
            assert all(t.logprob <= 0 for t in rec.tokens)
            indices = [t.word_index for t in rec.tokens]
            assert indices == sorted(indices)
        # the split words contribute two subtokens to one word index
        split = [t.word_index for t in records[1].tokens]
        assert split.count(4) == 2  # 'laptop' -> 'lap' + '##top'

    def test_round_trip_through_the_pipeline_reader(self, checkpoints, tmp_path):
        plauskit_scoring = pytest.importorskip(
            "plauskit.scoring", reason="pipeline package not installed")
        model, tok = load("bi", checkpoints["bi"])
        job = ExtractionJob("tiny-bi", "bidirectional", ("pll_word_l2r",), (),
                            (("s1", "The teacher bought the laptop"),))
        path = tmp_path / "records.jsonl"
        write_records(extract_token_logprobs(model, tok, job, "pll_word_l2r"),
                      path)
        parsed = list(plauskit_scoring.read_records(path))
        assert len(parsed) == 1
        assert parsed[0].scheme == "pll_word_l2r"
        assert parsed[0].tokens[0].surface == "The"

    def test_single_subtoken_sentence_equates_pll_schemes(self, checkpoints):
        model, tok = load("bi", checkpoints["bi"])
        sentences = (("s1", "The nanny bought the drum"),)
        job = ExtractionJob("tiny-bi", "bidirectional",
                            ("pll_original", "pll_word_l2r"), (), sentences)
        a = list(extract_token_logprobs(model, tok, job, "pll_original"))
        b = list(extract_token_logprobs(model, tok, job, "pll_word_l2r"))
        assert [t.logprob for t in a[0].tokens] == [t.logprob for t in b[0].tokens]

    def test_scheme_not_in_job_rejected(self, checkpoints):
        model, tok = load("bi", checkpoints["bi"])
        job = ExtractionJob("tiny-bi", "bidirectional", ("pll_original",), (),
                            (("s1", "The boy ran"),))
        with pytest.raises(ValueError, match="not requested"):
            list(extract_token_logprobs(model, tok, job, "l2r_masked"))


class TestEmbeddings:
    def test_two_layers_two_records_per_sentence(self, checkpoints):
        model, tok = load("bi", checkpoints["bi"])
        last = model.config.num_hidden_layers
        job = ExtractionJob("tiny-bi", "bidirectional", (), (0, last),
                            (("s1", "The nanny tutored the boy"),
                             ("s2", "The judge praised the boy")))
        rows = list(extract_embeddings(model, tok, job))
        assert len(rows) == 4
        assert all(r.summary_token == "cls" for r in rows)
        assert {r.layer for r in rows} == {0, last}

    def test_unidirectional_uses_final_token(self, checkpoints):
        model, tok = load("uni", checkpoints["uni"])
        job = ExtractionJob("tiny-uni", "unidirectional", (), (1,),
                            (("s1", "The nanny tutored the boy"),))
        rows = list(extract_embeddings(model, tok, job))
        assert rows[0].summary_token == "final"

    def test_repeat_extraction_identical(self, checkpoints):
        model, tok = load("bi", checkpoints["bi"])
        job = ExtractionJob("tiny-bi", "bidirectional", (), (2,),
                            (("s1", "The nanny tutored the boy"),))
        first = list(extract_embeddings(model, tok, job))
        second = list(extract_embeddings(model, tok, job))
        assert first == second

    def test_layer_out_of_range_rejected(self, checkpoints):
        model, tok = load("bi", checkpoints["bi"])
        job = ExtractionJob("tiny-bi", "bidirectional", (), (99,),
                            (("s1", "The boy ran"),))
        with pytest.raises(ValueError, match="layer 99"):
            list(extract_embeddings(model, tok, job))

    def test_round_trip_through_pipeline_reader(self, checkpoints, tmp_path):
        plauskit_probes = pytest.importorskip(
            "plauskit.probes", reason="pipeline package not installed")
        from extractor.embeddings import write_embeddings
        model, tok = load("bi", checkpoints["bi"])
        job = ExtractionJob("tiny-bi", "bidirectional", (), (0, 1),
                            (("s1", "The nanny tutored the boy"),))
        path = tmp_path / "emb.jsonl"
        write_embeddings(extract_embeddings(model, tok, job), path)
        rows = list(plauskit_probes.read_embeddings(path))
        assert len(rows) == 2 and rows[0].summary_token == "cls"


class TestCli:
    def test_end_to_end_and_determinism(self, checkpoints, tmp_path):
        sentences = tmp_path / "sentences.tsv"
        sentences.write_text("sentence_id\tsentence\n"
                             "a\tThe teacher bought the laptop\n"
                             "b\tThe nanny tutored the boy\n", encoding="utf-8")
        out1, out2 = tmp_path / "run1", tmp_path / "run2"
        for out in (out1, out2):
            rc = cli_main(["--model", str(checkpoints["bi"]),
                           "--schemes", "pll_word_l2r,pll_original",
                           "--layers", "0,2", "--in", str(sentences),
                           "--out", str(out)])
            assert rc == 0
        for name in ("logprobs_pll_word_l2r.jsonl", "logprobs_pll_original.jsonl",
                     "embeddings.jsonl"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
        manifest = json.loads((out1 / "manifest.json").read_text())
        assert manifest["direction"] == "bidirectional"

    def test_invalid_pairing_fails_before_model_load(self, checkpoints, tmp_path,
                                                     capsys):
        sentences = tmp_path / "sentences.tsv"
        sentences.write_text("a\tThe boy ran\n", encoding="utf-8")
        rc = cli_main(["--model", str(checkpoints["uni"]),
                       "--schemes", "pll_original",
                       "--in", str(sentences), "--out", str(tmp_path / "o")])
        assert rc == 1
        record = json.loads(capsys.readouterr().err.strip())
        assert "not defined for unidirectional" in record["message"]


class TestSecondaryAcceptance:
    def test_criterion_10a_word_l2r_removes_inflation(self, checkpoints,
                                                      eval_sentences):
        model, tok = load("bi", checkpoints["bi"])
        items, sentences = eval_sentences
        job = ExtractionJob("tiny-bi", "bidirectional",
                            ("pll_original", "pll_word_l2r"), (), sentences)

        def word_totals(scheme):
            out = {}
            for rec in extract_token_logprobs(model, tok, job, scheme):
                totals, counts = {}, {}
                for t in rec.tokens:
                    totals[t.word_index] = totals.get(t.word_index, 0.0) + t.logprob
                    counts[t.word_index] = counts.get(t.word_index, 0) + 1
                out[rec.sentence_id] = (totals, counts)
            return out

        orig = word_totals("pll_original")
        wl2r = word_totals("pll_word_l2r")
        diffs = []
        for sid, (totals, counts) in orig.items():
            for widx, n_sub in counts.items():
                if n_sub > 1:
                    diffs.append(totals[widx] - wl2r[sid][0][widx])
        diffs = np.asarray(diffs)
        ok = (len(diffs) >= 20 and diffs.mean() > 0
              and float((diffs >= -1e-9).mean()) >= 0.9)
        print(f"[{'PASS' if ok else 'FAIL'}] acceptance 10a: "
              f"{len(diffs)} multi-subtoken words, mean inflation "
              f"{diffs.mean():.3f}, ordering holds for "
              f"{(diffs >= -1e-9).mean():.0%}")
        assert ok

    def test_criterion_10b_item_type_gap(self, checkpoints, eval_sentences):
        plauskit_stats = pytest.importorskip(
            "plauskit.stats", reason="pipeline package not installed")
        model, tok = load("uni", checkpoints["uni"])
        items, sentences = eval_sentences
        job = ExtractionJob("tiny-uni", "unidirectional", ("causal",), (),
                            sentences)
        totals = {rec.sentence_id: sum(t.logprob for t in rec.tokens)
                  for rec in extract_token_logprobs(model, tok, job, "causal")}
        acc = {}
        ai_p = 1.0
        for kind in ("AI", "AA"):
            pairs = [it for it in items if it.item_type == kind]
            wins = sum(totals[f"{it.pair_id}:p"] > totals[f"{it.pair_id}:i"]
                       for it in pairs)
            acc[kind] = wins / len(pairs)
            if kind == "AI":
                ai_p = plauskit_stats.binom_test(wins, len(pairs)).p_value
        ok = acc["AI"] - acc["AA"] > 0 and ai_p < 0.001
        print(f"[{'PASS' if ok else 'FAIL'}] acceptance 10b: "
              f"accuracy AI={acc['AI']:.3f} (binomial p={ai_p:.2e}) > "
              f"AA={acc['AA']:.3f}; gap={acc['AI'] - acc['AA']:.3f}")
        assert ok

    def test_criterion_10c_run_to_run_determinism(self, checkpoints, tmp_path):
        sentences = tmp_path / "s.tsv"
        sentences.write_text("a\tThe teacher bought the laptop\n"
                             "b\tThe student carried the basket\n",
                             encoding="utf-8")
        outs = []
        for run in ("r1", "r2"):
            out = tmp_path / run
            rc = cli_main(["--model", str(checkpoints["uni"]),
                           "--schemes", "causal", "--layers", "0,1",
                           "--in", str(sentences), "--out", str(out)])
            assert rc == 0
            outs.append(out)
        ok = all((outs[0] / n).read_bytes() == (outs[1] / n).read_bytes()
                 for n in ("logprobs_causal.jsonl", "embeddings.jsonl"))
        print(f"[{'PASS' if ok else 'FAIL'}] acceptance 10c: repeated "
              f"extraction is byte-identical")
        assert ok
