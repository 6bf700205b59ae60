import pytest

from extractor.align import map_offsets_to_words, word_spans
from extractor.jobs import ExtractionJob, direction_for_model_type, read_sentences


class TestJobValidation:
    def test_causal_scheme_rejected_for_bidirectional(self):
        with pytest.raises(ValueError, match="not defined for bidirectional"):
            ExtractionJob("m", "bidirectional", ("causal",),
                          sentences=(("s1", "The boy ran"),))

    def test_masked_schemes_rejected_for_unidirectional(self):
        for scheme in ("pll_original", "pll_word_l2r", "l2r_masked"):
            with pytest.raises(ValueError, match="not defined for unidirectional"):
                ExtractionJob("m", "unidirectional", (scheme,),
                              sentences=(("s1", "The boy ran"),))

    def test_unknown_scheme_rejected(self):
        with pytest.raises(ValueError, match="unknown scheme"):
            ExtractionJob("m", "unidirectional", ("magic",),
                          sentences=(("s1", "x"),))

    def test_unknown_direction_rejected(self):
        with pytest.raises(ValueError, match="direction"):
            ExtractionJob("m", "sideways", ("causal",), sentences=(("s1", "x"),))

    def test_empty_sentence_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            ExtractionJob("m", "unidirectional", ("causal",),
                          sentences=(("s1", "  "),))

    def test_duplicate_ids_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            ExtractionJob("m", "unidirectional", ("causal",),
                          sentences=(("s1", "a b"), ("s1", "c d")))

    def test_empty_request_rejected(self):
        with pytest.raises(ValueError, match="neither"):
            ExtractionJob("m", "unidirectional")

    def test_direction_inference(self):
        assert direction_for_model_type("gpt2") == "unidirectional"
        assert direction_for_model_type("bert") == "bidirectional"
        with pytest.raises(ValueError, match="infer"):
            direction_for_model_type("quantum")


class TestSentencesFile:
    def test_reads_with_optional_header(self, tmp_path):
        path = tmp_path / "s.tsv"
        path.write_text("sentence_id\tsentence\na\tThe boy ran\n",
                        encoding="utf-8")
        assert read_sentences(path) == (("a", "The boy ran"),)

    def test_rejects_wrong_columns(self, tmp_path):
        path = tmp_path / "s.tsv"
        path.write_text("a\tb\tc\n", encoding="utf-8")
        with pytest.raises(ValueError, match="2 columns"):
            read_sentences(path)

    def test_rejects_empty(self, tmp_path):
        path = tmp_path / "s.tsv"
        path.write_text("sentence_id\tsentence\n", encoding="utf-8")
        with pytest.raises(ValueError, match="no sentences"):
            read_sentences(path)


class TestAlignment:
    def test_word_spans(self):
        assert word_spans("The  boy ran") == [(0, 3), (5, 8), (9, 12)]

    def test_subtokens_map_by_first_char(self):
        sentence = "The teacher ran"
        offsets = [(0, 3), (4, 7), (7, 11), (12, 15)]
        assert map_offsets_to_words(offsets, sentence) == [0, 1, 1, 2]

    def test_special_token_offsets_rejected(self):
        with pytest.raises(ValueError, match="special tokens"):
            map_offsets_to_words([(0, 0), (0, 3)], "The boy")

    def test_partial_coverage_rejected(self):
        with pytest.raises(ValueError, match="whole sentence"):
            map_offsets_to_words([(0, 3)], "The boy")
