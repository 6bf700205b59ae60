import math

import pytest
from hypothesis import given, strategies as st

from plauskit.scoring import (PairDecision, SentenceScore, Token,
                              TokenLogProbRecord, aggregate_sentence_score,
                              binary_accuracy, last_word_score, pair_decision,
                              read_records, read_scores, surprisal_score,
                              verb_score, write_records, write_scores)


def rec(logprobs, word_indices=None, sid="s1", scorer="m", scheme="causal"):
    if word_indices is None:
        word_indices = list(range(len(logprobs)))
    tokens = tuple(Token(f"t{i}", w, lp)
                   for i, (w, lp) in enumerate(zip(word_indices, logprobs)))
    return TokenLogProbRecord(sid, scorer, scheme, tokens)


class TestRecordValidation:
    def test_empty_tokens_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            TokenLogProbRecord("s", "m", "causal", ())

    def test_positive_logprob_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            rec([-1.0, 0.5])

    def test_decreasing_word_index_rejected(self):
        with pytest.raises(ValueError, match="word_index"):
            rec([-1.0, -1.0], word_indices=[1, 0])

    def test_unknown_scheme_rejected(self):
        with pytest.raises(ValueError, match="scheme"):
            rec([-1.0], scheme="bogus")


class TestAggregation:
    def test_sum(self):
        assert aggregate_sentence_score(rec([-1, -2, -3]), "sum").value == -6.0

    def test_mean(self):
        assert aggregate_sentence_score(rec([-1, -2, -3]), "mean").value == -2.0

    def test_single_token_sum_equals_mean(self):
        r = rec([-0.7])
        assert (aggregate_sentence_score(r, "sum").value
                == aggregate_sentence_score(r, "mean").value == -0.7)

    def test_surprisal_is_negated_mean_surprisal(self):
        r = rec([-1.0, -3.0])
        s = surprisal_score(r)
        assert s.metric == "surprisal_neg"
        assert s.value == -2.0  # mean logprob == -(mean surprisal)


class TestLastWordScore:
    def test_two_subtoken_mean(self):
        r = rec([-1, -2, -4], word_indices=[0, 1, 1])
        assert last_word_score(r).value == -3.0

    def test_single_subtoken(self):
        r = rec([-2.5, -1.5], word_indices=[0, 1])
        assert last_word_score(r).value == -1.5

    def test_five_word_fixture_matches_hand_trace(self):
        # words 0..4; word 4 split into three subtokens
        logprobs = [-0.5, -1.0, -2.0, -0.25, -3.0, -4.0, -5.0]
        indices = [0, 1, 2, 3, 4, 4, 4]
        expected = (-3.0 - 4.0 - 5.0) / 3.0
        assert last_word_score(rec(logprobs, indices)).value == expected

    @given(st.lists(st.floats(-20, 0), min_size=1, max_size=10))
    def test_bounded_by_token_extremes(self, logprobs):
        r = rec(logprobs, word_indices=[0] * len(logprobs))
        value = last_word_score(r).value
        assert min(logprobs) - 1e-9 <= value <= max(logprobs) + 1e-9


class TestVerbScore:
    def test_single_subtoken(self):
        r = rec([-1, -3, -2], word_indices=[0, 1, 2])
        assert verb_score(r, (1, 2)).value == -3.0

    def test_split_verb(self):
        r = rec([-1, -2, -2, -2, -5], word_indices=[0, 1, 1, 1, 2])
        assert verb_score(r, (1, 2)).value == -2.0

    def test_fixture_matches_hand_trace(self):
        # "The social worker helped the student": verb span (3, 4)
        logprobs = [-0.1, -2.0, -1.5, -0.8, -0.2, -1.1]
        indices = [0, 1, 2, 3, 4, 5]
        assert verb_score(rec(logprobs, indices), (3, 4)).value == -0.8

    def test_span_outside_record_rejected(self):
        r = rec([-1, -1], word_indices=[0, 1])
        with pytest.raises(ValueError, match="span"):
            verb_score(r, (2, 4))


class TestPairDecision:
    def test_higher_plausible_wins(self):
        p = SentenceScore("a", "m", "sentence_ll", -41.2)
        i = SentenceScore("b", "m", "sentence_ll", -44.5)
        assert pair_decision("p1", p, i) == PairDecision("p1", "m", 1, False)

    def test_tie_counts_as_failure(self):
        p = SentenceScore("a", "m", "sentence_ll", -41.2)
        i = SentenceScore("b", "m", "sentence_ll", -41.2)
        d = pair_decision("p1", p, i)
        assert d.correct == 0 and d.tie

    def test_lower_plausible_fails(self):
        p = SentenceScore("a", "m", "sentence_ll", -44.5)
        i = SentenceScore("b", "m", "sentence_ll", -41.2)
        assert pair_decision("p1", p, i).correct == 0

    def test_scorer_mismatch_rejected(self):
        p = SentenceScore("a", "m1", "sentence_ll", -1.0)
        i = SentenceScore("b", "m2", "sentence_ll", -2.0)
        with pytest.raises(ValueError, match="scorer"):
            pair_decision("p1", p, i)

    def test_metric_mismatch_rejected(self):
        p = SentenceScore("a", "m", "sentence_ll", -1.0)
        i = SentenceScore("b", "m", "last_word", -2.0)
        with pytest.raises(ValueError, match="metric"):
            pair_decision("p1", p, i)


class TestBinaryAccuracy:
    def test_counts(self):
        decisions = [PairDecision("a", "m", 1), PairDecision("b", "m", 0),
                     PairDecision("c", "m", 1), PairDecision("d", "m", 1)]
        acc, se, k, n = binary_accuracy(decisions)
        assert (k, n) == (3, 4)
        assert math.isclose(acc, 0.75)
        assert math.isclose(se, math.sqrt(0.75 * 0.25 / 4))

    def test_all_ties_scores_zero(self):
        decisions = [PairDecision(str(i), "m", 0, tie=True) for i in range(5)]
        acc, se, k, n = binary_accuracy(decisions)
        assert acc == 0.0 and k == 0

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            binary_accuracy([])

    @given(st.lists(st.integers(0, 1), min_size=1, max_size=40),
           st.randoms(use_true_random=False))
    def test_permutation_invariant(self, bits, rand):
        decisions = [PairDecision(str(i), "m", b) for i, b in enumerate(bits)]
        before = binary_accuracy(decisions)
        rand.shuffle(decisions)
        assert binary_accuracy(decisions) == before


class TestShiftProperties:
    @given(st.lists(st.floats(-10, -0.01), min_size=2, max_size=8),
           st.lists(st.floats(-10, -0.01), min_size=2, max_size=8),
           st.floats(-3, 0))
    def test_constant_shift_preserves_equal_length_decisions(self, a, b, c):
        n = min(len(a), len(b))
        a, b = a[:n], b[:n]
        p = aggregate_sentence_score(rec(a, sid="p"), "sum")
        i = aggregate_sentence_score(rec(b, sid="i"), "sum")
        base = pair_decision("x", p, i)
        p2 = aggregate_sentence_score(rec([v + c for v in a], sid="p"), "sum")
        i2 = aggregate_sentence_score(rec([v + c for v in b], sid="i"), "sum")
        shifted = pair_decision("x", p2, i2)
        # both members share token count, so the shift cancels
        assert math.isclose(p2.value - p.value, c * n, abs_tol=1e-9)
        if not (base.tie or shifted.tie):
            assert shifted.correct == base.correct

    @given(st.lists(st.floats(-10, -0.01), min_size=3, max_size=6),
           st.lists(st.floats(-10, -0.01), min_size=3, max_size=6))
    def test_sum_and_mean_agree_on_equal_token_counts(self, a, b):
        n = min(len(a), len(b))
        a, b = a[:n], b[:n]
        d_sum = pair_decision("x", aggregate_sentence_score(rec(a, sid="p"), "sum"),
                              aggregate_sentence_score(rec(b, sid="i"), "sum"))
        d_mean = pair_decision("x", aggregate_sentence_score(rec(a, sid="p"), "mean"),
                               aggregate_sentence_score(rec(b, sid="i"), "mean"))
        if not (d_sum.tie or d_mean.tie):
            assert d_sum.correct == d_mean.correct


class TestRoundTrip:
    def test_records_round_trip(self, tmp_path):
        records = [rec([-1.5, -2.5], sid="s1"),
                   rec([-0.5], sid="s2", scheme="pll_word_l2r")]
        path = tmp_path / "recs.jsonl"
        write_records(records, path)
        assert list(read_records(path)) == records

    def test_scores_round_trip(self, tmp_path):
        scores = [SentenceScore("s1", "m", "sentence_ll", -6.25),
                  SentenceScore("s2", "m", "last_word", -1.0)]
        path = tmp_path / "scores.jsonl"
        write_scores(scores, path)
        assert list(read_scores(path)) == scores

    def test_bad_line_names_location(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"sentence_id": "s"}\n', encoding="utf-8")
        with pytest.raises(ValueError, match="bad.jsonl:1"):
            list(read_records(path))
