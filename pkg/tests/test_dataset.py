import math

import pytest
from hypothesis import given, strategies as st

from plauskit.dataset import (DATASET_COLUMNS, LoadError, MinimalPairItem,
                              Sentence, load_dataset, load_ratings,
                              mean_pair_difference, normalize_scores,
                              scores_by_id, sentence_id, validate_ratings_for)

HEADER = "\t".join(DATASET_COLUMNS)


def row(dataset="D1", pair_id="p1", item_type="AI", voice="active",
        variant="1", plaus="plausible", sentence="The teacher bought the laptop",
        agent="1:2", verb="2:3", patient="4:5"):
    return "\t".join([dataset, pair_id, item_type, voice, variant, plaus,
                      sentence, agent, verb, patient])


def write(tmp_path, lines, name="data.tsv"):
    path = tmp_path / name
    path.write_text(HEADER + "\n" + "\n".join(lines) + "\n", encoding="utf-8")
    return path


def pair_rows(pair_id="p1", item_type="AI", voice="active", variant="1",
              plaus="The teacher bought the laptop",
              implaus="The laptop bought the teacher"):
    return [
        row(pair_id=pair_id, item_type=item_type, voice=voice, variant=variant,
            plaus="plausible", sentence=plaus),
        row(pair_id=pair_id, item_type=item_type, voice=voice, variant=variant,
            plaus="implausible", sentence=implaus),
    ]


class TestLoadDataset:
    def test_minimal_pair_loads(self, tmp_path):
        table = load_dataset(write(tmp_path, pair_rows()))
        assert len(table) == 1
        item = table.items[0]
        assert item.plausible.text == "The teacher bought the laptop"
        assert item.plausible.role_words("agent") == ("teacher",)
        assert item.implausible.role_words("agent") == ("laptop",)

    def test_item_counts(self, tmp_path):
        lines = (pair_rows("p1", "AI")
                 + pair_rows("p2", "AA",
                             plaus="The nanny tutored the boy",
                             implaus="The boy tutored the nanny")
                 + pair_rows("p2", "AA", voice="passive",
                             plaus="The boy was tutored by the nanny",
                             implaus="The nanny was tutored by the boy"))
        # fix spans for the passive rows
        lines[4] = row(pair_id="p2", item_type="AA", voice="passive",
                       plaus="plausible",
                       sentence="The boy was tutored by the nanny",
                       agent="6:7", verb="3:4", patient="1:2")
        lines[5] = row(pair_id="p2", item_type="AA", voice="passive",
                       plaus="implausible",
                       sentence="The nanny was tutored by the boy",
                       agent="6:7", verb="3:4", patient="1:2")
        table = load_dataset(write(tmp_path, lines))
        assert table.item_counts() == {"AA": 1, "AI": 1}
        assert len(table.select(voice="passive")) == 1
        assert len(table.headline()) == 2

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.tsv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(LoadError):
            load_dataset(path)

    def test_header_only_rejected(self, tmp_path):
        path = tmp_path / "h.tsv"
        path.write_text(HEADER + "\n", encoding="utf-8")
        with pytest.raises(LoadError, match="no data rows"):
            load_dataset(path)

    def test_orphan_pair_member_names_pair(self, tmp_path):
        path = write(tmp_path, [row(pair_id="lonely")])
        with pytest.raises(LoadError, match="lonely"):
            load_dataset(path)

    def test_bad_enum_names_row(self, tmp_path):
        path = write(tmp_path, [row(item_type="XX"), pair_rows()[1]])
        with pytest.raises(LoadError, match="item_type"):
            load_dataset(path)

    def test_wrong_header_rejected(self, tmp_path):
        path = tmp_path / "w.tsv"
        path.write_text("a\tb\n" + row() + "\n", encoding="utf-8")
        with pytest.raises(LoadError, match="header"):
            load_dataset(path)

    def test_span_out_of_bounds(self, tmp_path):
        path = write(tmp_path, [row(patient="4:9"), pair_rows()[1]])
        with pytest.raises(LoadError, match="span"):
            load_dataset(path)

    def test_overlapping_spans(self, tmp_path):
        path = write(tmp_path, [row(agent="1:3"), pair_rows()[1]])
        with pytest.raises(LoadError, match="overlapping"):
            load_dataset(path)

    def test_word_swap_content_enforced(self, tmp_path):
        lines = pair_rows(implaus="The laptop bought the plumber")
        with pytest.raises(LoadError, match="word content"):
            load_dataset(write(tmp_path, lines))

    def test_d2_patient_only_change(self, tmp_path):
        good = [row(dataset="D2", item_type="NA", variant="NA",
                    sentence="The actor won the award"),
                row(dataset="D2", item_type="NA", variant="NA",
                    plaus="implausible", sentence="The actor won the battle")]
        table = load_dataset(write(tmp_path, good), dataset="D2")
        assert len(table) == 1
        bad = [row(dataset="D2", item_type="NA", variant="NA",
                   sentence="The actor won the award"),
               row(dataset="D2", item_type="NA", variant="NA",
                   plaus="implausible", sentence="The singer won the battle")]
        with pytest.raises(LoadError, match="patient"):
            load_dataset(write(tmp_path, bad), dataset="D2")

    def test_dataset_mismatch(self, tmp_path):
        with pytest.raises(LoadError, match="expected dataset D2"):
            load_dataset(write(tmp_path, pair_rows()), dataset="D2")

    def test_round_trip(self, tmp_path):
        lines = pair_rows() + pair_rows("p2", "AA",
                                        plaus="The nanny tutored the boy",
                                        implaus="The boy tutored the nanny")
        table = load_dataset(write(tmp_path, lines))
        out = tmp_path / "again.tsv"
        table.write_tsv(out)
        again = load_dataset(out)
        assert again == table


class TestSentenceIds:
    def test_id_depends_on_all_key_fields(self):
        base = sentence_id("D1", "p1", "plausible", "active", "1")
        assert sentence_id("D1", "p1", "implausible", "active", "1") != base
        assert sentence_id("D1", "p1", "plausible", "passive", "1") != base
        assert sentence_id("D1", "p1", "plausible", "active", "2") != base
        assert sentence_id("D1", "p1", "plausible", "active", "1") == base


class TestRatings:
    def test_load_and_validate(self, tmp_path):
        table = load_dataset(write(tmp_path, pair_rows()))
        ids = [s.sentence_id for s in table.sentences()]
        path = tmp_path / "r.tsv"
        path.write_text(
            "sentence_id\tmean_rating\tn_ratings\traw_ratings\n"
            f"{ids[0]}\t6.5\t18\t-\n"
            f"{ids[1]}\t1.5\t20\t-\n", encoding="utf-8")
        ratings = load_ratings(path)
        validate_ratings_for(table, ratings)
        assert ratings[ids[0]].mean_rating == 6.5

    def test_raw_mean_mismatch_rejected(self, tmp_path):
        path = tmp_path / "r.tsv"
        path.write_text("sentence_id\tmean_rating\tn_ratings\traw_ratings\n"
                        "abc\t4.0\t2\t1,2\n", encoding="utf-8")
        with pytest.raises(LoadError, match="raw mean"):
            load_ratings(path)

    def test_raw_mean_match_accepted(self, tmp_path):
        path = tmp_path / "r.tsv"
        path.write_text("sentence_id\tmean_rating\tn_ratings\traw_ratings\n"
                        "abc\t2.5\t2\t2,3\n", encoding="utf-8")
        assert load_ratings(path)["abc"].raw_ratings == (2.0, 3.0)

    def test_out_of_scale_rejected(self, tmp_path):
        path = tmp_path / "r.tsv"
        path.write_text("sentence_id\tmean_rating\tn_ratings\traw_ratings\n"
                        "abc\t7.5\t20\t-\n", encoding="utf-8")
        with pytest.raises(LoadError, match="outside"):
            load_ratings(path)

    def test_d1_minimum_rating_count(self, tmp_path):
        table = load_dataset(write(tmp_path, pair_rows()))
        ids = [s.sentence_id for s in table.sentences()]
        path = tmp_path / "r.tsv"
        path.write_text("sentence_id\tmean_rating\tn_ratings\traw_ratings\n"
                        f"{ids[0]}\t6.5\t17\t-\n"
                        f"{ids[1]}\t1.5\t20\t-\n", encoding="utf-8")
        with pytest.raises(LoadError, match="at least 18"):
            validate_ratings_for(table, load_ratings(path))


class TestNormalization:
    def test_minmax_endpoints(self):
        out = normalize_scores([("a", 2.0), ("b", 4.0), ("c", 6.0)], "minmax")
        assert [n.value for n in out] == [0.0, 0.5, 1.0]

    def test_minmax_constant_rejected(self):
        with pytest.raises(ValueError, match="zero range"):
            normalize_scores([("a", 5.0), ("b", 5.0), ("c", 5.0)], "minmax")

    def test_zscore_moments(self):
        out = normalize_scores([("a", 1.0), ("b", 2.0), ("c", 3.0), ("d", 6.0)],
                               "zscore")
        values = [n.value for n in out]
        assert math.isclose(sum(values), 0.0, abs_tol=1e-12)
        assert math.isclose(sum(v * v for v in values) / len(values), 1.0,
                            rel_tol=1e-12)

    @given(st.lists(st.floats(-100, 100), min_size=2, max_size=30, unique=True))
    def test_minmax_order_preserving(self, values):
        pairs = [(f"s{i}", v) for i, v in enumerate(values)]
        out = {n.sentence_id: n.value for n in normalize_scores(pairs, "minmax")}
        ranked = sorted(pairs, key=lambda p: p[1])
        normalized = [out[sid] for sid, _ in ranked]
        assert normalized == sorted(normalized)


def _item(pair_id, p_val_id, i_val_id):
    plaus = Sentence("D1", pair_id, "AI", "active", "1", "plausible",
                     "The a b the c", {"agent": (1, 2), "verb": (2, 3),
                                       "patient": (4, 5)})
    implaus = Sentence("D1", pair_id, "AI", "active", "1", "implausible",
                       "The c b the a", {"agent": (1, 2), "verb": (2, 3),
                                         "patient": (4, 5)})
    return MinimalPairItem("D1", pair_id, "AI", "active", "1", plaus, implaus)


class TestMeanPairDifference:
    def test_identical_scores_give_zero(self):
        item = _item("p1", None, None)
        scores = {item.plausible.sentence_id: 0.4,
                  item.implausible.sentence_id: 0.4}
        assert mean_pair_difference(scores, [item]) == (0.0, 0.0)

    def test_mean_and_sample_sd(self):
        items = [_item(f"p{i}", None, None) for i in range(3)]
        diffs = [0.2, 0.5, 0.8]
        scores = {}
        for item, d in zip(items, diffs):
            scores[item.plausible.sentence_id] = 0.9
            scores[item.implausible.sentence_id] = 0.9 - d
        mean, sd = mean_pair_difference(scores, items)
        assert math.isclose(mean, 0.5)
        assert math.isclose(sd, 0.3)  # sample sd of [0.2, 0.5, 0.8]

    def test_antisymmetric_under_label_swap(self):
        items = [_item(f"p{i}", None, None) for i in range(4)]
        scores = {}
        for i, item in enumerate(items):
            scores[item.plausible.sentence_id] = 0.5 + 0.1 * i
            scores[item.implausible.sentence_id] = 0.3 - 0.05 * i
        mean, sd = mean_pair_difference(scores, items)
        swapped = {}
        for item in items:
            swapped[item.plausible.sentence_id] = scores[item.implausible.sentence_id]
            swapped[item.implausible.sentence_id] = scores[item.plausible.sentence_id]
        mean2, sd2 = mean_pair_difference(swapped, items)
        assert math.isclose(mean2, -mean) and math.isclose(sd2, sd)

    def test_empty_selection_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            mean_pair_difference({}, [])

    def test_missing_score_names_pair(self):
        item = _item("p9", None, None)
        with pytest.raises(ValueError, match="p9"):
            mean_pair_difference({item.plausible.sentence_id: 1.0}, [item])
