"""Stance-archive parsing, user scoring, and retweet network construction."""

from __future__ import annotations

import json
import logging

import pytest

from polarimeter import (
    InputError,
    build_retweet_network,
    read_stance_records,
    score_users,
    stance_counts,
)
from polarimeter.stance import AGAINST, FAVOR, NEUTRAL, StanceRecord


def rec(tweet_id, author, stance, retweeters=()):
    return StanceRecord(
        tweet_id=tweet_id, author=author, stance=stance,
        retweeters=tuple(retweeters),
    )


def write_records(path, rows):
    path.write_text(
        "".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8"
    )
    return str(path)


# -- parsing -------------------------------------------------------------------


def test_reads_wellformed_archive(tmp_path):
    path = write_records(tmp_path / "a.jsonl", [
        {"tweet_id": "1", "author": "u1", "stance": "favor", "retweeters": ["u2"]},
        {"tweet_id": "2", "author": "u3", "stance": "against", "retweeters": []},
    ])
    records = read_stance_records(path)
    assert len(records) == 2
    assert records[0] == rec("1", "u1", "favor", ["u2"])
    assert records[1].retweeters == ()


def test_bad_json_line_names_file_and_line(tmp_path):
    path = write_records(tmp_path / "a.jsonl", [
        {"tweet_id": "1", "author": "u1", "stance": "favor", "retweeters": []},
    ])
    with open(path, "a", encoding="utf-8") as fh:
        fh.write("{not json\n")
    with pytest.raises(InputError, match=r"a\.jsonl:2"):
        read_stance_records(path)


def test_missing_field_rejected(tmp_path):
    path = write_records(tmp_path / "a.jsonl", [
        {"tweet_id": "1", "stance": "favor", "retweeters": []},
    ])
    with pytest.raises(InputError, match="author"):
        read_stance_records(path)


def test_unknown_stance_rejected(tmp_path):
    path = write_records(tmp_path / "a.jsonl", [
        {"tweet_id": "1", "author": "u", "stance": "meh", "retweeters": []},
    ])
    with pytest.raises(InputError, match="stance"):
        read_stance_records(path)


def test_duplicate_tweet_id_rejected(tmp_path):
    path = write_records(tmp_path / "a.jsonl", [
        {"tweet_id": "1", "author": "u", "stance": "favor", "retweeters": []},
        {"tweet_id": "1", "author": "v", "stance": "favor", "retweeters": []},
    ])
    with pytest.raises(InputError, match="duplicate"):
        read_stance_records(path)


def test_retweeters_must_be_a_list_of_strings(tmp_path):
    path = write_records(tmp_path / "a.jsonl", [
        {"tweet_id": "1", "author": "u", "stance": "favor", "retweeters": "u2"},
    ])
    with pytest.raises(InputError, match="retweeters"):
        read_stance_records(path)


def test_blank_retweeter_entries_dropped_with_warning(tmp_path, caplog):
    path = write_records(tmp_path / "a.jsonl", [
        {"tweet_id": "1", "author": "u", "stance": "favor",
         "retweeters": ["", "v", "  "]},
    ])
    with caplog.at_level(logging.WARNING, logger="polarimeter.stance"):
        records = read_stance_records(path)
    assert records[0].retweeters == ("v",)
    assert "2" in caplog.text


def test_blank_lines_are_skipped(tmp_path):
    path = tmp_path / "a.jsonl"
    path.write_text(
        '\n{"tweet_id": "1", "author": "u", "stance": "neutral", '
        '"retweeters": []}\n\n',
        encoding="utf-8",
    )
    assert len(read_stance_records(str(path))) == 1


# -- counting and scoring -------------------------------------------------------


def test_author_and_retweeters_accrue_inherited_stance():
    records = [
        rec("1", "a", "favor", ["b", "c"]),
        rec("2", "b", "against", ["a"]),
    ]
    counts = stance_counts(records)
    assert (counts["a"].favor, counts["a"].against) == (1, 1)
    assert (counts["b"].favor, counts["b"].against) == (1, 1)
    assert (counts["c"].favor, counts["c"].against) == (1, 0)


def test_repeat_retweets_count_every_event():
    records = [rec("1", "a", "favor", ["b", "b", "b"])]
    assert stance_counts(records)["b"].favor == 3


def test_score_formula_and_strict_boundaries():
    # F=2, A=1, N=2 gives exactly 0.2: inside the neutral band.
    records = [
        rec("1", "x", "favor"), rec("2", "x", "favor"),
        rec("3", "x", "against"),
        rec("4", "x", "neutral"), rec("5", "x", "neutral"),
    ]
    score, opinion = score_users(records)["x"]
    assert score == pytest.approx(0.2)
    assert opinion == NEUTRAL


def test_score_just_past_the_boundary_is_favor():
    # F=3, A=1, N=1: score 0.4 > 0.2.
    records = [
        rec("1", "x", "favor"), rec("2", "x", "favor"), rec("3", "x", "favor"),
        rec("4", "x", "against"), rec("5", "x", "neutral"),
    ]
    score, opinion = score_users(records)["x"]
    assert score == pytest.approx(0.4)
    assert opinion == FAVOR


def test_score_negative_side():
    records = [rec("1", "x", "against"), rec("2", "x", "against"),
               rec("3", "x", "favor")]
    score, opinion = score_users(records)["x"]
    assert score == pytest.approx(-1 / 3)
    assert opinion == AGAINST
    # exactly -0.2 stays neutral: F=1, A=2, N=2.
    records = [rec("1", "y", "favor"), rec("2", "y", "against"),
               rec("3", "y", "against"), rec("4", "y", "neutral"),
               rec("5", "y", "neutral")]
    score, opinion = score_users(records)["y"]
    assert score == pytest.approx(-0.2)
    assert opinion == NEUTRAL


def test_explicit_user_set_covers_silent_users(caplog):
    records = [rec("1", "a", "favor", ["b"])]
    with caplog.at_level(logging.WARNING, logger="polarimeter.stance"):
        scores = score_users(records, users=["a", "b", "ghost"])
    assert scores["ghost"] == (0.0, NEUTRAL)
    assert "1 user(s)" in caplog.text


# -- network construction --------------------------------------------------------


def test_edge_weight_counts_events_in_both_directions():
    records = [
        rec("1", "a", "favor", ["b", "b"]),
        rec("2", "b", "favor", ["a"]),
    ]
    g = build_retweet_network(records)
    assert g.edges == (("a", "b", 3.0),)


def test_self_retweets_dropped_with_warning(caplog):
    records = [rec("1", "a", "favor", ["a", "b"])]
    with caplog.at_level(logging.WARNING, logger="polarimeter.stance"):
        g = build_retweet_network(records)
    assert g.edges == (("a", "b", 1.0),)
    assert "self-retweet" in caplog.text


def test_archive_with_no_edges_is_an_input_error():
    records = [rec("1", "a", "favor"), rec("2", "b", "against")]
    with pytest.raises(InputError, match="no retweet edges"):
        build_retweet_network(records)


def test_unretweeted_authors_stay_as_isolated_labeled_nodes():
    records = [
        rec("1", "a", "favor", ["b"]),
        rec("2", "quiet", "against"),
    ]
    g = build_retweet_network(records)
    assert "quiet" in g.nodes
    assert g.node_count == 3
    assert g.edge_count == 1
    assert g.opinions["quiet"] == AGAINST


def test_network_uses_three_opinion_slots_with_fixed_mapping():
    records = [
        rec("1", "f", "favor", ["n"]),
        rec("2", "a", "against", ["n"]),
        rec("3", "n", "neutral"),
    ]
    g = build_retweet_network(records)
    assert g.num_opinions == 3
    assert g.opinions["f"] == FAVOR == 2
    assert g.opinions["a"] == AGAINST == 0
    # n: 1 neutral authored + 1 favor + 1 against inherited -> score 0.
    assert g.opinions["n"] == NEUTRAL == 1


def test_total_edge_weight_equals_non_self_retweet_events():
    records = [
        rec("1", "a", "favor", ["b", "c", "a"]),
        rec("2", "b", "neutral", ["c"]),
        rec("3", "c", "against", ["a", "b"]),
    ]
    g = build_retweet_network(records)
    assert g.total_weight == pytest.approx(5.0)
