"""Retweet-network construction from archived stance-labeled tweet records.

Input is JSON-lines: one record per original tweet with its author, a stance
label (favor / against / neutral), and the users who retweeted it. A retweet
inherits the stance of the original tweet, so every user accumulates stance
counts from tweets authored plus retweets made; the per-user score
(favor - against) / (favor + against + neutral) is discretized at +/-0.2
into a three-opinion labeling of the undirected retweet graph.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import InputError
from .graph import LabeledGraph

logger = logging.getLogger(__name__)

STANCES = ("favor", "against", "neutral")

# Opinion indices of the output graph, in fixed documented order.
AGAINST, NEUTRAL, FAVOR = 0, 1, 2
OPINION_NAMES = ("against", "neutral", "favor")

SCORE_THRESHOLD = 0.2


@dataclass(frozen=True)
class StanceRecord:
    """One original tweet: its author, stance, and retweeter user ids."""

    tweet_id: str
    author: str
    stance: str
    retweeters: tuple[str, ...]


@dataclass(frozen=True)
class UserStanceCounts:
    favor: int = 0
    against: int = 0
    neutral: int = 0

    @property
    def total(self) -> int:
        return self.favor + self.against + self.neutral


def read_stance_records(path) -> list[StanceRecord]:
    """Parse a JSON-lines archive of stance-labeled tweet records.

    Empty or whitespace retweeter ids are dropped with a per-row warning;
    malformed rows and duplicate tweet ids are hard errors naming the line.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc), path=path) from exc

    records: list[StanceRecord] = []
    seen_ids: set[str] = set()
    dropped = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc.msg}", path=path, line=lineno) from None
        if not isinstance(obj, dict):
            raise InputError("record is not a JSON object", path=path, line=lineno)

        tweet_id = obj.get("tweet_id")
        author = obj.get("author")
        stance = obj.get("stance")
        retweeters = obj.get("retweeters")
        if not isinstance(tweet_id, str) or not tweet_id:
            raise InputError("missing or empty 'tweet_id'", path=path, line=lineno)
        if not isinstance(author, str) or not author.strip():
            raise InputError("missing or empty 'author'", path=path, line=lineno)
        if stance not in STANCES:
            raise InputError(
                f"stance must be one of {STANCES}, got {stance!r}",
                path=path,
                line=lineno,
            )
        if not isinstance(retweeters, list) or not all(
            isinstance(r, str) for r in retweeters
        ):
            raise InputError(
                "'retweeters' must be a list of strings", path=path, line=lineno
            )
        if tweet_id in seen_ids:
            raise InputError(f"duplicate tweet_id {tweet_id!r}", path=path, line=lineno)
        seen_ids.add(tweet_id)

        kept = []
        for r in retweeters:
            r = r.strip()
            if not r:
                dropped += 1
                logger.warning("%s:%d: empty retweeter id skipped", path, lineno)
                continue
            kept.append(r)
        records.append(
            StanceRecord(
                tweet_id=tweet_id,
                author=author.strip(),
                stance=stance,
                retweeters=tuple(kept),
            )
        )
    if dropped:
        logger.warning("%s: skipped %d empty retweeter id(s) in total", path, dropped)
    return records


def stance_counts(records: Iterable[StanceRecord]) -> dict[str, UserStanceCounts]:
    """Favor/against/neutral item counts per user.

    Authoring a tweet counts once for its author; every retweet event counts
    once for the retweeter with the inherited stance.
    """
    counts: dict[str, dict[str, int]] = {}

    def bump(user: str, stance: str):
        per_user = counts.setdefault(user, dict.fromkeys(STANCES, 0))
        per_user[stance] += 1

    for record in records:
        bump(record.author, record.stance)
        for retweeter in record.retweeters:
            if retweeter:
                bump(retweeter, record.stance)

    return {
        user: UserStanceCounts(
            favor=c["favor"], against=c["against"], neutral=c["neutral"]
        )
        for user, c in counts.items()
    }


def score_users(
    records: Iterable[StanceRecord], users: Iterable[str] | None = None
) -> dict[str, tuple[float, int]]:
    """Per-user (score, opinion index): favor above +0.2, against below -0.2,
    neutral otherwise (boundaries are strict).

    By default the result covers every user with at least one stance item.
    Passing `users` scores exactly that set instead; members with no stance
    items score 0.0 and fall back to neutral, with a counted warning.
    """
    counts = stance_counts(records)
    universe = list(counts) if users is None else list(users)
    scores: dict[str, tuple[float, int]] = {}
    unscored = 0
    for user in universe:
        per_user = counts.get(user)
        if per_user is None:
            unscored += 1
            scores[user] = (0.0, NEUTRAL)
            continue
        score = (per_user.favor - per_user.against) / per_user.total
        if score > SCORE_THRESHOLD:
            opinion = FAVOR
        elif score < -SCORE_THRESHOLD:
            opinion = AGAINST
        else:
            opinion = NEUTRAL
        scores[user] = (score, opinion)
    if unscored:
        logger.warning("%d user(s) had no stance items; labeled neutral", unscored)
    return scores


def build_retweet_network(records: Iterable[StanceRecord]) -> LabeledGraph:
    """Undirected retweet graph: edge weight counts retweet events between
    two users in either direction. Self-retweets are dropped (counted);
    authors nobody retweeted remain as isolated nodes."""
    records = list(records)
    weights: dict[tuple[str, str], int] = {}
    self_retweets = 0
    for record in records:
        author = record.author
        for retweeter in record.retweeters:
            if not retweeter:
                continue
            if retweeter == author:
                self_retweets += 1
                continue
            key = (author, retweeter) if author <= retweeter else (retweeter, author)
            weights[key] = weights.get(key, 0) + 1
    if self_retweets:
        logger.warning("dropped %d self-retweet event(s)", self_retweets)
    if not weights:
        raise InputError("no retweet edges in record set")

    opinions = {user: op for user, (_, op) in score_users(records).items()}
    edges = [(u, v, float(c)) for (u, v), c in weights.items()]
    return LabeledGraph(edges, opinions, num_opinions=3)
