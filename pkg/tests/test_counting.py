from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bibrank.counting import (
    CountMethod,
    FractionalMode,
    fractional_count,
    slice_corpus,
    subject_group_count,
    whole_count,
)
from bibrank.errors import UnknownGroupError
from bibrank.model import ALL_FIELDS, AuthorRef, Corpus, PublicationRecord, UNRESOLVED

from conftest import rec
from oracles import (
    oracle_fractional_author,
    oracle_fractional_country,
    oracle_whole,
    random_corpus,
)


class TestWholeCount:
    def test_every_country_gets_full_credit(self, mixed_corpus):
        table = whole_count(mixed_corpus)
        assert table.scores == {
            "CN": 1.0,
            "FR": 1.0,
            "GB": 2.0,
            "US": 3.0,
            UNRESOLVED: 2.0,
        }
        assert table.records_counted == 6

    def test_multinational_record_counted_once_per_country(self):
        table = whole_count(Corpus((rec("p", ["US", "GB"], ["US"]),)))
        assert table.scores == {"GB": 1.0, "US": 1.0}

    def test_sum_exceeds_record_count_with_collaboration(self, mixed_corpus):
        assert whole_count(mixed_corpus).total() > len(mixed_corpus)


class TestFractionalCount:
    def test_author_mode_splits_by_author_then_country(self):
        # one US author, one US+GB author, one unresolved: shares are
        # built over the common denominator 6 so they add up exactly
        corpus = Corpus((rec("p", ["US"], ["US", "GB"], []),))
        table = fractional_count(corpus)
        assert table.scores == {
            "GB": pytest.approx(1 / 6),
            "US": pytest.approx(1 / 2),
            UNRESOLVED: pytest.approx(1 / 3),
        }
        assert table.method is CountMethod.FRACTIONAL_AUTHOR

    def test_author_mode_matches_exact_fractions(self, mixed_corpus):
        table = fractional_count(mixed_corpus)
        expected = oracle_fractional_author(mixed_corpus)
        assert set(table.scores) == set(expected)
        for country, share in expected.items():
            assert table.scores[country] == pytest.approx(float(share), abs=1e-12)

    def test_country_mode_splits_by_distinct_country(self, mixed_corpus):
        table = fractional_count(mixed_corpus, FractionalMode.COUNTRY)
        expected = oracle_fractional_country(mixed_corpus)
        for country, share in expected.items():
            assert table.scores[country] == pytest.approx(float(share), abs=1e-12)

    def test_domestic_record_contributes_exactly_one(self):
        # three same-country authors: 3 * (1/3) must not leave float dust
        table = fractional_count(Corpus((rec("p", ["CN"], ["CN"], ["CN"]),)))
        assert table.scores == {"CN": 1.0}

    def test_all_unresolved_record_credits_zz_fully(self):
        for mode in FractionalMode:
            table = fractional_count(Corpus((rec("p", [], []),)), mode)
            assert table.scores == {UNRESOLVED: 1.0}

    def test_score_lookup_defaults_to_zero(self, mixed_corpus):
        assert fractional_count(mixed_corpus).score("XX") == 0.0


class TestSubjectGroups:
    def test_slices_follow_scheme_membership(self, mixed_corpus):
        tables = subject_group_count(mixed_corpus, CountMethod.WHOLE)
        assert list(tables) == [ALL_FIELDS, "phys", "health", "life"]
        assert tables[ALL_FIELDS].records_counted == 6
        assert tables["phys"].records_counted == 2  # p1, p2
        assert tables["health"].records_counted == 2  # p2, p3
        assert tables["life"].records_counted == 3  # p2, p3, p4

    def test_group_membership_counted_once_per_record(self, scheme):
        # MED and BIO both map into "life"; the record is still one paper
        corpus = Corpus((rec("p", ["US"], subjects=("MED", "BIO")),), scheme)
        assert subject_group_count(corpus)["life"].scores == {"US": 1.0}

    def test_slice_label_travels_with_table(self, mixed_corpus):
        tables = subject_group_count(mixed_corpus)
        assert tables["phys"].slice_label == "phys"

    def test_unknown_group_raises(self, mixed_corpus):
        with pytest.raises(UnknownGroupError):
            subject_group_count(mixed_corpus, groups=["astrology"])
        with pytest.raises(UnknownGroupError):
            slice_corpus(mixed_corpus, "astrology")

    def test_empty_subjects_match_only_all(self, mixed_corpus):
        tables = subject_group_count(mixed_corpus)
        in_groups = set()
        for name in mixed_corpus.scheme.names:
            for r in slice_corpus(mixed_corpus, name):
                in_groups.add(r.id)
        assert "p5" not in in_groups
        assert "p6" not in in_groups
        assert tables[ALL_FIELDS].records_counted == 6


# ---------------------------------------------------------------------------
# property tests

_pool = ["US", "CN", "GB", "DE", "IN", "JP"]


@st.composite
def corpora(draw, max_records: int = 24) -> Corpus:
    n = draw(st.integers(min_value=0, max_value=max_records))
    records = []
    for i in range(n):
        n_authors = draw(st.integers(min_value=1, max_value=4))
        authors = []
        for _ in range(n_authors):
            k = draw(st.integers(min_value=0, max_value=3))
            authors.append(
                AuthorRef(frozenset(draw(st.permutations(_pool))[:k]))
            )
        records.append(rec(f"r{i:04d}", *[tuple(a.countries) for a in authors]))
    return Corpus(tuple(records))


@settings(max_examples=60, deadline=None)
@given(corpora())
def test_fractional_mass_is_conserved(corpus):
    for mode in FractionalMode:
        table = fractional_count(corpus, mode)
        assert table.total() == pytest.approx(len(corpus), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(corpora())
def test_fractional_never_exceeds_whole(corpus):
    wc = whole_count(corpus)
    for mode in FractionalMode:
        fc = fractional_count(corpus, mode)
        for country, share in fc.scores.items():
            assert share <= wc.scores[country]


@settings(max_examples=60, deadline=None)
@given(corpora(), st.randoms(use_true_random=False))
def test_scores_invariant_under_permutation(corpus, rng):
    records = list(corpus.records)
    rng.shuffle(records)
    shuffled = Corpus(
        tuple(
            PublicationRecord(
                id=r.id,
                year=r.year,
                doc_type=r.doc_type,
                subjects=r.subjects,
                authors=tuple(sorted(r.authors, key=lambda a: rng.random())),
            )
            for r in records
        )
    )
    assert whole_count(shuffled).scores == whole_count(corpus).scores
    for mode in FractionalMode:
        assert (
            fractional_count(shuffled, mode).scores
            == fractional_count(corpus, mode).scores
        )


@settings(max_examples=60, deadline=None)
@given(corpora(), st.sampled_from(_pool))
def test_appending_domestic_record_adds_exactly_one(corpus, country):
    # the new id sorts last, so every earlier accumulation step is untouched
    extended = Corpus(corpus.records + (rec("zzzz", (country,), (country,)),))
    for count in (whole_count, fractional_count):
        before = count(corpus).scores
        after = count(extended).scores
        assert after[country] == before.get(country, 0.0) + 1.0
        for other, value in before.items():
            if other != country:
                assert after[other] == value


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_counts_match_oracles_on_random_corpora(seed):
    corpus = random_corpus(random.Random(seed), 40)
    assert whole_count(corpus).scores == {
        c: float(v) for c, v in oracle_whole(corpus).items()
    }
    for mode, oracle in (
        (FractionalMode.AUTHOR, oracle_fractional_author),
        (FractionalMode.COUNTRY, oracle_fractional_country),
    ):
        table = fractional_count(corpus, mode)
        expected = oracle(corpus)
        assert set(table.scores) == set(expected)
        for country, share in expected.items():
            assert table.scores[country] == pytest.approx(float(share), abs=1e-9)
