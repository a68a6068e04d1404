"""Whole vs fractional counting on a corpus small enough to check by hand.

Whole counting gives every country on a paper one full credit, so a
paper with authors from three countries is counted three times across
the country table.  Fractional counting splits each paper's single unit
of credit across authors, and an author's share across their countries,
so the table always sums back to the number of papers.

Run:  python3 demos/01_counting_methods.py
"""

from bibrank import (
    AuthorRef,
    Corpus,
    DocType,
    PublicationRecord,
    assign_ranks,
    fractional_count,
    whole_count,
)


def paper(pid: str, *author_countries: tuple[str, ...]) -> PublicationRecord:
    return PublicationRecord(
        id=pid,
        year=2016,
        doc_type=DocType.ARTICLE,
        subjects=frozenset(),
        authors=tuple(AuthorRef(frozenset(cs)) for cs in author_countries),
    )


# Country AA publishes five papers, each with three CC co-authors.
# Country BB publishes four papers, all purely domestic.
corpus = Corpus(
    [paper(f"aa{i}", ("AA",), ("CC",), ("CC",), ("CC",)) for i in range(5)]
    + [paper(f"bb{i}", ("BB",)) for i in range(4)]
)

wc = whole_count(corpus)
fc = fractional_count(corpus)

print("paper counts under each method")
print(f"{'country':>8} {'whole':>6} {'fractional':>11}")
for country in sorted(wc.scores):
    print(f"{country:>8} {wc.score(country):>6.0f} {fc.score(country):>11.2f}")
print(f"{'total':>8} {wc.total():>6.0f} {fc.total():>11.2f}")
print()
print("fractional credit always sums to the number of papers:", len(corpus))
print()

# The two methods do not just rescale the table; they can reorder it.
# AA outpublishes BB in raw paper counts, but almost all of its output
# is shared with CC, so its fractionalised output is far smaller.
whole_ranks = assign_ranks(wc)
frac_ranks = assign_ranks(fc)
print("ranks by whole count:     ", [e.country for e in whole_ranks.entries])
print("ranks by fractional count:", [e.country for e in frac_ranks.entries])
print()
print(
    "AA is ranked", whole_ranks.rank_of("AA"), "by whole count but",
    frac_ranks.rank_of("AA"), "by fractional count; BB moves the other way.",
)
