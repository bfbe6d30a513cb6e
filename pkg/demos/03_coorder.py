"""Co-order: do two listings enumerate in the same relative order?

Run from the repository root: python3 demos/03_coorder.py
"""

from enumlab import corpus, prefix
from enumlab.order import coorder_prefix, coorder_search, rank_pattern

# Rank patterns summarize the relative order of a prefix; two prefixes are
# co-order exactly when their rank patterns match.
evens = prefix(corpus.listing("evens"), 8)
primes = prefix(corpus.listing("primes"), 8)
swapped = prefix(corpus.listing("swap_order"), 8)

print("evens ranks:  ", rank_pattern(evens).ranks)
print("primes ranks: ", rank_pattern(primes).ranks)
print("swapped ranks:", rank_pattern(swapped).ranks)
print()

# Both increasing: co-order even though the sets differ everywhere.
print("evens ~ primes:", coorder_prefix(evens, primes))
# The neighbour swap breaks order at the very first pair.
print("swapped ~ evens:", coorder_prefix(swapped, evens))
print()

# Search scans a family product for the first co-order witness pair.
family_a = [corpus.listing(n) for n in ("swap_order", "squares")]
family_b = [corpus.listing(n) for n in ("identity", "odds")]
pair = coorder_search(family_a, family_b, 16)
print("first co-order pair:", pair.to_dict() if pair else None)
