"""Listings: programs as enumerations, with per-input step profiles.

Run from the repository root: python3 demos/02_listings_and_profiles.py
"""

from enumlab import audit, corpus, prefix, time_profile
from enumlab.listing import rows_to_csv

# A listing is a program read as a function n -> n-th element of a set.
squares = corpus.listing("squares")
p = prefix(squares, 10)
t = time_profile(squares, 10)
print("squares prefix:", p.values)
print("squares steps: ", t.steps)
print()
print(rows_to_csv(p, t))

# audit checks injectivity and, given a decider, membership of every value.
decider = corpus.get("square_decider")
report = audit(p, decider=decider.program)
print(f"audit(squares, square_decider): ok={report.ok}")

# A listing that repeats a value fails injectivity with the earliest pair.
from enumlab.listing import Prefix

bad = Prefix((3, 1, 4, 1, 5))
print("audit((3,1,4,1,5)):", audit(bad))
