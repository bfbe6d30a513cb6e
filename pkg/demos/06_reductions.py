"""Many-one reductions: verification, equivalence, and consistency.

Run from the repository root: python3 demos/06_reductions.py
"""

from enumlab import corpus
from enumlab.order import increasing_listing
from enumlab.reduction import (
    PU,
    equivalence,
    turing_consistency,
    verify_reduction,
)

even = corpus.get("even_decider").program
odd = corpus.get("odd_decider").program
plus_one = corpus.get("even_to_odd").program
minus_one = corpus.get("odd_to_even").program
identity = corpus.get("broken_even_to_odd").program

# x+1 maps EVEN into ODD and vice versa: every x in 0..499 satisfies
# even(x) == odd(x+1).
good = verify_reduction(plus_one, even, odd, (0, 499))
print(f"x+1 as EVEN->ODD: verified={good.verified},"
      f" map runtime fit ~ (n+1)^{good.fit.exponent_estimate:.2f}")

# The identity map is not a reduction; the report pinpoints where.
bad = verify_reduction(identity, even, odd, (0, 499))
print(f"identity as EVEN->ODD: verified={bad.verified},"
      f" first violations {bad.violations[:3]}")

# Equivalence = reductions both ways; the pu/npu flavours also demand the
# two sets be co-order, via increasing prefixes of their deciders.
prefixes = (increasing_listing(even, 32), increasing_listing(odd, 32))
eq = equivalence(plus_one, minus_one, even, odd, (1, 499),
                 kind=PU, coorder_input=prefixes)
print(f"EVEN equivalent to ODD (pu): valid={eq.valid}")

# A verified reduction lets the target decider answer source questions.
report = turing_consistency(plus_one, even, odd, (0, 499))
print(f"deciding EVEN via odd(f(x)): consistent={report.consistent}")
