"""Same set, same order, different speed: primes vs padded primes.

Run from the repository root: python3 demos/04_velocity.py
"""

from enumlab import corpus, prefix, time_profile
from enumlab.order import coorder_prefix
from enumlab.rapidity import cumulative, more_rapid, strictly_more_rapid

HORIZON = 40

plain = corpus.listing("primes")
padded = corpus.listing("primes_padded")

# The two listings produce identical values, so they are trivially co-order.
pa = prefix(plain, HORIZON)
pb = prefix(padded, HORIZON)
assert pa.values == pb.values
print("co-order:", coorder_prefix(pa, pb).co_order)

# But the padded one pays a linear prologue on every input.
tp = time_profile(plain, HORIZON)
tq = time_profile(padded, HORIZON)
for n in (0, 1, 10, 39):
    print(f"  n={n:3d}  primes {tp.steps[n]:7,}  padded {tq.steps[n]:7,}")

strict = strictly_more_rapid(tp, tq)
eventual = more_rapid(tp, tq)
print("strictly more rapid:", strict.strictly_more_rapid)
print("eventual witness m: ", eventual.witness_m)
print("cumulative sums (first 6):")
print("  primes:", cumulative(tp)[:6])
print("  padded:", cumulative(tq)[:6])
