"""The SAT kit: integer-coded formulas, guess-and-check, slow enumeration.

Run from the repository root: python3 demos/07_sat_playground.py
"""

from enumlab import corpus, prefix, run_det, run_nondet
from enumlab.corpus import CNF, sat_brute_force, sat_decode, sat_encode

# Formulas pack into a single natural: variable count, clause count, then a
# stream of 5-bit literal chunks.
phi = CNF(3, ((1, -2), (-1, 3), (2,)))
code = sat_encode(phi)
print(f"{phi} -> code {code}")
print("decodes back:", sat_decode(code) == phi)
print("satisfiable:", sat_brute_force(code))

unsat = sat_encode(CNF(1, ((1,), (-1,))))
print(f"(x1) and (not x1) -> code {unsat}, satisfiable: {sat_brute_force(unsat)}")

# The deterministic machine decider brute-forces assignments in odometer
# order; the nondeterministic acceptor guesses the bits and checks once.
decider = corpus.get("sat_decider").program
guess = corpus.get("sat_guess").program

det = run_det(decider, code)
nd = run_nondet(guess, code)
print(f"\nmachine decider: output={det.output} in {det.steps} steps")
print(f"guess-and-check: output={nd.output}, shortest accepting branch"
      f" {nd.min_steps} steps, {nd.branches_explored} instructions explored")

# On an unsatisfiable code every branch dies; there is nothing to accept.
nd = run_nondet(guess, unsat)
print(f"guess on unsat: status={nd.status}")

# sat_codes lists the satisfiable codes in increasing order by rescanning
# everything below; enumeration this way is correct and deliberately slow.
sat_codes = corpus.listing("sat_codes")
p = prefix(sat_codes, 16)
print("\nfirst satisfiable codes:", p.values)
