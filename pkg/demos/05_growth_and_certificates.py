"""Growth fitting, polynomial bounds, and archivable certificates.

Run from the repository root: python3 demos/05_growth_and_certificates.py
"""

import json

from enumlab import corpus, time_profile
from enumlab.complexity import (
    certify_p_coorder,
    check_bound,
    fit_poly_exponent,
    lift_certificate,
    verify_certificate,
)
from enumlab.order import increasing_listing

# Fit a polynomial exponent to a measured profile (log-log regression over
# the upper half, where transients have died down).
t = time_profile(corpus.listing("squares"), 128)
fit = fit_poly_exponent(t)
print(f"squares listing runtime ~ (n+1)^{fit.exponent_estimate:.3f}"
      f" (residual {fit.residual:.1e})")

# An explicit bound check: steps[n] <= c * (n+1)^k for all n >= n0.
print("bound k=1, c=7:", check_bound(t, 1, 7.0, 0))
print("bound k=1, c=5:", check_bound(t, 1, 5.0, 0))

# A certificate packages: the subject's increasing prefix, a witness listing
# that is co-order with it, and a polynomial bound on the witness's profile.
decider = corpus.get("even_decider")
subject = increasing_listing(decider.program, 64)
identity = corpus.listing("identity")
cert = certify_p_coorder(subject, identity, 1, 1.0, 0, 64, subject_name="evens")
print("\nP certificate valid:", cert.valid)

# The deterministic certificate lifts to a nondeterministic one: the same
# witness re-certified under breadth-first execution, same constants.
lifted = lift_certificate(cert)
print("lifted kind:", lifted.kind, "valid:", lifted.valid)

# Certificates survive a JSON round trip and re-verify from their own
# evidence; pass the witness to re-measure the profile as well.
data = json.loads(cert.to_json())
ok, detail = verify_certificate(data, witness=identity)
print("re-verified:", ok, detail)
