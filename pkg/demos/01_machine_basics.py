"""The register machine: assembly, step counting, fuel, nondeterminism.

Run from the repository root: python3 demos/01_machine_basics.py
"""

from enumlab import assemble, run_det, run_nondet

# Registers hold unbounded naturals and start at zero, except r0 which holds
# the input.  Every executed instruction costs exactly one step.
doubler = assemble(
    """
    ADD r0, r0, r0
    HALT
    """,
    name="doubler",
)

out = run_det(doubler, 21)
print(f"double(21) = {out.output} in {out.steps} steps ({out.status})")

# Subtraction truncates at zero and there is no multiply; loops do the work.
countdown = assemble(
    """
    SET r1, 1
    loop:
    JZ r0, done
    SUB r0, r1, r0
    JLE r2, r2, loop
    done:
    HALT
    """,
    name="countdown",
)
for n in (0, 5, 50):
    out = run_det(countdown, n)
    print(f"countdown({n}): {out.steps} steps")

# Fuel makes every run total: the budget is spent, not the program trusted.
out = run_det(countdown, 10**9, fuel=1000)
print(f"countdown(10^9) with fuel 1000 -> {out.status} after {out.steps} steps")

# CHOOSE forks the run.  run_nondet explores breadth-first, so min_steps is
# the length of the shortest halting branch; all halting branches must agree
# on the output.
guesser = assemble(
    """
    SET r1, 3
    CHOOSE r2, r1
    JZ r2, lucky
    FAIL
    lucky:
    SET r0, 1
    HALT
    """,
    name="guesser",
)
out = run_nondet(guesser, 0)
print(
    f"guesser: status={out.status} output={out.output} "
    f"min_steps={out.min_steps} branches_explored={out.branches_explored}"
)
