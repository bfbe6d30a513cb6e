"""Corpus programs against their closed-form oracles, plus the SAT kit."""

import itertools
import random

import pytest

from enumlab import corpus
from enumlab.corpus import (
    CNF,
    MAX_SAT_CLAUSES,
    MAX_SAT_VARS,
    sat_brute_force,
    sat_check_program,
    sat_decode,
    sat_encode,
)
from enumlab.errors import SatCodecError, UnknownNameError
from enumlab.listing import audit, prefix, time_profile
from enumlab.machine import run_det, run_nondet
from enumlab.rapidity import more_rapid, strictly_more_rapid

from oracles import shim_branches, sieve_primes, truth_table_sat

SEED = 20260814


@pytest.fixture(scope="module")
def listing_prefixes():
    """Audit-horizon prefixes, computed once and shared across tests."""
    out = {}
    for name in corpus.names():
        e = corpus.get(name)
        if e.kind == "listing":
            out[name] = prefix(corpus.listing(name), e.audit_horizon)
    return out


def random_cnf(rng, max_vars=MAX_SAT_VARS, max_clauses=MAX_SAT_CLAUSES):
    v = rng.randrange(max_vars + 1)
    m = rng.randrange(max_clauses + 1) if v else rng.randrange(2)
    clauses = []
    for _ in range(m):
        width = rng.randrange(4) if v else 0
        clause = tuple(
            rng.choice((1, -1)) * rng.randrange(1, v + 1) for _ in range(width)
        )
        clauses.append(clause)
    return CNF(v, tuple(clauses))


# --- integer coding -----------------------------------------------------------

class TestSatCodec:
    def test_single_positive_literal_code(self):
        # golden value, locked: v=1 | m=1 << 4 | chunk 2 << 9
        assert sat_encode(CNF(1, ((1,),))) == 1041

    def test_header_only_codes(self):
        assert sat_encode(CNF(0, ())) == 0
        assert sat_encode(CNF(5, ())) == 5
        assert sat_decode(12) == CNF(12, ())

    def test_round_trip_random(self):
        rng = random.Random(SEED)
        for _ in range(500):
            cnf = random_cnf(rng)
            assert sat_decode(sat_encode(cnf)) == cnf

    def test_empty_clause_round_trip(self):
        cnf = CNF(3, ((1, -2), (), (3,)))
        assert sat_decode(sat_encode(cnf)) == cnf

    def test_encode_rejects_out_of_cap(self):
        with pytest.raises(SatCodecError):
            sat_encode(CNF(13, ()))
        with pytest.raises(SatCodecError):
            sat_encode(CNF(1, (((1,),) * 17)))
        with pytest.raises(SatCodecError):
            sat_encode(CNF(1, ((0,),)))
        with pytest.raises(SatCodecError):
            sat_encode(CNF(1, ((2,),)))

    def test_decode_rejects_malformed(self):
        with pytest.raises(SatCodecError):
            sat_decode(-1)
        with pytest.raises(SatCodecError):
            sat_decode(13)  # v = 13
        with pytest.raises(SatCodecError):
            sat_decode(17 << 4)  # m = 17
        with pytest.raises(SatCodecError):
            sat_decode(1 << 9 | 1 << 4 | 1)  # chunk 1 has var 0
        with pytest.raises(SatCodecError):
            sat_decode(4 << 9 | 1 << 4 | 1)  # x2 under v=1
        with pytest.raises(SatCodecError):
            sat_decode(2 << 9)  # payload with m = 0

    def test_brute_force_basics(self):
        assert sat_brute_force(0) is True
        assert sat_brute_force(1041) is True
        unsat = sat_encode(CNF(1, ((1,), (-1,))))
        assert sat_brute_force(unsat) is False
        empty_clause = sat_encode(CNF(2, ((),)))
        assert sat_brute_force(empty_clause) is False

    def test_brute_force_against_truth_table(self):
        rng = random.Random(SEED + 1)
        for _ in range(300):
            cnf = random_cnf(rng, max_vars=8, max_clauses=6)
            assert sat_brute_force(sat_encode(cnf)) == truth_table_sat(
                cnf.num_vars, cnf.clauses
            )


# --- SAT machine programs ------------------------------------------------------

class TestSatMachine:
    def test_decider_matches_host_on_small_codes(self):
        entry = corpus.get("sat_decider")
        for code in range(2049):
            out = run_det(entry.program, code, fuel=10**6)
            assert out.status == "halted"
            assert out.output == entry.oracle(code), code

    def test_guess_accepts_exactly_the_satisfiable_codes(self):
        guess = corpus.get("sat_guess")
        host = corpus.get("sat_decider").oracle
        for code in range(600):
            out = run_nondet(guess.program, code, fuel=10**6, branch_cap=10**7)
            if host(code):
                assert out.status == "halted" and out.output == 1, code
            else:
                assert out.status in ("no_success", "failed"), code

    def test_guess_shortcut_on_header_only_codes(self):
        guess = corpus.get("sat_guess").program
        for code in range(13):
            out = run_nondet(guess, code, fuel=20, branch_cap=10**6)
            assert (out.status, out.min_steps, out.output) == ("halted", 5, 1)

    def test_guess_min_steps_equals_branch_enumeration(self):
        # depth-first oracle over the full choice tree at tiny fuel
        guess = corpus.get("sat_guess").program
        rng = random.Random(SEED + 2)
        compared = 0
        for _ in range(50):
            cnf = random_cnf(rng, max_vars=4, max_clauses=3)
            code = sat_encode(cnf)
            fuel = 20 if compared % 2 else 400
            halts = shim_branches(guess, code, fuel)
            out = run_nondet(guess, code, fuel=fuel, branch_cap=10**7)
            if halts:
                assert out.status == "halted"
                assert out.min_steps == halts[0][0]
            else:
                assert out.status != "halted"
            compared += 1

    def test_guess_min_steps_equals_best_check_twin(self):
        # bits past the variable count are skipped by the guards, so the
        # twin search only needs to range over the first v positions
        guess = corpus.get("sat_guess").program
        codes = [
            1041,
            sat_encode(CNF(3, ((1, -2), (-1, 3), (2,)))),
            sat_encode(CNF(2, ((-1, -2),))),
            sat_encode(CNF(4, ((1, 2, 3, 4),))),
        ]
        for code in codes:
            out = run_nondet(guess, code, fuel=10**6, branch_cap=10**7)
            v = code & 15
            best = None
            for live in itertools.product((0, 1), repeat=v):
                bits = live + (0,) * (12 - v)
                check = run_det(sat_check_program(bits), code, fuel=10**6)
                if check.status == "halted":
                    best = check.steps if best is None else min(best, check.steps)
            assert out.status == "halted" and out.min_steps == best, code

    def test_check_twin_ignores_bits_past_v(self):
        code = 1041  # v = 1
        base = run_det(sat_check_program((1,) + (0,) * 11), code, fuel=10**6)
        noisy = run_det(sat_check_program((1,) * 12), code, fuel=10**6)
        assert (base.status, base.output, base.steps) == (
            noisy.status,
            noisy.output,
            noisy.steps,
        )

    def test_check_twin_validates_bits(self):
        with pytest.raises(ValueError):
            sat_check_program((0, 1))
        with pytest.raises(ValueError):
            sat_check_program((2,) * 12)

    def test_sat_codes_prefix_frozen(self):
        ell = corpus.listing("sat_codes")
        p = prefix(ell, 16)
        assert p.values == tuple(range(13)) + (1041, 1042, 1043)


# --- registry-wide invariants ----------------------------------------------------

class TestRegistry:
    def test_names_sorted_and_get_roundtrip(self):
        ns = corpus.names()
        assert ns == sorted(ns)
        for name in ns:
            assert corpus.get(name).name == name

    def test_unknown_name(self):
        with pytest.raises(UnknownNameError):
            corpus.get("nope")
        with pytest.raises(UnknownNameError):
            corpus.listing("even_decider")

    def test_kinds_and_notes(self):
        kinds = {"listing": 0, "decider": 0, "reduction": 0}
        for name in corpus.names():
            e = corpus.get(name)
            kinds[e.kind] += 1
            assert e.notes
        assert kinds == {"listing": 9, "decider": 7, "reduction": 3}

    def test_every_listing_matches_its_oracle(self, listing_prefixes):
        for name, p in listing_prefixes.items():
            e = corpus.get(name)
            assert p.values == tuple(
                e.oracle(n) for n in range(e.audit_horizon)
            ), name

    def test_every_listing_passes_audit_with_paired_decider(
        self, listing_prefixes
    ):
        for name, p in listing_prefixes.items():
            e = corpus.get(name)
            decider = corpus.get(e.paired_decider)
            report = audit(p, decider=decider.program, fuel=decider.fuel)
            assert report.ok, (name, report)

    def test_total_deciders_halt_with_a_bit_everywhere(self):
        for name in corpus.names():
            e = corpus.get(name)
            if e.kind != "decider" or not e.total:
                continue
            for x in range(10001):
                out = run_det(e.program, x, fuel=e.fuel)
                assert out.status == "halted", (name, x, out.status)
                assert out.output in (0, 1), (name, x, out.output)

    def test_decider_bits_match_oracles_on_initial_segment(self):
        for name in corpus.names():
            e = corpus.get(name)
            if e.kind != "decider" or not e.total:
                continue
            for x in range(512):
                assert run_det(e.program, x, fuel=e.fuel).output == e.oracle(x), (
                    name,
                    x,
                )


# --- specific entry behaviour ----------------------------------------------------

class TestEntries:
    def test_primes_against_sieve(self):
        want = sieve_primes(200)
        p = prefix(corpus.listing("primes"), 200)
        assert list(p.values) == want

    def test_padded_primes_strictly_slower_same_values(self):
        plain = corpus.listing("primes")
        padded = corpus.listing("primes_padded")
        k = 100
        assert prefix(plain, k).values == prefix(padded, k).values
        tp = time_profile(plain, k)
        tq = time_profile(padded, k)
        assert all(tq.steps[n] == tp.steps[n] + 3 * n + 2 for n in range(k))
        assert strictly_more_rapid(tp, tq).strictly_more_rapid
        assert more_rapid(tp, tq).witness_m == 0

    def test_exp_padded_profile_is_exponential(self):
        tp = time_profile(corpus.listing("exp_padded"), 14)
        assert tp.steps == tuple(3 * 2**n + 4 * n + 6 for n in range(14))

    def test_reduction_entries(self):
        from enumlab.reduction import verify_reduction

        even = corpus.get("even_decider").program
        odd = corpus.get("odd_decider").program
        good = verify_reduction(
            corpus.get("even_to_odd").program, even, odd, (0, 200)
        )
        assert good.verified
        back = verify_reduction(
            corpus.get("odd_to_even").program, odd, even, (1, 200)
        )
        assert back.verified
        broken = verify_reduction(
            corpus.get("broken_even_to_odd").program, even, odd, (0, 200)
        )
        assert not broken.verified
        assert broken.violations[0] == (0, 1, 0)

    def test_reduction_oracles_describe_the_maps(self):
        for name, fn in [
            ("even_to_odd", lambda x: x + 1),
            ("odd_to_even", lambda x: max(x - 1, 0)),
            ("broken_even_to_odd", lambda x: x),
        ]:
            e = corpus.get(name)
            for x in range(50):
                out = run_det(e.program, x, fuel=e.fuel)
                assert out.output == fn(x) == e.oracle(x)
