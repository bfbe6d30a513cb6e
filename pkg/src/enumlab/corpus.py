"""Named machine programs: listings, deciders, reduction maps, and a SAT kit.

Every entry carries an assembled program plus a closed-form oracle that test
suites compare against; the package itself never consults the oracles.  The
SAT side ships an integer coding of small CNF formulas, a host-level brute
forcer, a deterministic machine decider, a nondeterministic guess-and-check
acceptor, and a listing of the satisfiable codes in increasing order.

SAT integer coding
------------------
A formula with v variables (v <= 12) and m clauses (m <= 16) packs as::

    code = v | m << 4 | payload << 9

where the payload is a stream of 5-bit chunks, least significant first: for
each clause, one chunk per literal followed by a 0 terminator chunk.  A
literal chunk is (var << 1) | sign with 1-based var and sign 1 for negation,
so valid literal chunks lie in 2..2v+1.  After m terminators the remaining
payload must be zero.  Empty clauses are legal (and unsatisfiable); the empty
formula is satisfiable.  decode(encode(f)) == f for every in-cap formula.

Machine register conventions for the SAT programs: r1=1, r2=2, r17=32 are
constants, r3/r4/r16 hold v/m/payload after the header split, r5..r15 are
working space, r20..r31 hold the assignment bits b1..b12, r32..r34 are used
by the scanning listing.  The machine has no indirect addressing, so bit
lookups compile to a 12-way comparison ladder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import SatCodecError, UnknownNameError
from .listing import DETERMINISTIC, NONDETERMINISTIC, Listing
from .machine import DEFAULT_FUEL, Program, assemble

MAX_SAT_VARS = 12
MAX_SAT_CLAUSES = 16


# --- SAT coding, host side ----------------------------------------------------

@dataclass(frozen=True)
class CNF:
    """A CNF formula: clauses are tuples of nonzero literals, -3 means not-x3."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "clauses", tuple(tuple(c) for c in self.clauses)
        )


def sat_encode(cnf: CNF) -> int:
    """Pack a formula into its integer code; SatCodecError if out of caps."""
    if not 0 <= cnf.num_vars <= MAX_SAT_VARS:
        raise SatCodecError(f"variable count {cnf.num_vars} out of range")
    if len(cnf.clauses) > MAX_SAT_CLAUSES:
        raise SatCodecError(f"clause count {len(cnf.clauses)} out of range")
    payload = 0
    shift = 0
    for clause in cnf.clauses:
        for lit in clause:
            var = abs(lit)
            if lit == 0 or var > cnf.num_vars:
                raise SatCodecError(f"literal {lit} out of range")
            payload |= (var << 1 | (1 if lit < 0 else 0)) << shift
            shift += 5
        shift += 5  # 0 terminator chunk
    return cnf.num_vars | len(cnf.clauses) << 4 | payload << 9


def sat_decode(code: int) -> CNF:
    """Inverse of sat_encode; SatCodecError on any malformed code."""
    if code < 0:
        raise SatCodecError("negative code")
    v = code & 15
    m = (code >> 4) & 31
    payload = code >> 9
    if v > MAX_SAT_VARS:
        raise SatCodecError(f"variable count {v} out of range")
    if m > MAX_SAT_CLAUSES:
        raise SatCodecError(f"clause count {m} out of range")
    clauses = []
    for _ in range(m):
        clause = []
        while True:
            chunk = payload & 31
            payload >>= 5
            if chunk == 0:
                break
            var = chunk >> 1
            sign = chunk & 1
            if var < 1 or var > v:
                raise SatCodecError(f"literal chunk {chunk} out of range")
            clause.append(-var if sign else var)
        clauses.append(tuple(clause))
    if payload:
        raise SatCodecError("trailing payload after the last clause")
    return CNF(v, tuple(clauses))


def sat_brute_force(code: int) -> bool:
    """Exhaustive assignment search over a decoded formula (<= 2**12 tries)."""
    cnf = sat_decode(code)
    for bits in range(1 << cnf.num_vars):
        for clause in cnf.clauses:
            if not any(
                (bits >> (abs(lit) - 1)) & 1 == (1 if lit > 0 else 0)
                for lit in clause
            ):
                break
        else:
            return True
    return False


def _is_sat_code(code: int) -> bool:
    try:
        return sat_brute_force(code)
    except SatCodecError:
        return False


# --- assembly builders ----------------------------------------------------------

def _divmod_block(p: str, value: str, divisor: str) -> str:
    """value := value mod divisor, r11 := value div divisor.

    Doubling-and-subtract division, O(log^2 value) steps.  Clobbers
    r12/r13/r14.  The divisor must be nonzero.
    """
    return f"""\
SET r11, 0
{p}outer:
JLE {divisor}, {value}, {p}red
JLE {value}, {value}, {p}done
{p}red:
CPY {divisor}, r12
SET r14, 1
{p}up:
ADD r12, r12, r13
JLE r13, {value}, {p}grow
SUB {value}, r12, {value}
ADD r11, r14, r11
JLE {value}, {value}, {p}outer
{p}grow:
CPY r13, r12
ADD r14, r14, r14
JLE r14, r14, {p}up
{p}done:
"""


def _mod_block(p: str, value: str, divisor: str) -> str:
    """value := value mod divisor, no quotient.  Clobbers r6/r7."""
    return f"""\
{p}outer:
JLE {divisor}, {value}, {p}red
JLE {value}, {value}, {p}done
{p}red:
CPY {divisor}, r6
{p}up:
ADD r6, r6, r7
JLE r7, {value}, {p}grow
SUB {value}, r6, {value}
JLE {value}, {value}, {p}outer
{p}grow:
CPY r7, r6
JLE r6, r6, {p}up
{p}done:
"""


def _primality_block(p: str, x: str, yes: str, no: str) -> str:
    """Trial division of the value in x; needs r1=1, r2=2 preset.

    Divisor in r3, its square tracked incrementally in r4, remainder work in
    r5, mod scratch in r6/r7.  x itself is preserved.
    """
    return f"""\
JLE {x}, r1, {no}
JLE {x}, r2, {yes}
SET r3, 2
SET r4, 4
{p}loop:
JLE r4, {x}, {p}body
JLE r4, r4, {yes}
{p}body:
CPY {x}, r5
{_mod_block(p + "m_", "r5", "r3")}
JZ r5, {no}
ADD r4, r3, r4
ADD r4, r3, r4
ADD r4, r1, r4
ADD r3, r1, r3
JLE r4, r4, {p}loop
"""


def _clear_bits() -> str:
    return "\n".join(f"SET r{19 + j}, 0" for j in range(1, 13)) + "\n"


def _sat_header(src: str, invalid: str) -> str:
    """Split a code into v (r3), m (r4), payload (r16); bounds-check v and m."""
    return f"""\
CPY {src}, r34
SET r15, 16
{_divmod_block("hd_a_", "r34", "r15")}
CPY r34, r3
CPY r11, r34
{_divmod_block("hd_b_", "r34", "r17")}
CPY r34, r4
CPY r11, r16
SET r15, 12
JLE r3, r15, hd_vok
JLE r3, r3, {invalid}
hd_vok:
SET r15, 16
JLE r4, r15, hd_mok
JLE r4, r4, {invalid}
hd_mok:
"""


def _sat_eval(true_label: str, false_label: str, invalid_label: str) -> str:
    """Evaluate the formula in r16/r3/r4 against the bits in r20..r31.

    Entry at ev_start; leaves for true_label when every clause is satisfied
    and the payload is exhausted, false_label when some clause fails under
    this assignment, invalid_label on a malformed chunk stream.  Consumes a
    fresh copy of the payload each entry, so it can be re-entered per
    assignment.
    """
    rungs = ["JLE r8, r1, ev_v1", "JLE r8, r2, ev_v2"]
    for j in range(3, 12):
        rungs.append(f"SET r15, {j}")
        rungs.append(f"JLE r8, r15, ev_v{j}")
    rungs.append("JLE r8, r8, ev_v12")
    cases = []
    for j in range(1, 13):
        rb = f"r{19 + j}"
        cases += [
            f"ev_v{j}:",
            f"JZ r9, ev_p{j}",
            f"JZ {rb}, ev_hit",
            "JLE r5, r5, ev_next",
            f"ev_p{j}:",
            f"JZ {rb}, ev_next",
            "JLE r5, r5, ev_hit",
        ]
    rung_text = "\n".join(rungs)
    case_text = "\n".join(cases)
    return f"""\
ev_start:
CPY r16, r5
CPY r4, r6
ev_clause:
JZ r6, ev_tail
SET r10, 0
ev_next:
{_divmod_block("ev_dm_", "r5", "r17")}
CPY r5, r7
CPY r11, r5
JZ r7, ev_endc
CPY r7, r9
{_divmod_block("ev_dv_", "r9", "r2")}
CPY r11, r8
JZ r8, {invalid_label}
JLE r8, r3, ev_varok
JLE r8, r8, {invalid_label}
ev_varok:
JLE r1, r10, ev_next
{rung_text}
{case_text}
ev_hit:
SET r10, 1
JLE r5, r5, ev_next
ev_endc:
JZ r10, {false_label}
SUB r6, r1, r6
JLE r6, r6, ev_clause
ev_tail:
JZ r5, {true_label}
JLE r5, r5, {invalid_label}
"""


def _guess_blocks(eval_label: str, bits: tuple[int, ...] | None) -> str:
    """One block per potential variable: skip when past v, else pick a bit.

    With bits=None each block is a two-way CHOOSE; with a concrete bit vector
    the CHOOSE becomes a SET of the same cost, giving a deterministic twin
    whose step counts match the corresponding branch instruction for
    instruction.
    """
    lines = []
    for j in range(1, 13):
        if j == 1:
            lines.append(f"JZ r3, {eval_label}")
        elif j == 2:
            lines.append(f"JLE r3, r1, {eval_label}")
        else:
            lines.append(f"SET r15, {j - 1}")
            lines.append(f"JLE r3, r15, {eval_label}")
        if bits is None:
            lines.append(f"CHOOSE r{19 + j}, r1")
        else:
            lines.append(f"SET r{19 + j}, {bits[j - 1]}")
    return "\n".join(lines) + "\n"


def _odometer(eval_label: str, reject_label: str) -> str:
    """Binary increment over b1..bv; carry past bv means all tried."""
    lines = ["od_inc:", f"JZ r3, {reject_label}"]
    for j in range(1, 13):
        if j == 2:
            lines.append(f"JLE r3, r1, {reject_label}")
        elif j >= 3:
            lines.append(f"SET r15, {j - 1}")
            lines.append(f"JLE r3, r15, {reject_label}")
        lines.append(f"JZ r{19 + j}, od_s{j}")
        lines.append(f"SET r{19 + j}, 0")
    lines.append(f"JLE r3, r3, {reject_label}")
    for j in range(1, 13):
        lines.append(f"od_s{j}:")
        lines.append(f"SET r{19 + j}, 1")
        lines.append(f"JLE r3, r3, {eval_label}")
    return "\n".join(lines) + "\n"


def _sat_decider_text() -> str:
    return (
        "SET r1, 1\n"
        "SET r2, 2\n"
        "SET r17, 32\n"
        + _sat_header("r0", "sd_no")
        + _sat_eval("sd_yes", "od_inc", "sd_no")
        + _odometer("ev_start", "sd_no")
        + "sd_yes:\nSET r0, 1\nHALT\nsd_no:\nSET r0, 0\nHALT\n"
    )


def _sat_guess_text(bits: tuple[int, ...] | None = None) -> str:
    return (
        "SET r1, 1\n"
        "SET r15, 12\n"
        "JLE r0, r15, sg_yes\n"
        "SET r2, 2\n"
        "SET r17, 32\n"
        + _sat_header("r0", "sg_no")
        + _guess_blocks("ev_start", bits)
        + _sat_eval("sg_yes", "sg_no", "sg_no")
        + "sg_yes:\nSET r0, 1\nHALT\nsg_no:\nFAIL\n"
    )


def _sat_codes_text() -> str:
    return (
        "SET r1, 1\n"
        "SET r2, 2\n"
        "SET r17, 32\n"
        "CPY r0, r33\n"
        "SET r32, 0\n"
        "sc_scan:\n"
        + _clear_bits()
        + _sat_header("r32", "sc_next")
        + _sat_eval("sc_hit", "od_inc", "sc_next")
        + _odometer("ev_start", "sc_next")
        + """\
sc_hit:
JZ r33, sc_emit
SUB r33, r1, r33
sc_next:
ADD r32, r1, r32
JLE r32, r32, sc_scan
sc_emit:
CPY r32, r0
HALT
"""
    )


def sat_check_program(bits: tuple[int, ...]) -> Program:
    """Deterministic twin of sat_guess with the assignment pinned to bits.

    Instruction counts along the run equal those of the sat_guess branch
    that chooses the same bits, so minimising its accepting step count over
    all assignments reproduces the acceptor's min-steps.
    """
    if len(bits) != 12 or any(b not in (0, 1) for b in bits):
        raise ValueError("bits must be twelve 0/1 values")
    return assemble(_sat_guess_text(tuple(bits)), name="sat_check")


# --- plain corpus programs ------------------------------------------------------

_IDENTITY = "HALT\n"

_EVENS = "ADD r0, r0, r0\nHALT\n"

_ODDS = "ADD r0, r0, r0\nSET r1, 1\nADD r0, r1, r0\nHALT\n"

_SQUARES = """\
SET r1, 0
SET r2, 1
SET r3, 1
SET r4, 2
sq_loop:
JZ r0, sq_done
ADD r1, r2, r1
ADD r2, r4, r2
SUB r0, r3, r0
JLE r3, r3, sq_loop
sq_done:
CPY r1, r0
HALT
"""

_SWAP_ORDER = """\
SET r1, 1
SET r2, 2
CPY r0, r3
sw_loop:
JZ r3, sw_bump
JLE r3, r1, sw_drop
SUB r3, r2, r3
JLE r3, r3, sw_loop
sw_bump:
ADD r0, r1, r0
HALT
sw_drop:
SUB r0, r1, r0
HALT
"""

_EXP_PADDED = """\
SET r1, 1
SET r2, 1
CPY r0, r3
xp_dbl:
JZ r3, xp_burn
ADD r1, r1, r1
SUB r3, r2, r3
JLE r3, r3, xp_dbl
xp_burn:
JZ r1, xp_done
SUB r1, r2, r1
JLE r1, r1, xp_burn
xp_done:
HALT
"""

_NATURALS_DECIDER = "SET r0, 1\nHALT\n"

_EVEN_DECIDER = """\
SET r1, 1
SET r2, 2
ed_loop:
JZ r0, ed_yes
JLE r0, r1, ed_no
SUB r0, r2, r0
JLE r0, r0, ed_loop
ed_yes:
SET r0, 1
HALT
ed_no:
SET r0, 0
HALT
"""

_ODD_DECIDER = """\
SET r1, 1
SET r2, 2
od_loop:
JZ r0, od_no
JLE r0, r1, od_yes
SUB r0, r2, r0
JLE r0, r0, od_loop
od_yes:
SET r0, 1
HALT
od_no:
SET r0, 0
HALT
"""

_SQUARE_DECIDER = """\
SET r1, 1
SET r3, 0
SET r4, 0
qd_loop:
JLE r0, r4, qd_check
ADD r4, r3, r4
ADD r4, r3, r4
ADD r4, r1, r4
ADD r3, r1, r3
JLE r4, r4, qd_loop
qd_check:
JLE r4, r0, qd_yes
SET r0, 0
HALT
qd_yes:
SET r0, 1
HALT
"""


def _prime_decider_text() -> str:
    return (
        "SET r1, 1\n"
        "SET r2, 2\n"
        "CPY r0, r8\n"
        + _primality_block("pd_", "r8", "pd_yes", "pd_no")
        + "pd_yes:\nSET r0, 1\nHALT\npd_no:\nSET r0, 0\nHALT\n"
    )


def _primes_text(padded: bool) -> str:
    pad = ""
    if padded:
        pad = """\
CPY r0, r12
pp_pad:
JZ r12, pp_go
SUB r12, r1, r12
JLE r12, r12, pp_pad
pp_go:
"""
    return (
        "SET r1, 1\n"
        "SET r2, 2\n"
        + pad
        + """\
CPY r0, r10
SET r9, 1
pl_scan:
ADD r9, r1, r9
"""
        + _primality_block("pl_", "r9", "pl_isp", "pl_next")
        + """\
pl_isp:
JZ r10, pl_emit
SUB r10, r1, r10
pl_next:
JLE r9, r9, pl_scan
pl_emit:
CPY r9, r0
HALT
"""
    )


_PLUS_ONE = "SET r1, 1\nADD r0, r1, r0\nHALT\n"

_MINUS_ONE = "SET r1, 1\nSUB r0, r1, r0\nHALT\n"


# --- closed-form oracles ---------------------------------------------------------

def _nth_prime(n: int) -> int:
    count = -1
    x = 1
    while count < n:
        x += 1
        if all(x % d for d in range(2, math.isqrt(x) + 1)):
            count += 1
    return x


_SAT_CODES_SEEN: list[int] = []


def _nth_sat_code(n: int) -> int:
    code = _SAT_CODES_SEEN[-1] if _SAT_CODES_SEEN else -1
    while len(_SAT_CODES_SEEN) <= n:
        code += 1
        if _is_sat_code(code):
            _SAT_CODES_SEEN.append(code)
    return _SAT_CODES_SEEN[n]


# --- the registry -----------------------------------------------------------------

@dataclass(frozen=True)
class CorpusEntry:
    """A named program with its test oracle and execution policy.

    `oracle` is the closed-form value function (listings: n -> n-th value;
    deciders: x -> membership bit; reductions: x -> f(x)); the package never
    calls it outside tests.  `total` marks deciders guaranteed to halt with a
    bit on every input; the SAT acceptor is not total in that sense because
    rejecting branches FAIL.  `audit_horizon` is the longest prefix the
    default fuel supports for slow-by-design listings.
    """

    name: str
    kind: str
    program: Program
    oracle: Callable[[int], int] | None
    notes: str
    mode: str = DETERMINISTIC
    fuel: int = DEFAULT_FUEL
    paired_decider: str | None = None
    audit_horizon: int = 200
    total: bool = True


def _entries() -> dict[str, CorpusEntry]:
    def entry(name, kind, text, oracle, notes, **kw):
        return CorpusEntry(
            name, kind, assemble(text, name=name), oracle, notes, **kw
        )

    rows = [
        entry(
            "identity", "listing", _IDENTITY, lambda n: n,
            "lists every natural in order; one step per input",
            paired_decider="naturals",
        ),
        entry(
            "evens", "listing", _EVENS, lambda n: 2 * n,
            "n-th even number by doubling",
            paired_decider="even_decider",
        ),
        entry(
            "odds", "listing", _ODDS, lambda n: 2 * n + 1,
            "n-th odd number",
            paired_decider="odd_decider",
        ),
        entry(
            "squares", "listing", _SQUARES, lambda n: n * n,
            "n-th square as a sum of the first n odd numbers",
            paired_decider="square_decider",
        ),
        entry(
            "primes", "listing", _primes_text(padded=False), _nth_prime,
            "n-th prime by rescanning candidates with trial division",
            paired_decider="prime_decider", fuel=4_000_000,
        ),
        entry(
            "primes_padded", "listing", _primes_text(padded=True), _nth_prime,
            "same values as primes with a linear busy-loop prologue, so the"
            " profile is pointwise strictly slower",
            paired_decider="prime_decider", fuel=4_000_000,
        ),
        entry(
            "swap_order", "listing", _SWAP_ORDER,
            lambda n: n + 1 if n % 2 == 0 else n - 1,
            "lists the naturals with neighbours swapped: 1,0,3,2,...",
            paired_decider="naturals",
        ),
        entry(
            "exp_padded", "listing", _EXP_PADDED, lambda n: n,
            "identity values behind a 2^n busy loop; only small prefixes fit"
            " in any reasonable fuel",
            paired_decider="naturals", audit_horizon=14,
        ),
        entry(
            "sat_codes", "listing", _sat_codes_text(), _nth_sat_code,
            "satisfiable formula codes in increasing order, by running the"
            " decider body over every code; slow by design",
            paired_decider="sat_decider", fuel=64_000_000, audit_horizon=64,
        ),
        entry(
            "naturals", "decider", _NATURALS_DECIDER, lambda x: 1,
            "accepts everything; membership decider for full-range listings",
        ),
        entry(
            "even_decider", "decider", _EVEN_DECIDER,
            lambda x: 1 if x % 2 == 0 else 0,
            "parity by stripping twos",
        ),
        entry(
            "odd_decider", "decider", _ODD_DECIDER,
            lambda x: x % 2,
            "parity by stripping twos",
        ),
        entry(
            "square_decider", "decider", _SQUARE_DECIDER,
            lambda x: 1 if math.isqrt(x) ** 2 == x else 0,
            "compares x against successive squares grown incrementally",
        ),
        entry(
            "prime_decider", "decider", _prime_decider_text(),
            lambda x: 1 if x >= 2 and all(
                x % d for d in range(2, math.isqrt(x) + 1)
            ) else 0,
            "trial division with the divisor square tracked incrementally",
        ),
        entry(
            "sat_decider", "decider", _sat_decider_text(),
            lambda code: 1 if _is_sat_code(code) else 0,
            "brute-force SAT over the integer coding; malformed codes are"
            " rejected",
        ),
        entry(
            "sat_guess", "decider", _sat_guess_text(),
            lambda code: 1 if _is_sat_code(code) else 0,
            "nondeterministic guess-and-check acceptor: accepting branches"
            " halt with 1, everything else fails, so unsatisfiable codes"
            " produce no halting branch",
            mode=NONDETERMINISTIC, total=False,
        ),
        entry(
            "even_to_odd", "reduction", _PLUS_ONE, lambda x: x + 1,
            "x+1 maps the even numbers onto the odd numbers",
        ),
        entry(
            "odd_to_even", "reduction", _MINUS_ONE, lambda x: max(x - 1, 0),
            "truncated x-1 maps odd onto even away from zero; 0 is a known"
            " violation point",
        ),
        entry(
            "broken_even_to_odd", "reduction", _IDENTITY, lambda x: x,
            "the identity map, kept as a reduction that must fail"
            " verification",
        ),
    ]
    return {row.name: row for row in rows}


_REGISTRY = _entries()


def get(name: str) -> CorpusEntry:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownNameError(
            f"no corpus entry named {name!r}; know {', '.join(sorted(_REGISTRY))}"
        ) from None


def names() -> list[str]:
    return sorted(_REGISTRY)


def listing(name: str) -> Listing:
    """The Listing for a listing-kind entry, with its fuel policy applied."""
    e = get(name)
    if e.kind != "listing":
        raise UnknownNameError(f"{name!r} is a {e.kind}, not a listing")
    return Listing(e.name, e.program, e.mode, fuel=e.fuel)
