"""Unit-cost register machine: instruction set, assembler, runners.

The machine model
-----------------
Programs run on an unbounded-natural register file r0, r1, ... and are the
step-counting ground truth for everything else in this package.

* Input arrives in r0 at the start of a run; the output of a halting run is
  whatever r0 holds when HALT executes.
* Every executed instruction costs exactly one step, HALT and FAIL included.
  There is no notion of a free bookkeeping move.
* Registers hold arbitrary naturals.  SUB truncates at zero.  There is no
  multiplication, so a register value can at most double per step; this keeps
  step counts polynomially tied to the usual bit-level cost models.
* Falling off the end of the program is an error, not an implicit HALT.
* Runs are fuel-bounded.  A run that neither halts nor fails within `fuel`
  steps reports fuel exhaustion; `steps` never exceeds the fuel given.

Instruction set::

    SET rX, k        rX := k               (k a decimal natural)
    CPY rS, rD       rD := rS
    ADD rA, rB, rD   rD := rA + rB
    SUB rA, rB, rD   rD := max(rA - rB, 0)
    JZ  rX, label    jump to label if rX == 0
    JLE rA, rB, label jump to label if rA <= rB
    CHOOSE rX, rY    nondeterministic: rX := one of 0..rY
    FAIL             end this branch unsuccessfully
    HALT             halt with output r0

Assembler text format: one instruction per line; `#` starts a comment; blank
lines are ignored; a label is `name:` on its own line, with names matching
[a-z_][a-z0-9_]*; opcodes are case-insensitive; operands are comma-separated;
registers are written r<index>.

Nondeterministic runs explore the configuration tree breadth-first.  A CHOOSE
with current rY value v spawns v+1 successor configurations, one per chosen
value, each one step deeper than the CHOOSE's configuration.  The run reports
the minimum step count over all halting branches found, and all halting
branches within fuel must agree on the output; disagreement raises
InconsistentBranchesError.  Exploration is additionally capped by
`branch_cap` (total instructions executed and configurations created); hitting
the cap before any halting branch yields status "indeterminate".

When numba is importable, deterministic runs go through a jitted int64 core
that bails out to the pure-Python bigint interpreter whenever a value would
reach 2**62, so results are identical either way.  Set ENUMLAB_PURE=1 to
force the pure path.
"""

from __future__ import annotations

import enum
import os
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    AsmError,
    InconsistentBranchesError,
    MalformedRunError,
    NondeterminismError,
)

DEFAULT_FUEL = 1_000_000
DEFAULT_BRANCH_CAP = 100_000

# Register indices are capped to keep nondeterministic branch copies small.
MAX_REGISTER = 4096

_INT64_SAFE = 1 << 62


class Op(enum.IntEnum):
    SET = 0
    CPY = 1
    ADD = 2
    SUB = 3
    JZ = 4
    JLE = 5
    CHOOSE = 6
    FAIL = 7
    HALT = 8


# operand shape per opcode: r = register, k = constant, l = label
_SHAPES = {
    Op.SET: "rk",
    Op.CPY: "rr",
    Op.ADD: "rrr",
    Op.SUB: "rrr",
    Op.JZ: "rl",
    Op.JLE: "rrl",
    Op.CHOOSE: "rr",
    Op.FAIL: "",
    Op.HALT: "",
}

_LABEL_RE = re.compile(r"^[a-z_][a-z0-9_]*$")
_REGISTER_RE = re.compile(r"^[rR](\d+)$")


@dataclass(frozen=True)
class Instruction:
    """One decoded instruction.

    Operand fields follow a fixed convention: `a` and `b` are sources (for
    SET, `a` is the constant; for CHOOSE, `a` is the bound register rY) and
    `c` is the destination register or jump target index.
    """

    op: Op
    a: int = 0
    b: int = 0
    c: int = 0


@dataclass(frozen=True)
class Program:
    name: str
    instructions: tuple[Instruction, ...]
    deterministic: bool
    num_registers: int

    def __len__(self) -> int:
        return len(self.instructions)

    @cached_property
    def _tuples(self) -> list[tuple[int, int, int, int]]:
        # flat form used by the interpreter loops
        return [(int(i.op), i.a, i.b, i.c) for i in self.instructions]

    @cached_property
    def _compiled(self):
        # int64 arrays for the jitted core, or None when ineligible
        if any(i.op == Op.SET and i.a >= _INT64_SAFE for i in self.instructions):
            return None
        import numpy as np

        tup = self._tuples
        ops = np.array([t[0] for t in tup], dtype=np.int64)
        aa = np.array([t[1] for t in tup], dtype=np.int64)
        bb = np.array([t[2] for t in tup], dtype=np.int64)
        cc = np.array([t[3] for t in tup], dtype=np.int64)
        return ops, aa, bb, cc


@dataclass(frozen=True)
class RunOutcome:
    """Result of a deterministic run."""

    status: str  # "halted" | "failed" | "fuel_exhausted"
    output: int | None
    steps: int

    def to_dict(self) -> dict:
        return {"status": self.status, "output": self.output, "steps": self.steps}


@dataclass(frozen=True)
class NondetRunOutcome:
    """Result of a breadth-first nondeterministic run."""

    status: str  # "halted" | "no_success" | "indeterminate"
    output: int | None
    min_steps: int | None
    branches_explored: int
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "output": self.output,
            "min_steps": self.min_steps,
            "branches_explored": self.branches_explored,
            "consistent": self.consistent,
        }


def _parse_register(token: str, line_no: int) -> int:
    m = _REGISTER_RE.match(token)
    if not m:
        raise AsmError(f"invalid register {token!r}", line_no)
    index = int(m.group(1))
    if index > MAX_REGISTER:
        raise AsmError(f"register index {index} exceeds cap {MAX_REGISTER}", line_no)
    return index


def assemble(text: str, name: str = "anonymous") -> Program:
    """Assemble source text into a Program.

    Raises AsmError (with the offending line number) on unknown opcodes,
    malformed operands, duplicate or unresolved labels, and labels that do
    not precede an instruction.
    """
    labels: dict[str, int] = {}
    pending: list[tuple[str, int]] = []  # (mnemonic+operands, line_no)
    # first pass: strip comments, bind labels to instruction indices
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.endswith(":"):
            label = line[:-1].strip()
            if not _LABEL_RE.match(label):
                raise AsmError(f"invalid label {label!r}", line_no)
            if label in labels:
                raise AsmError(f"duplicate label {label!r}", line_no)
            labels[label] = len(pending)
            continue
        pending.append((line, line_no))

    for label, index in labels.items():
        if index >= len(pending):
            raise AsmError(f"label {label!r} does not precede an instruction")

    instructions: list[Instruction] = []
    max_reg = 0
    has_choose = False
    for line, line_no in pending:
        head, _, rest = line.partition(" ")
        mnemonic = head.strip().upper()
        try:
            op = Op[mnemonic]
        except KeyError:
            raise AsmError(f"unknown opcode {head!r}", line_no) from None
        operands = [t.strip() for t in rest.split(",")] if rest.strip() else []
        shape = _SHAPES[op]
        if len(operands) != len(shape):
            raise AsmError(
                f"{mnemonic} expects {len(shape)} operand(s), got {len(operands)}",
                line_no,
            )
        vals: list[int] = []
        for kind, token in zip(shape, operands):
            if kind == "r":
                reg = _parse_register(token, line_no)
                max_reg = max(max_reg, reg)
                vals.append(reg)
            elif kind == "k":
                if not token.isdigit():
                    raise AsmError(f"invalid constant {token!r}", line_no)
                vals.append(int(token))
            else:  # label
                if token not in labels:
                    raise AsmError(f"unresolved label {token!r}", line_no)
                vals.append(labels[token])

        if op == Op.SET:
            ins = Instruction(op, a=vals[1], c=vals[0])
        elif op == Op.CPY:
            ins = Instruction(op, a=vals[0], c=vals[1])
        elif op in (Op.ADD, Op.SUB):
            ins = Instruction(op, a=vals[0], b=vals[1], c=vals[2])
        elif op == Op.JZ:
            ins = Instruction(op, a=vals[0], c=vals[1])
        elif op == Op.JLE:
            ins = Instruction(op, a=vals[0], b=vals[1], c=vals[2])
        elif op == Op.CHOOSE:
            has_choose = True
            ins = Instruction(op, a=vals[1], c=vals[0])
        else:  # FAIL, HALT
            ins = Instruction(op)
        instructions.append(ins)

    if not instructions:
        raise AsmError("program has no instructions")
    return Program(
        name=name,
        instructions=tuple(instructions),
        deterministic=not has_choose,
        num_registers=max_reg + 1,
    )


# --- deterministic runner ---------------------------------------------------

def _run_det_python(program: Program, value: int, fuel: int) -> RunOutcome:
    code = program._tuples
    n = len(code)
    regs = [0] * program.num_registers
    regs[0] = value
    pc = 0
    steps = 0
    while steps < fuel:
        if pc >= n:
            raise MalformedRunError(
                f"program {program.name!r} ran past its last instruction"
            )
        op, a, b, c = code[pc]
        steps += 1
        if op == 2:  # ADD
            regs[c] = regs[a] + regs[b]
            pc += 1
        elif op == 3:  # SUB
            d = regs[a] - regs[b]
            regs[c] = d if d > 0 else 0
            pc += 1
        elif op == 4:  # JZ
            pc = c if regs[a] == 0 else pc + 1
        elif op == 5:  # JLE
            pc = c if regs[a] <= regs[b] else pc + 1
        elif op == 1:  # CPY
            regs[c] = regs[a]
            pc += 1
        elif op == 0:  # SET
            regs[c] = a
            pc += 1
        elif op == 8:  # HALT
            return RunOutcome("halted", regs[0], steps)
        elif op == 7:  # FAIL
            return RunOutcome("failed", None, steps)
        else:  # CHOOSE
            raise NondeterminismError(
                f"program {program.name!r} is not deterministic"
            )
    return RunOutcome("fuel_exhausted", None, fuel)


def _fast_runner():
    if os.environ.get("ENUMLAB_PURE"):
        return None
    try:
        from ._fastrun import run_compiled
    except Exception:
        return None
    return run_compiled


_FAST = _fast_runner()


def run_det(program: Program, value: int, fuel: int = DEFAULT_FUEL) -> RunOutcome:
    """Run a deterministic program on one input.

    Raises NondeterminismError if the program contains CHOOSE and
    MalformedRunError if control runs past the last instruction.
    """
    if not program.deterministic:
        raise NondeterminismError(f"program {program.name!r} is not deterministic")
    if value < 0:
        raise ValueError("machine inputs are naturals")
    if _FAST is not None and value < _INT64_SAFE:
        compiled = program._compiled
        if compiled is not None:
            status, output, steps = _FAST(*compiled, program.num_registers, value, fuel)
            if status == 0:
                return RunOutcome("halted", int(output), int(steps))
            if status == 1:
                return RunOutcome("failed", None, int(steps))
            if status == 2:
                return RunOutcome("fuel_exhausted", None, fuel)
            if status == 3:
                raise MalformedRunError(
                    f"program {program.name!r} ran past its last instruction"
                )
            # status 4: a value approached the int64 guard; redo exactly.
    return _run_det_python(program, value, fuel)


# --- nondeterministic runner ------------------------------------------------

def run_nondet(
    program: Program,
    value: int,
    fuel: int = DEFAULT_FUEL,
    branch_cap: int = DEFAULT_BRANCH_CAP,
) -> NondetRunOutcome:
    """Explore a program's configuration tree breadth-first.

    Works for deterministic programs too (the tree is a single chain), which
    is what makes conservativity against run_det a meaningful check.
    """
    if value < 0:
        raise ValueError("machine inputs are naturals")
    code = program._tuples
    n = len(code)
    regs0 = [0] * program.num_registers
    regs0[0] = value
    queue: deque[tuple[int, int, list[int]]] = deque()
    queue.append((0, 0, regs0))
    executed = 0  # instructions executed across all branches
    created = 1  # configurations materialized
    truncated = False
    halts: list[tuple[int, int]] = []  # (steps, output) in discovery order

    while queue and not truncated:
        pc, steps, regs = queue.popleft()
        # advance this branch in place until it forks or ends
        while True:
            if steps >= fuel:
                break
            if pc >= n:
                raise MalformedRunError(
                    f"program {program.name!r} ran past its last instruction"
                )
            if executed >= branch_cap:
                truncated = True
                break
            op, a, b, c = code[pc]
            executed += 1
            steps += 1
            if op == 2:  # ADD
                regs[c] = regs[a] + regs[b]
                pc += 1
            elif op == 3:  # SUB
                d = regs[a] - regs[b]
                regs[c] = d if d > 0 else 0
                pc += 1
            elif op == 4:  # JZ
                pc = c if regs[a] == 0 else pc + 1
            elif op == 5:  # JLE
                pc = c if regs[a] <= regs[b] else pc + 1
            elif op == 1:  # CPY
                regs[c] = regs[a]
                pc += 1
            elif op == 0:  # SET
                regs[c] = a
                pc += 1
            elif op == 6:  # CHOOSE
                bound = regs[a]
                for chosen in range(bound + 1):
                    if created >= branch_cap:
                        truncated = True
                        break
                    child = regs.copy()
                    child[c] = chosen
                    queue.append((pc + 1, steps, child))
                    created += 1
                break
            elif op == 8:  # HALT
                halts.append((steps, regs[0]))
                break
            else:  # FAIL
                break

    if halts:
        outputs = sorted({out for _, out in halts})
        consistent = len(outputs) == 1
        if not consistent:
            seen: list[tuple[int, int]] = []
            reported: set[int] = set()
            for s, out in halts:
                if out not in reported:
                    seen.append((s, out))
                    reported.add(out)
            raise InconsistentBranchesError(program.name, seen)
        min_steps = min(s for s, _ in halts)
        return NondetRunOutcome("halted", outputs[0], min_steps, executed, True)
    if truncated:
        return NondetRunOutcome("indeterminate", None, None, executed, True)
    return NondetRunOutcome("no_success", None, None, executed, True)
