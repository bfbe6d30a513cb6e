"""Jitted int64 core for the deterministic runner.

Importing this module requires numba; machine.py treats any import failure
as "run pure Python".  The core mirrors _run_det_python exactly, except that
an ADD whose result would reach 2**62 returns a bail-out status so the caller
can redo the run with Python bigints.  Status codes: 0 halted, 1 failed,
2 fuel exhausted, 3 ran past the end, 4 overflow bail-out.
"""

from __future__ import annotations

import numba
import numpy as np

_LIMIT = 1 << 62


@numba.njit(cache=True)
def run_compiled(ops, aa, bb, cc, num_registers, value, fuel):  # pragma: no cover
    regs = np.zeros(num_registers, dtype=np.int64)
    regs[0] = value
    pc = 0
    steps = 0
    n = ops.shape[0]
    while steps < fuel:
        if pc >= n:
            return 3, 0, steps
        op = ops[pc]
        steps += 1
        if op == 2:  # ADD
            v = regs[aa[pc]] + regs[bb[pc]]
            if v >= _LIMIT:
                return 4, 0, steps
            regs[cc[pc]] = v
            pc += 1
        elif op == 3:  # SUB
            d = regs[aa[pc]] - regs[bb[pc]]
            regs[cc[pc]] = d if d > 0 else 0
            pc += 1
        elif op == 4:  # JZ
            if regs[aa[pc]] == 0:
                pc = cc[pc]
            else:
                pc += 1
        elif op == 5:  # JLE
            if regs[aa[pc]] <= regs[bb[pc]]:
                pc = cc[pc]
            else:
                pc += 1
        elif op == 1:  # CPY
            regs[cc[pc]] = regs[aa[pc]]
            pc += 1
        elif op == 0:  # SET
            regs[cc[pc]] = aa[pc]
            pc += 1
        elif op == 8:  # HALT
            return 0, regs[0], steps
        elif op == 7:  # FAIL
            return 1, 0, steps
        else:  # CHOOSE cannot reach the deterministic runner
            return 3, 0, steps
    return 2, 0, fuel
