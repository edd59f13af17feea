"""(c, P) grid scans of all bounds, written as CSV."""
import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import bounds, tightsolver
from .bounds import BoundKind
from .coherence import MeasureKind
from .errors import DomainError

TIGHT_COLUMNS = {
    MeasureKind.RELATIVE_ENTROPY: "tight_re",
    MeasureKind.FORMATION: "tight_cf",
    MeasureKind.L1: "tight_l1",
}


@dataclass(frozen=True)
class ScanSpec:
    c_start: float = 0.5
    c_end: float = 1.0
    c_steps: int = 101
    p_start: float = 0.5
    p_end: float = 1.0
    p_steps: int = 101
    measures: tuple = tuple(MeasureKind)
    include_tight: bool = False
    clamp: bool = False
    solver: tightsolver.SolverOptions = field(default_factory=tightsolver.SolverOptions)

    def __post_init__(self):
        for name in ("c_start", "c_end", "p_start", "p_end"):
            v = getattr(self, name)
            if not 0.5 <= v <= 1.0:
                raise DomainError(f"{name.replace('_', '-')} must lie in [0.5, 1], got {v}")
        if self.c_steps < 2 or self.p_steps < 2:
            raise DomainError("c-steps and p-steps must be at least 2")
        object.__setattr__(self, "measures", tuple(MeasureKind(m) for m in self.measures))

    @property
    def columns(self):
        cols = ["c", "purity"] + [k.value for k in BoundKind]
        if self.include_tight:
            cols += [TIGHT_COLUMNS[m] for m in MeasureKind if m in self.measures]
        return cols

    def c_values(self):
        return np.linspace(self.c_start, self.c_end, self.c_steps)

    def p_values(self):
        return np.linspace(self.p_start, self.p_end, self.p_steps)


def _row_block(spec, c):
    """All records for one value of c, in increasing P order."""
    rows = []
    for P in spec.p_values():
        row = [c, P]
        for value in bounds.evaluate_all(c, P).values():
            row.append(value.clamped if spec.clamp else value.raw)
        if spec.include_tight:
            for m in MeasureKind:
                if m in spec.measures:
                    t = tightsolver.tight_bound_1d(m, c, P, spec.solver).value
                    row.append(max(t, 0.0) if spec.clamp else t)
        rows.append([float(v) for v in row])
    return rows


def scan_records(spec, jobs=1):
    """Rows of the scan in row-major order (c outer, P inner)."""
    cs = [float(c) for c in spec.c_values()]
    if jobs <= 1:
        blocks = [_row_block(spec, c) for c in cs]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            blocks = list(pool.map(_row_block, [spec] * len(cs), cs))
    return [row for block in blocks for row in block]


def format_value(v):
    return f"{v + 0.0:.12g}"


def write_csv(spec, records, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(spec.columns)
    for row in records:
        writer.writerow([format_value(v) for v in row])


def scan_csv(spec, jobs=1):
    buf = io.StringIO()
    write_csv(spec, scan_records(spec, jobs), buf)
    return buf.getvalue()
