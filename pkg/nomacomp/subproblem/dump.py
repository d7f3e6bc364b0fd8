"""Plain-text dump of a built subproblem's conic form.

Format, one section per header line:

    # nomacomp conic problem
    solver <NAME>
    [variables]    one line per modelling variable
    [cones]        zero / nonneg / soc / psd / exp sizes, in row order
    [c]            <index> <value> for nonzero objective coefficients
    [A]            <row> <col> <value> triplets
    [b]            <row> <value> for nonzero right-hand sides

Rows of A follow the solver's standard form A x + s = b, s in the cones.
"""

from pathlib import Path

import numpy as np
from scipy import sparse

from .problem import P3Problem
from .solver import select_solver


def _cone_lines(dims) -> list[str]:
    lines = []
    for name in ("zero", "nonneg", "exp", "soc", "psd", "p3d"):
        value = getattr(dims, name, None)
        if value is None:
            continue
        if isinstance(value, (list, tuple)):
            value = " ".join(str(v) for v in value) or "-"
        lines.append(f"{name} {value}")
    return lines


def dump_problem(p3: P3Problem, path: Path, solver: str | None = None) -> Path:
    """Write the conic data of p3 as handed to `solver`; returns the path."""
    solver = solver or select_solver()
    data, _, _ = p3.problem.get_problem_data(solver)
    A = sparse.coo_matrix(data["A"])
    c = np.asarray(data["c"]).ravel()
    b = np.asarray(data["b"]).ravel()

    lines = ["# nomacomp conic problem", f"solver {solver}", f"kind {p3.kind}", "[variables]"]
    lines += p3.variable_summary()
    lines.append("[cones]")
    lines += _cone_lines(data["dims"])
    lines.append("[c]")
    lines += [f"{i} {float(c[i])!r}" for i in np.flatnonzero(c)]
    lines.append("[A]")
    lines += [f"{r} {col} {float(v)!r}" for r, col, v in zip(A.row, A.col, A.data)]
    lines.append("[b]")
    lines += [f"{i} {float(b[i])!r}" for i in np.flatnonzero(b)]

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
