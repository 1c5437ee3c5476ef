"""Reader/writer for the plain-text alist sparse matrix interchange format.

Layout: line 1 is "N M" (columns, rows); line 2 the maximum column and row
degrees; line 3 all N column degrees; line 4 all M row degrees; then N lines
of 1-based row indices (one line per column) and M lines of 1-based column
indices (one per row).  Values are single-space separated, every line
newline-terminated, with no padding zeros.
"""

from __future__ import annotations

import numpy as np

from .matrix import SparseBinaryMatrix

__all__ = ["AlistFormatError", "to_alist", "from_alist"]


class AlistFormatError(ValueError):
    """Malformed alist text; `line` is the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"alist line {line}: {message}")


def to_alist(H: SparseBinaryMatrix) -> str:
    col_deg = H.col_weights()
    row_deg = H.row_weights()
    out = [
        f"{H.cols} {H.rows}",
        f"{int(col_deg.max(initial=0))} {int(row_deg.max(initial=0))}",
        " ".join(str(int(d)) for d in col_deg),
        " ".join(str(int(d)) for d in row_deg),
    ]
    for rows in H.col_adj:
        out.append(" ".join(str(int(r) + 1) for r in rows))
    for cols in H.row_adj:
        out.append(" ".join(str(int(c) + 1) for c in cols))
    return "\n".join(out) + "\n"


def from_alist(text: str) -> SparseBinaryMatrix:
    lines = text.splitlines()

    def ints(ln: int, expect: int | None = None) -> list[int]:
        if ln > len(lines):
            raise AlistFormatError(ln, "unexpected end of input")
        parts = lines[ln - 1].split()
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            raise AlistFormatError(ln, f"non-integer token in {lines[ln - 1]!r}") from None
        if expect is not None and len(vals) != expect:
            raise AlistFormatError(ln, f"expected {expect} values, found {len(vals)}")
        return vals

    n, m = ints(1, 2)
    if n < 1 or m < 1:
        raise AlistFormatError(1, f"invalid dimensions {n} x {m}")
    max_cd, max_rd = ints(2, 2)
    col_deg = ints(3, n)
    row_deg = ints(4, m)
    if col_deg and max(col_deg) != max_cd:
        raise AlistFormatError(3, f"maximum column degree is {max(col_deg)}, header says {max_cd}")
    if row_deg and max(row_deg) != max_rd:
        raise AlistFormatError(4, f"maximum row degree is {max(row_deg)}, header says {max_rd}")
    if sum(col_deg) != sum(row_deg):
        raise AlistFormatError(4, "column degrees and row degrees sum differently")

    col_adj = []
    for j in range(n):
        ln = 5 + j
        vals = ints(ln)
        if len(vals) != col_deg[j]:
            raise AlistFormatError(ln, f"column {j + 1} lists {len(vals)} entries, degree line says {col_deg[j]}")
        if any(v < 1 or v > m for v in vals):
            raise AlistFormatError(ln, f"row index out of range 1..{m}")
        if len(set(vals)) != len(vals):
            raise AlistFormatError(ln, "duplicate row index")
        col_adj.append([v - 1 for v in vals])

    row_adj = []
    for i in range(m):
        ln = 5 + n + i
        vals = ints(ln)
        if len(vals) != row_deg[i]:
            raise AlistFormatError(ln, f"row {i + 1} lists {len(vals)} entries, degree line says {row_deg[i]}")
        if any(v < 1 or v > n for v in vals):
            raise AlistFormatError(ln, f"column index out of range 1..{n}")
        if len(set(vals)) != len(vals):
            raise AlistFormatError(ln, "duplicate column index")
        row_adj.append([v - 1 for v in vals])

    if len(lines) > 4 + n + m and any(l.strip() for l in lines[4 + n + m:]):
        raise AlistFormatError(5 + n + m, "trailing content after adjacency lists")

    # Cross-check the two views; report against the first inconsistent row line.
    from_cols = set()
    for j, rows in enumerate(col_adj):
        from_cols.update((r, j) for r in rows)
    for i, cols in enumerate(row_adj):
        for c in cols:
            if (i, c) not in from_cols:
                raise AlistFormatError(5 + n + i, f"entry ({i + 1}, {c + 1}) not present in column lists")
    if len(from_cols) != sum(row_deg):
        raise AlistFormatError(5, "column lists contain entries missing from row lists")

    try:
        return SparseBinaryMatrix(
            m, n,
            [np.sort(np.asarray(a, dtype=np.int64)) for a in row_adj],
            [np.sort(np.asarray(a, dtype=np.int64)) for a in col_adj],
            _skip_check=True,
        )
    except ValueError as e:
        raise AlistFormatError(5, str(e)) from None
