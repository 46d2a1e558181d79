"""Exact rank of sparse integer matrices by fraction-free elimination."""

from __future__ import annotations

from math import gcd
from typing import Iterable


def _normalize(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    return row


def integer_rank(rows: Iterable[dict[int, int]]) -> int:
    """Rank over Q of the matrix whose rows are sparse ``{column: value}`` maps.

    Rows are reduced one at a time against an echelon set keyed by leading
    column.  Each combination is fraction free and followed by division by
    the content of the row, which keeps entries small on boundary matrices.
    """
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                pivots[c] = _normalize(row)
                break
            a, b = prow[c], row[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in row.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _normalize(new) if new else new
    return len(pivots)
