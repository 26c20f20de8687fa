"""Sparse elimination on unit pivots in minimum-degree order.

Only entries of absolute value 1 are used as pivots. Once row operations have
cleared the pivot column, the column operations that clear the pivot row touch
nothing else, so the pivot row and column are dropped outright. Over the
integers every dropped pivot is an invariant factor 1 of the original matrix.
"""

import heapq

from torus_skein.linalg.sparse import SparseMatrix

Rows = dict[int, dict[int, int]]


def eliminate_units(
    matrix: SparseMatrix, *, modulus: int | None = None, max_degree: int | None = None
) -> tuple[int, Rows]:
    """Return the number of pivots eliminated and the nonzero rows left over.

    Stops early once every remaining column holds more than `max_degree` entries.
    """
    rows = matrix.row_maps()
    if modulus is not None:
        rows = {r: reduced for r, row in rows.items() if (reduced := _reduce(row, modulus))}
    columns: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            columns.setdefault(c, set()).add(r)
    heap = [(len(members), c) for c, members in columns.items()]
    heapq.heapify(heap)

    eliminated = 0
    while heap:
        count, c = heapq.heappop(heap)
        members = columns.get(c)
        if members is None or len(members) != count:
            continue
        if max_degree is not None and count > max_degree:
            break
        candidates = [r for r in members if abs(rows[r][c]) == 1]
        if not candidates:
            continue
        pivot = min(candidates, key=lambda r: len(rows[r]))
        pivot_row = rows.pop(pivot)
        unit = pivot_row[c]
        for cc in pivot_row:
            columns[cc].discard(pivot)
        for other in list(columns[c]):
            target = rows[other]
            factor = target[c] * unit
            for cc, value in pivot_row.items():
                updated = target.get(cc, 0) - factor * value
                if modulus is not None:
                    updated %= modulus
                if updated:
                    if cc not in target:
                        columns[cc].add(other)
                    target[cc] = updated
                elif cc in target:
                    del target[cc]
                    columns[cc].discard(other)
            if not target:
                del rows[other]
        del columns[c]
        for cc in pivot_row:
            if cc == c:
                continue
            if columns[cc]:
                heapq.heappush(heap, (len(columns[cc]), cc))
            else:
                del columns[cc]
        eliminated += 1
    return eliminated, rows


def _reduce(row: dict[int, int], modulus: int) -> dict[int, int]:
    return {c: value % modulus for c, value in row.items() if value % modulus}
