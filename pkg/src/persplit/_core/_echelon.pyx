# cython: language_level=3
"""Compiled row reduction kernel.

Same algorithm and contract as ``echelon_py.rref_rows``; the win comes
from typed loop indices and list indexing, the field arithmetic stays in
Python objects (exact rationals).
"""

BACKEND = "cython"


def rref_rows(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows, lead, col, r, j, pivot_row
    cdef list work = [list(row_in) for row_in in rows]
    cdef list pivots = []
    cdef list row, lead_row
    nrows = len(work)
    lead = 0
    for col in range(ncols):
        pivot_row = -1
        for r in range(lead, nrows):
            if (<list>work[r])[col]:
                pivot_row = r
                break
        if pivot_row < 0:
            continue
        work[lead], work[pivot_row] = work[pivot_row], work[lead]
        lead_row = <list>work[lead]
        head = lead_row[col]
        if head != 1:
            for j in range(col, ncols):
                lead_row[j] = lead_row[j] / head
        for r in range(nrows):
            if r != lead and (<list>work[r])[col]:
                row = <list>work[r]
                factor = row[col]
                for j in range(col, ncols):
                    row[j] = row[j] - factor * lead_row[j]
        pivots.append(col)
        lead += 1
        if lead == nrows:
            break
    return [tuple(work[r]) for r in range(lead)], pivots
