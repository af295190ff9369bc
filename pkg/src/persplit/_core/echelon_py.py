"""Pure-Python row reduction kernel.

Entries may be any exact field elements supporting ``+ - * /``,
truthiness (nonzero test) and comparison with ``1``.  The compiled
variant in ``_echelon.pyx`` implements the identical algorithm.
"""

BACKEND = "python"


def rref_rows(rows, ncols):
    """Reduced row echelon form of ``rows``, zero rows dropped.

    Returns ``(reduced_rows, pivot_columns)``.  The input is not mutated.
    The output is the unique RREF of the row space, so it doubles as a
    canonical form.
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    pivots = []
    lead = 0
    for col in range(ncols):
        pivot_row = -1
        for r in range(lead, nrows):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row < 0:
            continue
        work[lead], work[pivot_row] = work[pivot_row], work[lead]
        head = work[lead][col]
        if head != 1:
            row = work[lead]
            for j in range(col, ncols):
                row[j] = row[j] / head
        lead_row = work[lead]
        for r in range(nrows):
            if r != lead and work[r][col]:
                factor = work[r][col]
                row = work[r]
                for j in range(col, ncols):
                    row[j] = row[j] - factor * lead_row[j]
        pivots.append(col)
        lead += 1
        if lead == nrows:
            break
    return [tuple(work[r]) for r in range(lead)], pivots
