"""Pure-Python fraction-free Gauss-Jordan elimination on integer rows.

Reference implementation of the hot kernel; ``_elim_c`` must return
bit-identical output.
"""

from math import gcd


def _primitive(row, ncols):
    g = 0
    for j in range(ncols):
        if row[j]:
            g = gcd(g, row[j])
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def echelon(rows, ncols):
    """Reduce integer rows to primitive reduced echelon form.

    Every returned row is primitive with a positive pivot, and each pivot
    column is zero in all other rows.  Returns ``(rows, pivots)``.
    """
    a = [list(r) for r in rows]
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[piv], a[r] = a[r], a[piv]
        prow = a[r]
        if prow[c] < 0:
            prow = [-v for v in prow]
        prow = _primitive(prow, ncols)
        a[r] = prow
        p = prow[c]
        for s in range(nrows):
            if s == r:
                continue
            row = a[s]
            e = row[c]
            if not e:
                continue
            a[s] = _primitive([p * row[j] - e * prow[j] for j in range(ncols)], ncols)
        pivots.append(c)
        r += 1
    return a[:r], pivots
