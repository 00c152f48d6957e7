"""Compiled inner loops for the dual-coefficient block recurrence.

The sweep fills a scratch buffer one block row at a time; a block row holds
every coefficient paired with one fixed first index.  Row order follows the
canonical k1-major enumeration, so each new row depends only on rows already
written:

  * the (0,0) row comes from a closed-form series in univariate grid
    polynomials (``_fill_corner_row``),
  * rows inside a stripe of constant k1 follow from the two previous rows
    of the same stripe (``_chain_block``),
  * the first row of the next stripe follows from the first rows of the two
    previous stripes (``_bottom_block``).

A block row (k1, k2) only ever touches the columns l with l1 >= k1, so the
scratch stores just that tail of each row, packed back to back (about half
the memory and write traffic of a dense square).  ``rowptr[r] + p`` addresses
column position p of row r; the first N cells of the scratch stay zero and
stand in for the missing row below each stripe's first one.  Packing reads
the upper triangle in position order, which also stays inside the stored
tails.  The ``half`` flag restricts the sweep to block rows with
2*k2 <= n - k1 and recovers the rest by the second/third-coordinate
reflection — valid exactly when the second and third weight exponents are
equal.

All callers with validation and friendly types live in ``dualtable``.
"""

import numba as nb
import numpy as np


@nb.njit(cache=True, inline="always")
def _fill_corner_row(n, a1, a2, a3, S, rowptr, off, cs):
    """Block row of the (0,0) index: closed-form series, all columns."""
    total = a1 + a2 + a3
    eta = a2 + a3 + 1.0
    W = total + n + 3.0
    # running prefactor: starts at (|alpha|+3)_n / n!, gains -1/(a1+2+l1) per stripe
    pref = 1.0
    for j in range(n):
        pref *= (total + 3.0 + j) / (j + 1.0)
    # series head coefficient: (a1+2)_n / (eta+1)_{n-l1}, updated per stripe
    chead = 1.0
    for j in range(n):
        chead *= (a1 + 2.0 + j) / (eta + 1.0 + j)
    row0 = rowptr[0]
    for l1 in range(n + 1):
        M = n - l1
        cs[0] = chead
        if M >= 1:
            cs[1] = cs[0] * (
                -(2.0 + eta) * W / ((a3 + 1.0) * (a1 + n + 1.0) * (eta + 1.0 + M))
            )
        for i in range(2, M + 1):
            ri = (
                -((2.0 * i + eta) / (2.0 * i - 2.0 + eta))
                * (W + i - 1.0)
                * (eta + i - 1.0)
                / ((a1 + n + 2.0 - i) * i * (a3 + i) * (eta + i + M))
            )
            cs[i] = cs[i - 1] * ri
        base = off[l1]
        for l2 in range(M + 1):
            # forward recurrence in the grid polynomials, fused with the dot
            acc = cs[0]
            hprev = 0.0
            hcur = 1.0
            for i in range(M):
                if i == 0:
                    hnext = (a2 + a3 + 2.0) * l2 - (a2 + 1.0) * M
                else:
                    s = a2 + a3 + 1.0
                    P = (2.0 * i + s + 1.0) * (2.0 * i + s) / (i + s)
                    Dq = (
                        (2.0 * i + s + 1.0)
                        * i
                        * (i + M + s)
                        * (i + a3)
                        / ((i + s) * (2.0 * i + s - 1.0))
                    )
                    E = (i + a2 + 1.0) * (M - i)
                    B = -Dq * (i + a2) * (M - i + 1.0)
                    hnext = (P * l2 - Dq - E) * hcur + B * hprev
                acc += cs[i + 1] * hnext
                hprev = hcur
                hcur = hnext
            S[row0 + base + l2] = pref * acc
        pref *= -1.0 / (a1 + 2.0 + l1)
        chead *= eta + M


@nb.njit(cache=True, inline="always")
def _chain_block(n, a2, a3, k1, k2, S, rowptr, off):
    """Block row (k1, k2) from (k1, k2-1) and (k1, k2-2); columns l1 >= k1."""
    row_t = rowptr[off[k1] + k2]
    row_c = rowptr[off[k1] + k2 - 1]
    row_p = 0 if k2 == 1 else rowptr[off[k1] + k2 - 2]  # 0 = the zero region
    ks = k1 + k2 - 1  # degree sum of the source block index
    sk0 = (ks - n) * (k2 - 1 + a2 + 1.0)
    sk2 = (k2 - 1.0) * (ks - a3 - n - 1.0)
    sk1 = sk0 + sk2
    inv = 1.0 / sk0
    for l1 in range(k1, n + 1):
        base = off[l1]
        for l2 in range(n - l1 + 1):
            p = base + l2
            ls = l1 + l2
            sl0 = (ls - n) * (l2 + a2 + 1.0)
            sl2 = l2 * (ls - a3 - n - 1.0)
            val = (sk1 - sl0 - sl2) * S[row_c + p] - sk2 * S[row_p + p]
            if sl0 != 0.0:
                val += sl0 * S[row_c + p + 1]
            if sl2 != 0.0:
                val += sl2 * S[row_c + p - 1]
            S[row_t + p] = val * inv


@nb.njit(cache=True, inline="always")
def _bottom_block(n, a1, a3, k1, S, rowptr, off):
    """Block row (k1+1, 0) from (k1, 0) and (k1-1, 0); columns l1 >= k1+1."""
    row_t = rowptr[off[k1 + 1]]
    row_c = rowptr[off[k1]]
    row_p = 0 if k1 == 0 else rowptr[off[k1 - 1]]  # 0 = the zero region
    tk0 = (k1 - n) * (k1 + a1 + 1.0)
    tk2 = k1 * (k1 - a3 - n - 1.0)
    tk1 = tk0 + tk2
    inv = 1.0 / tk0
    for l1 in range(k1 + 1, n + 1):
        base = off[l1]
        up = off[l1 + 1] - base  # position stride to (l1+1, l2)
        down = base - off[l1 - 1]  # position stride to (l1-1, l2)
        for l2 in range(n - l1 + 1):
            p = base + l2
            ls = l1 + l2
            tl0 = (ls - n) * (l1 + a1 + 1.0)
            tl2 = l1 * (ls - a3 - n - 1.0)
            val = (tk1 - tl0 - tl2) * S[row_c + p] - tk2 * S[row_p + p]
            if tl0 != 0.0:
                val += tl0 * S[row_c + p + up]
            if tl2 != 0.0:
                val += tl2 * S[row_c + p - down]
            S[row_t + p] = val * inv


@nb.njit(cache=True)
def _sweep_stripes(n, a1, a2, a3, half):
    """Run the full block sweep; returns the scratch, row pointers, offsets.

    Row r of the scratch covers column positions [off[i1(r)], N); cell
    (r, p) lives at S[rowptr[r] + p].  S[0:N] is a shared all-zero row.
    """
    N = (n + 1) * (n + 2) // 2
    off = np.empty(n + 2, np.int64)
    acc = 0
    for l1 in range(n + 2):
        off[l1] = acc
        acc += n + 1 - l1
    rowptr = np.empty(N, np.int64)
    cum = N  # cells 0..N-1 stay zero (the virtual row below each stripe)
    for l1 in range(n + 1):
        for l2 in range(n - l1 + 1):
            rowptr[off[l1] + l2] = cum - off[l1]
            cum += N - off[l1]
    S = np.zeros(cum)
    cs = np.empty(n + 1)
    _fill_corner_row(n, a1, a2, a3, S, rowptr, off, cs)
    for k1 in range(n + 1):
        cap = (n - k1) // 2 if half == 1 else n - k1
        for k2 in range(1, cap + 1):
            _chain_block(n, a2, a3, k1, k2, S, rowptr, off)
        if k1 < n:
            _bottom_block(n, a1, a3, k1, S, rowptr, off)
    return S, rowptr, off


@nb.njit(cache=True)
def _pack_upper(n, S, rowptr, off, half):
    """Copy the upper triangle (position order) into packed symmetric storage.

    With ``half`` set, rows that were skipped by the sweep are read through
    the reflection (l1, l2) -> (l1, n - l1 - l2) applied to both indices.
    """
    N = (n + 1) * (n + 2) // 2
    i1 = np.empty(N, np.int64)
    i2 = np.empty(N, np.int64)
    for l1 in range(n + 1):
        for l2 in range(n - l1 + 1):
            i1[off[l1] + l2] = l1
            i2[off[l1] + l2] = l2
    packed = np.empty(N * (N + 1) // 2)
    idx = 0
    for a in range(N):
        a1i = i1[a]
        a2i = i2[a]
        if half == 0 or 2 * a2i <= n - a1i:
            ra = rowptr[a]
            for b in range(a, N):
                packed[idx] = S[ra + b]
                idx += 1
        else:
            ra = rowptr[off[a1i] + (n - a1i - a2i)]
            for b in range(a, N):
                rb = off[i1[b]] + (n - i1[b] - i2[b])
                packed[idx] = S[ra + rb]
                idx += 1
    return packed


@nb.njit(cache=True)
def dual_table_packed(n, a1, a2, a3, half):
    """Packed symmetric table of dual-basis connection coefficients.

    Parameters are the degree, the three weight exponents, and the half-sweep
    flag (nonzero only when a2 == a3).  Returns the packed upper triangle in
    the layout shared with ``domains.CoeffTable``.
    """
    S, rowptr, off = _sweep_stripes(n, a1, a2, a3, half)
    return _pack_upper(n, S, rowptr, off, half)
