"""Hot inner loops: numba kernels with pure-numpy twins.

Three kernels dominate runtime:

* ``form_histogram`` enumerates a finite quadratic module and bins its values
  (Gauss sums, exhaustive q-value scans over up to 2**24 classes);
* ``gf_poly_*`` do polynomial arithmetic over GF(2^k) modulo a polynomial
  (Frobenius powers and trace maps inside factorization);
* ``gf_rank`` is Gaussian elimination over GF(2^k) (Jacobian colengths).

Field elements are ints in ``[0, 2**k)``; multiplication uses exp/log tables
where ``exp`` has length ``2*(q-1)`` so no reduction is needed after adding
two logs. Every public function takes ``backend=None|"numba"|"numpy"``.
"""

from __future__ import annotations

import numpy as np

from ._accel import njit, resolve

# --------------------------------------------------------------------------
# finite quadratic module enumeration


@njit(cache=True)
def _form_histogram_nb(orders, qdiag, bmat, modulus):
    r = orders.shape[0]
    hist = np.zeros(modulus, dtype=np.int64)
    x = np.zeros(r, dtype=np.int64)
    lin = np.zeros(r, dtype=np.int64)  # lin[i] = sum_{j != i} bmat[i, j] x[j]
    total = 1
    for i in range(r):
        total *= orders[i]
    value = 0
    for _ in range(total):
        hist[value] += 1
        # increment the mixed-radix counter, updating value and lin
        i = 0
        while i < r:
            if x[i] + 1 < orders[i]:
                value = (value + qdiag[i] * (2 * x[i] + 1) + lin[i]) % modulus
                for j in range(r):
                    if j != i:
                        lin[j] = (lin[j] + bmat[j, i]) % modulus
                x[i] += 1
                break
            # carry: x[i] drops from orders[i]-1 to 0
            d = x[i]
            value = (value - qdiag[i] * d * d - lin[i] * d) % modulus
            for j in range(r):
                if j != i:
                    lin[j] = (lin[j] - bmat[j, i] * d) % modulus
            x[i] = 0
            i += 1
    return hist


def _form_histogram_np(orders, qdiag, bmat, modulus, chunk=1 << 16):
    r = orders.shape[0]
    total = int(np.prod(orders)) if r else 1
    hist = np.zeros(modulus, dtype=np.int64)
    upper = np.triu(bmat, 1)
    strides = np.ones(r, dtype=np.int64)
    for i in range(1, r):
        strides[i] = strides[i - 1] * orders[i - 1]
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        X = (idx[:, None] // strides[None, :]) % orders[None, :]
        vals = (X * X) @ qdiag
        cross = (X @ upper.T) % modulus
        vals = (vals + (cross * X).sum(axis=1)) % modulus
        hist += np.bincount(vals, minlength=modulus)
    return hist


def form_histogram(orders, qdiag, bmat, modulus, backend=None):
    """Histogram of ``q(x) * N mod 2N`` over all ``x`` in ``prod Z/orders``.

    Parameters
    ----------
    orders : array of int
        Cyclic orders of the generators.
    qdiag : array of int
        ``N * q(g_i) mod 2N``.
    bmat : 2-d array of int
        Symmetric, ``2N * b(g_i, g_j) mod 2N`` off the diagonal.
    modulus : int
        ``2N``.

    Returns
    -------
    hist : ndarray of int64, length ``modulus``
    """
    orders = np.ascontiguousarray(orders, dtype=np.int64)
    qdiag = np.ascontiguousarray(qdiag, dtype=np.int64) % modulus
    bmat = np.ascontiguousarray(bmat, dtype=np.int64) % modulus
    if resolve(backend) == "numba":
        return _form_histogram_nb(orders, qdiag, bmat, int(modulus))
    return _form_histogram_np(orders, qdiag, bmat, int(modulus))


# --------------------------------------------------------------------------
# polynomials over GF(2^k); arrays hold ascending coefficients


@njit(cache=True)
def _trim_nb(a):
    n = a.shape[0]
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return a[:n].copy()


@njit(cache=True)
def _polyrem_nb(c, f, exp, log, qm1):
    # f is nonzero; normalise by its leading coefficient
    df = f.shape[0] - 1
    r = c.copy()
    lead_inv_log = (qm1 - log[f[df]]) % qm1
    for top in range(r.shape[0] - 1, df - 1, -1):
        coef = r[top]
        if coef != 0:
            s = (log[coef] + lead_inv_log) % qm1
            shift = top - df
            for j in range(df + 1):
                if f[j] != 0:
                    r[shift + j] ^= exp[s + log[f[j]]]
    if df == 0:
        return np.zeros(0, dtype=np.int64)
    return _trim_nb(r[:df])


@njit(cache=True)
def _polymul_nb(a, b, exp, log):
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    c = np.zeros(a.shape[0] + b.shape[0] - 1, dtype=np.int64)
    for i in range(a.shape[0]):
        ai = a[i]
        if ai == 0:
            continue
        la = log[ai]
        for j in range(b.shape[0]):
            if b[j] != 0:
                c[i + j] ^= exp[la + log[b[j]]]
    return c


@njit(cache=True)
def _mulmod_nb(a, b, f, exp, log, qm1):
    return _polyrem_nb(_polymul_nb(a, b, exp, log), f, exp, log, qm1)


@njit(cache=True)
def _sqr_nb(a, exp, log):
    if a.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    c = np.zeros(2 * a.shape[0] - 1, dtype=np.int64)
    for i in range(a.shape[0]):
        if a[i] != 0:
            c[2 * i] = exp[2 * log[a[i]]]
    return c


@njit(cache=True)
def _sqr_iter_nb(a, f, times, exp, log, qm1):
    r = _polyrem_nb(a, f, exp, log, qm1)
    for _ in range(times):
        r = _polyrem_nb(_sqr_nb(r, exp, log), f, exp, log, qm1)
    return r


@njit(cache=True)
def _trace_nb(a, f, nterms, exp, log, qm1):
    df = f.shape[0] - 1
    acc = np.zeros(max(df, 1), dtype=np.int64)
    cur = _polyrem_nb(a, f, exp, log, qm1)
    for _ in range(nterms):
        for i in range(cur.shape[0]):
            acc[i] ^= cur[i]
        cur = _polyrem_nb(_sqr_nb(cur, exp, log), f, exp, log, qm1)
    return _trim_nb(acc)


def _trim_np(a):
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1].copy() if nz.size else np.zeros(0, dtype=np.int64)


def _mul_table_np(x, y, exp, log):
    """Elementwise field product of broadcastable int arrays."""
    out = exp[log[x] + log[y]]
    return np.where((x == 0) | (y == 0), 0, out)


def _polymul_np(a, b, exp, log):
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=np.int64)
    prod = _mul_table_np(a[:, None], b[None, :], exp, log)
    idx = np.add.outer(np.arange(a.size), np.arange(b.size))
    c = np.zeros(a.size + b.size - 1, dtype=np.int64)
    np.bitwise_xor.at(c, idx.ravel(), prod.ravel())
    return c


def _polyrem_np(c, f, exp, log, qm1):
    df = f.size - 1
    r = c.copy()
    lead_inv = exp[(qm1 - log[f[df]]) % qm1]
    for top in range(r.size - 1, df - 1, -1):
        coef = r[top]
        if coef:
            s = _mul_table_np(np.int64(coef), lead_inv, exp, log)
            r[top - df : top + 1] ^= _mul_table_np(f, s, exp, log)
    return _trim_np(r[:df]) if df else np.zeros(0, dtype=np.int64)


def _sqr_np(a, exp, log):
    if a.size == 0:
        return np.zeros(0, dtype=np.int64)
    c = np.zeros(2 * a.size - 1, dtype=np.int64)
    c[::2] = _mul_table_np(a, a, exp, log)
    return c


def _prep(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def gf_poly_mulmod(a, b, f, exp, log, backend=None):
    """``a * b mod f`` over GF(2^k)."""
    a, b, f = _prep(a), _prep(b), _prep(f)
    qm1 = (exp.shape[0]) // 2
    if resolve(backend) == "numba":
        return _mulmod_nb(a, b, f, exp, log, qm1)
    return _polyrem_np(_polymul_np(a, b, exp, log), f, exp, log, qm1)


def gf_poly_sqr_iter(a, f, times, exp, log, backend=None):
    """``a ** (2 ** times) mod f`` by repeated Frobenius squaring."""
    a, f = _prep(a), _prep(f)
    qm1 = exp.shape[0] // 2
    if resolve(backend) == "numba":
        return _sqr_iter_nb(a, f, int(times), exp, log, qm1)
    r = _polyrem_np(a, f, exp, log, qm1)
    for _ in range(int(times)):
        r = _polyrem_np(_sqr_np(r, exp, log), f, exp, log, qm1)
    return r


def gf_poly_trace(a, f, nterms, exp, log, backend=None):
    """``sum_{i < nterms} a ** (2 ** i) mod f`` (absolute trace map)."""
    a, f = _prep(a), _prep(f)
    qm1 = exp.shape[0] // 2
    if resolve(backend) == "numba":
        return _trace_nb(a, f, int(nterms), exp, log, qm1)
    df = f.size - 1
    acc = np.zeros(max(df, 1), dtype=np.int64)
    cur = _polyrem_np(a, f, exp, log, qm1)
    for _ in range(int(nterms)):
        acc[: cur.size] ^= cur
        cur = _polyrem_np(_sqr_np(cur, exp, log), f, exp, log, qm1)
    return _trim_np(acc)


# --------------------------------------------------------------------------
# rank over GF(2^k)


@njit(cache=True)
def _rank_nb(m, exp, log, qm1):
    a = m.copy()
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        p = -1
        for i in range(rank, rows):
            if a[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != rank:
            for j in range(cols):
                t = a[p, j]
                a[p, j] = a[rank, j]
                a[rank, j] = t
        inv_log = (qm1 - log[a[rank, c]]) % qm1
        for j in range(c, cols):
            if a[rank, j] != 0:
                a[rank, j] = exp[log[a[rank, j]] + inv_log]
        for i in range(rank + 1, rows):
            fct = a[i, c]
            if fct != 0:
                lf = log[fct]
                for j in range(c, cols):
                    if a[rank, j] != 0:
                        a[i, j] ^= exp[lf + log[a[rank, j]]]
        rank += 1
    return rank


def _rank_np(m, exp, log, qm1):
    a = m.copy()
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        p = rank + nz[0]
        if p != rank:
            a[[p, rank]] = a[[rank, p]]
        inv = exp[(qm1 - log[a[rank, c]]) % qm1]
        a[rank] = _mul_table_np(a[rank], inv, exp, log)
        below = a[rank + 1 :]
        factors = below[:, c].copy()
        hit = factors != 0
        if hit.any():
            below[hit] ^= _mul_table_np(factors[hit][:, None], a[rank][None, :], exp, log)
        rank += 1
    return rank


def gf_rank(matrix, exp, log, backend=None) -> int:
    """Rank of a matrix with GF(2^k) entries."""
    m = np.ascontiguousarray(matrix, dtype=np.int64)
    if m.size == 0:
        return 0
    qm1 = exp.shape[0] // 2
    if resolve(backend) == "numba":
        return int(_rank_nb(m, exp, log, qm1))
    return int(_rank_np(m, exp, log, qm1))
