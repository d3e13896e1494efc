"""Integer kernels for the exact checks that dominate runtime.

Every kernel works on int64 data: structure constants in CSR form keyed by the
basis pair ``a * dim + b``, and tensors whose coefficients have been cleared of
denominators by the caller.  Two backends implement the same functions:

* ``numba``: ``@njit`` loops over the sparse structure;
* ``numpy``: vectorized gathers and ``np.add.at`` scatters.

Set ``CYBEL_NO_NUMBA=1`` to force the numpy backend (it is also used when numba
cannot be imported).  Callers must check :func:`fits_int64` first; the kernels
do not guard against overflow themselves.
"""

from __future__ import annotations

import os

import numpy as np

_LIMIT = 1 << 62

try:
    if os.environ.get("CYBEL_NO_NUMBA", "") not in ("", "0"):
        raise ImportError("numba disabled by CYBEL_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag in CI
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def fits_int64(total_abs: int, max_const: int, terms: int = 3) -> bool:
    """Whether sums of products bounded by the inputs stay below 2^62."""
    return total_abs * total_abs * terms * max(max_const, 1) < _LIMIT


def bracket_csr(table: dict, dim: int):
    """CSR arrays ``(ptr, idx, val)`` for the bracket table of an algebra."""
    counts = np.zeros(dim * dim, dtype=np.int64)
    for (a, b), entries in table.items():
        counts[a * dim + b] = len(entries)
    ptr = np.zeros(dim * dim + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    idx = np.zeros(int(ptr[-1]), dtype=np.int64)
    val = np.zeros(int(ptr[-1]), dtype=np.int64)
    for (a, b), entries in table.items():
        s = ptr[a * dim + b]
        for k, (g, c) in enumerate(entries):
            idx[s + k] = g
            val[s + k] = c
    return ptr, idx, val


def dense_constants(ptr, idx, val, dim: int) -> np.ndarray:
    c = np.zeros((dim, dim, dim), dtype=np.int64)
    pairs = np.repeat(np.arange(dim * dim), np.diff(ptr))
    c[pairs // dim, pairs % dim, idx] = val
    return c


# ---------------------------------------------------------------------------
# numpy backend


def _expand(ptr, idx, val, keys, weights):
    """For each key (a basis pair) emit its bracket entries times the weight."""
    starts = ptr[keys]
    counts = ptr[keys + 1] - starts
    owner = np.repeat(np.arange(len(keys)), counts)
    offs = np.arange(int(counts.sum())) - np.repeat(np.cumsum(counts) - counts, counts)
    pos = starts[owner] + offs
    return owner, idx[pos], val[pos] * weights[owner]


def cyb_numpy(ptr, idx, val, dim, ii, jj, vv):
    out = np.zeros(dim ** 3, dtype=np.int64)
    t = len(vv)
    if t == 0:
        return out.reshape(dim, dim, dim)
    p = np.repeat(np.arange(t), t)
    q = np.tile(np.arange(t), t)
    w = vv[p] * vv[q]
    d2 = dim * dim
    # [r12, r13]: [x_i, x_k] (x) x_j (x) x_l
    o, g, c = _expand(ptr, idx, val, ii[p] * dim + ii[q], w)
    np.add.at(out, g * d2 + jj[p][o] * dim + jj[q][o], c)
    # [r12, r23]: x_i (x) [x_j, x_k] (x) x_l
    o, g, c = _expand(ptr, idx, val, jj[p] * dim + ii[q], w)
    np.add.at(out, ii[p][o] * d2 + g * dim + jj[q][o], c)
    # [r13, r23]: x_i (x) x_k (x) [x_j, x_l]
    o, g, c = _expand(ptr, idx, val, jj[p] * dim + jj[q], w)
    np.add.at(out, ii[p][o] * d2 + ii[q][o] * dim + g, c)
    return out.reshape(dim, dim, dim)


def jacobi_numpy(ptr, idx, val, dim):
    """First (x, y, z) violating Jacobi, or (-1, -1, -1)."""
    c = dense_constants(ptr, idx, val, dim)
    flat = c.reshape(dim * dim, dim)
    for x in range(dim):
        res = (c[x] @ c.reshape(dim, dim * dim)).reshape(dim, dim, dim)
        res += (flat @ c[:, x, :]).reshape(dim, dim, dim)
        res += np.einsum("zg,gyk->yzk", c[:, x, :], c)
        bad = np.argwhere(res != 0)
        if len(bad):
            y, z, _ = bad[0]
            return x, int(y), int(z)
    return -1, -1, -1


def form_invariance_numpy(ptr, idx, val, dim, form):
    """First (x, y, z) with <[x,y],z> + <y,[x,z]> != 0, or (-1, -1, -1)."""
    c = dense_constants(ptr, idx, val, dim)
    res = np.einsum("xyg,gz->xyz", c, form) + np.einsum("yg,xzg->xyz", form, c)
    bad = np.argwhere(res != 0)
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return -1, -1, -1


# ---------------------------------------------------------------------------
# numba backend

if HAVE_NUMBA:

    @njit(cache=True)
    def cyb_numba(ptr, idx, val, dim, ii, jj, vv):  # pragma: no cover - compiled
        out = np.zeros((dim, dim, dim), dtype=np.int64)
        t = vv.shape[0]
        for p in range(t):
            for q in range(t):
                w = vv[p] * vv[q]
                key = ii[p] * dim + ii[q]
                for s in range(ptr[key], ptr[key + 1]):
                    out[idx[s], jj[p], jj[q]] += w * val[s]
                key = jj[p] * dim + ii[q]
                for s in range(ptr[key], ptr[key + 1]):
                    out[ii[p], idx[s], jj[q]] += w * val[s]
                key = jj[p] * dim + jj[q]
                for s in range(ptr[key], ptr[key + 1]):
                    out[ii[p], ii[q], idx[s]] += w * val[s]
        return out

    @njit(cache=True)
    def _jacobi_numba(ptr, idx, val, dim):  # pragma: no cover - compiled
        acc = np.zeros(dim, dtype=np.int64)
        for x in range(dim):
            for y in range(dim):
                for z in range(dim):
                    for a, b, cc in ((x, y, z), (y, z, x), (z, x, y)):
                        key = a * dim + b
                        for s in range(ptr[key], ptr[key + 1]):
                            g = idx[s]
                            k2 = g * dim + cc
                            for u in range(ptr[k2], ptr[k2 + 1]):
                                acc[idx[u]] += val[s] * val[u]
                    for k in range(dim):
                        if acc[k] != 0:
                            return x, y, z
        return -1, -1, -1

    def jacobi_numba(ptr, idx, val, dim):
        x, y, z = _jacobi_numba(ptr, idx, val, dim)
        return int(x), int(y), int(z)

    @njit(cache=True)
    def _form_numba(ptr, idx, val, dim, form):  # pragma: no cover - compiled
        for x in range(dim):
            for y in range(dim):
                for z in range(dim):
                    s = 0
                    key = x * dim + y
                    for u in range(ptr[key], ptr[key + 1]):
                        s += val[u] * form[idx[u], z]
                    key = x * dim + z
                    for u in range(ptr[key], ptr[key + 1]):
                        s += form[y, idx[u]] * val[u]
                    if s != 0:
                        return x, y, z
        return -1, -1, -1

    def form_invariance_numba(ptr, idx, val, dim, form):
        x, y, z = _form_numba(ptr, idx, val, dim, form)
        return int(x), int(y), int(z)

    cyb = cyb_numba
    jacobi = jacobi_numba
    form_invariance = form_invariance_numba
else:
    cyb = cyb_numpy
    jacobi = jacobi_numpy
    form_invariance = form_invariance_numpy
