"""Inner loops, each in two flavours.

Every kernel exists as an explicit loop (``*_loop``, compiled with numba) and
as a vectorized numpy function (``*_numpy``). The public names at the bottom
of the module are bound to one or the other according to
:data:`tenrank._accel.USE_NUMBA`. Both flavours take and return plain numpy
arrays and produce identical integer results; floating point results agree to
rounding.

Bitmask convention: bit ``n`` set means mode ``n`` (0-based) is in the set.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

# products at or above this bound are searched with Python integers
INT64_SAFE = 1 << 62


# --------------------------------------------------------------------------
# Khatri-Rao product: column r is kron(a[:, r], b[:, r]), b's index fastest.

@njit
def khatri_rao_loop(a, b):
    rows_a, rank = a.shape
    rows_b = b.shape[0]
    out = np.empty((rows_a * rows_b, rank))
    for i in range(rows_a):
        for j in range(rows_b):
            row = i * rows_b + j
            for r in range(rank):
                out[row, r] = a[i, r] * b[j, r]
    return out


def khatri_rao_numpy(a, b):
    return (a[:, None, :] * b[None, :, :]).reshape(a.shape[0] * b.shape[0], a.shape[1])


# --------------------------------------------------------------------------
# Dense synthesis of a weighted CP model, first index fastest.

@njit
def cpd_full_loop(weights, stacked, offsets, dims):
    order = dims.shape[0]
    rank = weights.shape[0]
    total = 1
    for n in range(order):
        total *= dims[n]
    out = np.empty(total)
    first = dims[0]
    coef = np.empty(rank)
    # idx walks modes 1..N-1; mode 0 is the contiguous inner loop
    idx = np.zeros(order, np.int64)
    for base in range(0, total, first):
        for r in range(rank):
            term = weights[r]
            for n in range(1, order):
                term *= stacked[offsets[n] + idx[n], r]
            coef[r] = term
        for i in range(first):
            acc = 0.0
            for r in range(rank):
                acc += stacked[i, r] * coef[r]
            out[base + i] = acc
        n = 1
        while n < order:
            idx[n] += 1
            if idx[n] < dims[n]:
                break
            idx[n] = 0
            n += 1
    return out


def cpd_full_numpy(weights, factors):
    kr = factors[0]
    for a in factors[1:]:
        kr = khatri_rao_numpy(a, kr)
    return kr @ weights


def _cpd_full_dispatch_numba(weights, factors):
    dims = np.array([a.shape[0] for a in factors], dtype=np.int64)
    offsets = np.zeros(len(factors), dtype=np.int64)
    offsets[1:] = np.cumsum(dims)[:-1]
    stacked = np.ascontiguousarray(np.vstack(factors))
    return cpd_full_loop(weights, stacked, offsets, dims)


# --------------------------------------------------------------------------
# Exhaustive search for the bipartition maximizing min(rows, cols).
#
# Only subsets excluding the last mode are visited, so each of the
# 2**(N-1) - 1 proper bipartitions is seen once. Each is oriented so that the
# row side has the smaller product (on equal products, the lexicographically
# smaller mode list). Ties on the min-product go to the smaller |rows - cols|,
# then to the lexicographically smallest row-side mode list.

@njit
def mask_lex_less(a, b):
    """True when the sorted mode list of mask ``a`` precedes that of ``b``."""
    while a != 0 and b != 0:
        low_a = a & -a
        low_b = b & -b
        if low_a != low_b:
            return low_a < low_b
        a ^= low_a
        b ^= low_b
    return a == 0 and b != 0


@njit
def _orient(mask, comp, p, q):
    if p < q:
        return mask, p, q
    if q < p:
        return comp, q, p
    if mask_lex_less(mask, comp):
        return mask, p, q
    return comp, q, p


@njit
def best_split_loop(dims):
    order = dims.shape[0]
    full = (np.int64(1) << order) - 1
    total = np.int64(1)
    for n in range(order):
        total *= dims[n]
    best_mask = np.int64(0)
    best_lo = np.int64(-1)
    best_gap = np.int64(0)
    for mask in range(1, np.int64(1) << (order - 1)):
        p = np.int64(1)
        for n in range(order - 1):
            if (mask >> n) & 1:
                p *= dims[n]
        s1, lo, hi = _orient(mask, full ^ mask, p, total // p)
        gap = hi - lo
        if lo > best_lo:
            better = True
        elif lo < best_lo:
            better = False
        elif gap != best_gap:
            better = gap < best_gap
        else:
            better = mask_lex_less(s1, best_mask)
        if better:
            best_mask = s1
            best_lo = lo
            best_gap = gap
    return best_mask


def _lex_key(mask):
    return [n for n in range(mask.bit_length()) if (mask >> n) & 1]


def _pick(candidates, dims, total):
    """Orient each candidate mask and apply the tie-break; Python integers."""
    full = (1 << len(dims)) - 1
    best = None
    for mask in candidates:
        mask = int(mask)
        comp = full ^ mask
        p = 1
        for n, d in enumerate(dims):
            if (mask >> n) & 1:
                p *= int(d)
        q = total // p
        if p < q or (p == q and _lex_key(mask) < _lex_key(comp)):
            s1, lo, hi = mask, p, q
        else:
            s1, lo, hi = comp, q, p
        key = (-lo, hi - lo, _lex_key(s1))
        if best is None or key < best[0]:
            best = (key, s1)
    return best[1]


def best_split_numpy(dims, chunk=1 << 16):
    dims = np.asarray(dims, dtype=np.int64)
    order = dims.shape[0]
    total = int(np.prod(dims))
    head = dims[: order - 1]
    shifts = np.arange(order - 1, dtype=np.int64)
    stop = 1 << (order - 1)
    best_lo = -1
    candidates = []
    for start in range(1, stop, chunk):
        masks = np.arange(start, min(start + chunk, stop), dtype=np.int64)
        bits = (masks[:, None] >> shifts) & 1
        p = np.where(bits == 1, head, 1).prod(axis=1)
        lo = np.minimum(p, total // p)
        top = int(lo.max())
        if top > best_lo:
            best_lo = top
            candidates = list(masks[lo == top])
        elif top == best_lo:
            candidates.extend(masks[lo == top])
    return _pick(candidates, dims.tolist(), total)


def best_split_bigint(dims):
    """Same search with unbounded integers; used when products overflow int64."""
    dims = [int(d) for d in dims]
    total = 1
    for d in dims:
        total *= d
    order = len(dims)
    best_lo = -1
    candidates = []
    for mask in range(1, 1 << (order - 1)):
        p = 1
        for n in range(order - 1):
            if (mask >> n) & 1:
                p *= dims[n]
        lo = min(p, total // p)
        if lo > best_lo:
            best_lo, candidates = lo, [mask]
        elif lo == best_lo:
            candidates.append(mask)
    return _pick(candidates, dims, total)


# --------------------------------------------------------------------------
# Number partitioning by subset-sum dynamic programming on the dimensions.
# Returns the mask of a subset whose sum is the largest value <= total/2.
# Backtracking prefers leaving an item out, so both flavours agree exactly.

@njit
def sum_partition_loop(values):
    count = values.shape[0]
    total = 0
    for j in range(count):
        total += values[j]
    half = total // 2
    reach = np.zeros((count + 1, half + 1), np.bool_)
    reach[0, 0] = True
    for j in range(1, count + 1):
        v = values[j - 1]
        for s in range(half + 1):
            if reach[j - 1, s] or (s >= v and reach[j - 1, s - v]):
                reach[j, s] = True
    s = half
    while not reach[count, s]:
        s -= 1
    mask = np.int64(0)
    for j in range(count, 0, -1):
        if not reach[j - 1, s]:
            mask |= np.int64(1) << (j - 1)
            s -= values[j - 1]
    return mask


def sum_partition_numpy(values):
    values = np.asarray(values, dtype=np.int64)
    count = values.shape[0]
    half = int(values.sum()) // 2
    reach = np.zeros((count + 1, half + 1), dtype=bool)
    reach[0, 0] = True
    for j in range(1, count + 1):
        v = int(values[j - 1])
        reach[j] = reach[j - 1]
        if v <= half:
            reach[j, v:] |= reach[j - 1, : half + 1 - v]
    s = int(np.flatnonzero(reach[count])[-1])
    mask = 0
    for j in range(count, 0, -1):
        if not reach[j - 1, s]:
            mask |= 1 << (j - 1)
            s -= int(values[j - 1])
    return mask


# --------------------------------------------------------------------------

if USE_NUMBA:
    khatri_rao = khatri_rao_loop
    cpd_full = _cpd_full_dispatch_numba
    best_split = best_split_loop
    sum_partition = sum_partition_loop
else:
    khatri_rao = khatri_rao_numpy
    cpd_full = cpd_full_numpy
    best_split = best_split_numpy
    sum_partition = sum_partition_numpy

# explicit pairs, for equivalence tests and the benchmark
VARIANTS = {
    "khatri_rao": (khatri_rao_loop, khatri_rao_numpy),
    "cpd_full": (_cpd_full_dispatch_numba, cpd_full_numpy),
    "best_split": (best_split_loop, best_split_numpy),
    "sum_partition": (sum_partition_loop, sum_partition_numpy),
}
