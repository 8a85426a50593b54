"""Compiled query kernel for the range-splitting top-k walk.

Same algorithm as core.TopKStream, restated over flat int64 arrays so numba
can compile it: a manual binary max-heap of candidate ranges keyed by
(max weight desc, argmax asc), splitting the popped range around its
heaviest phrase.  core imports this module lazily and falls back to the
pure-Python path when numba is unavailable.

The heap lives in four parallel scratch arrays sized k+2: after k results
at most one split survives per emission beyond the initial range, and
pushes are skipped once the heap can no longer influence the first k pops.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _range_max(maxw, arg, cap, lo, hi):
    # Bottom-up walk from both ends of the leaf row; ties keep the
    # smallest argmax because stored args grow left to right.
    best_w = np.int64(-1)
    best_a = np.int64(-1)
    l = lo + cap
    r = hi + cap + 1
    while l < r:
        if l & 1:
            w = maxw[l]
            if w > best_w or (w == best_w and arg[l] < best_a):
                best_w = w
                best_a = arg[l]
            l += 1
        if r & 1:
            r -= 1
            w = maxw[r]
            if w > best_w or (w == best_w and arg[r] < best_a):
                best_w = w
                best_a = arg[r]
        l >>= 1
        r >>= 1
    return best_w, best_a


@njit(cache=True, nogil=True)
def topk_into(maxw, arg, cap, n, qlo, qhi, k, out):
    """Write up to k result positions for the range [qlo, qhi] into out.

    Returns the number written.  out must hold at least min(k, qhi-qlo+1)
    slots; positions come out ordered by (weight desc, position asc).
    """
    if n == 0 or k <= 0:
        return 0

    # (weight, argmax, lo, hi) heap in parallel arrays; slot 0 is the top.
    heap_w = np.empty(k + 2, dtype=np.int64)
    heap_a = np.empty(k + 2, dtype=np.int64)
    heap_lo = np.empty(k + 2, dtype=np.int64)
    heap_hi = np.empty(k + 2, dtype=np.int64)

    if qlo == 0 and qhi == n - 1:
        w, a = maxw[1], arg[1]
    else:
        w, a = _range_max(maxw, arg, cap, qlo, qhi)
    heap_w[0] = w
    heap_a[0] = a
    heap_lo[0] = qlo
    heap_hi[0] = qhi
    size = 1

    count = 0
    while size > 0 and count < k:
        top_w = heap_w[0]
        top_a = heap_a[0]
        top_lo = heap_lo[0]
        top_hi = heap_hi[0]
        out[count] = top_a
        count += 1

        # Pop: move the last slot to the root and sift it down.
        size -= 1
        if size > 0:
            heap_w[0] = heap_w[size]
            heap_a[0] = heap_a[size]
            heap_lo[0] = heap_lo[size]
            heap_hi[0] = heap_hi[size]
            i = 0
            while True:
                left = 2 * i + 1
                if left >= size:
                    break
                right = left + 1
                best = left
                if right < size and (
                    heap_w[right] > heap_w[left]
                    or (heap_w[right] == heap_w[left] and heap_a[right] < heap_a[left])
                ):
                    best = right
                if heap_w[best] > heap_w[i] or (
                    heap_w[best] == heap_w[i] and heap_a[best] < heap_a[i]
                ):
                    heap_w[i], heap_w[best] = heap_w[best], heap_w[i]
                    heap_a[i], heap_a[best] = heap_a[best], heap_a[i]
                    heap_lo[i], heap_lo[best] = heap_lo[best], heap_lo[i]
                    heap_hi[i], heap_hi[best] = heap_hi[best], heap_hi[i]
                    i = best
                else:
                    break

        if count >= k:
            break

        # Split the emitted range around its argmax and push the halves.
        if top_a > top_lo:
            w, a = _range_max(maxw, arg, cap, top_lo, top_a - 1)
            i = size
            heap_w[i] = w
            heap_a[i] = a
            heap_lo[i] = top_lo
            heap_hi[i] = top_a - 1
            size += 1
            while i > 0:
                parent = (i - 1) // 2
                if heap_w[i] > heap_w[parent] or (
                    heap_w[i] == heap_w[parent] and heap_a[i] < heap_a[parent]
                ):
                    heap_w[i], heap_w[parent] = heap_w[parent], heap_w[i]
                    heap_a[i], heap_a[parent] = heap_a[parent], heap_a[i]
                    heap_lo[i], heap_lo[parent] = heap_lo[parent], heap_lo[i]
                    heap_hi[i], heap_hi[parent] = heap_hi[parent], heap_hi[i]
                    i = parent
                else:
                    break
        if top_a < top_hi:
            w, a = _range_max(maxw, arg, cap, top_a + 1, top_hi)
            i = size
            heap_w[i] = w
            heap_a[i] = a
            heap_lo[i] = top_a + 1
            heap_hi[i] = top_hi
            size += 1
            while i > 0:
                parent = (i - 1) // 2
                if heap_w[i] > heap_w[parent] or (
                    heap_w[i] == heap_w[parent] and heap_a[i] < heap_a[parent]
                ):
                    heap_w[i], heap_w[parent] = heap_w[parent], heap_w[i]
                    heap_a[i], heap_a[parent] = heap_a[parent], heap_a[i]
                    heap_lo[i], heap_lo[parent] = heap_lo[parent], heap_lo[i]
                    heap_hi[i], heap_hi[parent] = heap_hi[parent], heap_hi[i]
                    i = parent
                else:
                    break

    return count
