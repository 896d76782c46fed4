"""Compiled inner loops for tree construction, traversal and the optimal-cost DP.

Everything here works on the raw arena arrays of a WeightedTree (length n+1
with the trailing slot acting as the NIL sentinel reachable via index -1).
All kernels are deterministic and release the GIL.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def fill_subtree_weights(left, right, weight, sw, root, n):
    """Recompute every subtree weight bottom-up (children before parents)."""
    sw[n] = 0.0  # sentinel
    if root < 0:
        return
    order = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    sp = 0
    stack[0] = root
    cnt = 0
    while sp >= 0:
        x = stack[sp]
        sp -= 1
        order[cnt] = x
        cnt += 1
        if left[x] != -1:
            sp += 1
            stack[sp] = left[x]
        if right[x] != -1:
            sp += 1
            stack[sp] = right[x]
    for k in range(cnt - 1, -1, -1):
        x = order[k]
        sw[x] = weight[x] + sw[left[x]] + sw[right[x]]


@njit(cache=True, nogil=True)
def bst_insert(order, parent, left, right, weight, sw):
    """Insert keys into a plain unbalanced BST in the given order.

    Subtree weights are accumulated along each insertion path, so the
    finished tree already carries coherent aggregates. Returns the root.
    """
    n = order.size
    root = order[0]
    sw[root] = weight[root]
    for t in range(1, n):
        k = order[t]
        cur = root
        while True:
            sw[cur] += weight[k]
            if k < cur:
                nxt = left[cur]
                if nxt == -1:
                    left[cur] = k
                    parent[k] = cur
                    break
            else:
                nxt = right[cur]
                if nxt == -1:
                    right[cur] = k
                    parent[k] = cur
                    break
            cur = nxt
        sw[k] = weight[k]
    return root


@njit(cache=True, nogil=True)
def max_weight_cartesian(parent, left, right, weight, n):
    """Link keys 0..n-1 so heavier nodes sit above lighter ones.

    Equivalent to inserting keys into a plain BST in strictly decreasing
    weight order with ties broken by ascending key, but built in O(n) with
    the right-spine stack. Subtree weights are not filled here.
    """
    stack = np.empty(n, np.int64)
    top = -1
    for k in range(n):
        last = -1
        while top >= 0 and weight[stack[top]] < weight[k]:
            last = stack[top]
            top -= 1
        if last != -1:
            left[k] = last
            parent[last] = k
        if top >= 0:
            right[stack[top]] = k
            parent[k] = stack[top]
        top += 1
        stack[top] = k
    return stack[0]


@njit(cache=True, nogil=True)
def _rotate_up(parent, left, right, weight, sw, x):
    """Raise x over its parent with a single rotation, refreshing both aggregates."""
    p = parent[x]
    g = parent[p]
    if left[p] == x:
        m = right[x]
        left[p] = m
        if m != -1:
            parent[m] = p
        right[x] = p
    else:
        m = left[x]
        right[p] = m
        if m != -1:
            parent[m] = p
        left[x] = p
    parent[p] = x
    parent[x] = g
    if g != -1:
        if left[g] == p:
            left[g] = x
        else:
            right[g] = x
    sw[p] = weight[p] + sw[left[p]] + sw[right[p]]
    sw[x] = weight[x] + sw[left[x]] + sw[right[x]]


@njit(cache=True, nogil=True)
def splay_queries(parent, left, right, weight, sw, root, queries):
    """Splay each queried node to the root (zig / zig-zig / zig-zag)."""
    for qi in range(queries.size):
        x = queries[qi]
        while parent[x] != -1:
            p = parent[x]
            g = parent[p]
            if g == -1:
                _rotate_up(parent, left, right, weight, sw, x)
            elif (left[g] == p) == (left[p] == x):
                _rotate_up(parent, left, right, weight, sw, p)
                _rotate_up(parent, left, right, weight, sw, x)
            else:
                _rotate_up(parent, left, right, weight, sw, x)
                _rotate_up(parent, left, right, weight, sw, x)
        root = x
    return root


@njit(cache=True, nogil=True)
def weight_balanced_build(prefix, parent, left, right, sw, n):
    """Top-down weight-balanced construction over cumulative weights.

    Each range's root is the key whose heavier residual side is lightest,
    i.e. r minimizing max(mass left of r, mass right of r); exact ties go
    to the leftmost candidate. Heavy keys therefore float to the top on
    skewed inputs. The minimizer of the V-shaped objective is found by
    bisection, O(n log n) total.
    """
    ri = np.empty(n, np.int64)
    rj = np.empty(n, np.int64)
    rp = np.empty(n, np.int64)
    rs = np.empty(n, np.int64)
    sp = 0
    ri[0] = 0
    rj[0] = n - 1
    rp[0] = -1
    rs[0] = -1
    root = -1
    while sp >= 0:
        i = ri[sp]
        j = rj[sp]
        par = rp[sp]
        side = rs[sp]
        sp -= 1
        lo = i
        hi = j
        while lo < hi:
            mid = (lo + hi) >> 1
            here = max(prefix[mid] - prefix[i], prefix[j + 1] - prefix[mid + 1])
            after = max(prefix[mid + 1] - prefix[i], prefix[j + 1] - prefix[mid + 2])
            if here <= after:
                hi = mid
            else:
                lo = mid + 1
        r = lo
        parent[r] = par
        sw[r] = prefix[j + 1] - prefix[i]
        if side == 0:
            left[par] = r
        elif side == 1:
            right[par] = r
        else:
            root = r
        if r > i:
            sp += 1
            ri[sp] = i
            rj[sp] = r - 1
            rp[sp] = r
            rs[sp] = 0
        if r < j:
            sp += 1
            ri[sp] = r + 1
            rj[sp] = j
            rp[sp] = r
            rs[sp] = 1
    return root


@njit(cache=True, nogil=True)
def optimal_fill(prefix, cost, root, n):
    """Fill packed triangular cost/root tables for the exact minimum-cost BST.

    Range (i, j) lives at cost[base[i] + j]. The root search is confined to
    the window [root(i, j-1), root(i+1, j)], which is asserted non-empty on
    every cell; ties take the smallest root index.
    """
    base = np.empty(n + 1, np.int64)
    for i in range(n + 1):
        base[i] = i * n - (i * (i - 1)) // 2 - i
    for i in range(n):
        cost[base[i] + i] = prefix[i + 1] - prefix[i]
        root[base[i] + i] = i
    for L in range(2, n + 1):
        for i in range(0, n - L + 1):
            j = i + L - 1
            lo = root[base[i] + j - 1]
            hi = root[base[i + 1] + j]
            assert lo <= hi, "root-window monotonicity violated"
            best = np.inf
            bestr = -1
            for r in range(lo, hi + 1):
                c = 0.0
                if r > i:
                    c += cost[base[i] + r - 1]
                if r < j:
                    c += cost[base[r + 1] + j]
                if c < best:
                    best = c
                    bestr = r
            cost[base[i] + j] = best + (prefix[j + 1] - prefix[i])
            root[base[i] + j] = bestr
    return cost[base[0] + n - 1]


@njit(cache=True, nogil=True)
def optimal_cost_fill(prefix, n):
    """Same DP as optimal_fill but keeps only two root diagonals; returns the cost."""
    total = n * (n + 1) // 2
    cost = np.empty(total, np.float64)
    prev_root = np.empty(n, np.int32)
    cur_root = np.empty(n, np.int32)
    base = np.empty(n + 1, np.int64)
    for i in range(n + 1):
        base[i] = i * n - (i * (i - 1)) // 2 - i
    for i in range(n):
        cost[base[i] + i] = prefix[i + 1] - prefix[i]
        prev_root[i] = i
    for L in range(2, n + 1):
        for i in range(0, n - L + 1):
            j = i + L - 1
            lo = prev_root[i]
            hi = prev_root[i + 1]
            assert lo <= hi, "root-window monotonicity violated"
            best = np.inf
            bestr = -1
            for r in range(lo, hi + 1):
                c = 0.0
                if r > i:
                    c += cost[base[i] + r - 1]
                if r < j:
                    c += cost[base[r + 1] + j]
                if c < best:
                    best = c
                    bestr = r
            cost[base[i] + j] = best + (prefix[j + 1] - prefix[i])
            cur_root[i] = bestr
        prev_root, cur_root = cur_root, prev_root
    return cost[base[0] + n - 1]


@njit(cache=True, nogil=True)
def _heap_sift_up(hm, hx, pos, i):
    # indexed 4-ary max-heap ordered by (merit desc, node id asc);
    # pos[] tracks each node's slot so merits can be updated in place
    m = hm[i]
    x = hx[i]
    while i > 0:
        par = (i - 1) >> 2
        if hm[par] > m or (hm[par] == m and hx[par] <= x):
            break
        hm[i] = hm[par]
        hx[i] = hx[par]
        pos[hx[i]] = i
        i = par
    hm[i] = m
    hx[i] = x
    pos[x] = i


@njit(cache=True, nogil=True)
def _heap_sift_down(hm, hx, pos, size, i):
    m = hm[i]
    x = hx[i]
    while True:
        first = 4 * i + 1
        if first >= size:
            break
        last = first + 4
        if last > size:
            last = size
        best = first
        bm = hm[first]
        bx = hx[first]
        for c in range(first + 1, last):
            if hm[c] > bm or (hm[c] == bm and hx[c] < bx):
                best = c
                bm = hm[c]
                bx = hx[c]
        if bm > m or (bm == m and bx < x):
            hm[i] = bm
            hx[i] = bx
            pos[hx[i]] = i
            i = best
        else:
            break
    hm[i] = m
    hx[i] = x
    pos[x] = i


@njit(cache=True, nogil=True)
def _node_merit(parent, left, right, weight, sw, x):
    p = parent[x]
    if p == -1:
        return 0.0
    if left[p] == x:
        return weight[x] + sw[left[x]] - weight[p] - sw[right[p]]
    return weight[x] + sw[right[x]] - weight[p] - sw[left[p]]


@njit(cache=True, nogil=True)
def optimize_loop(parent, left, right, weight, sw, root, eps, max_bumps):
    """Bump the best node until quiescence or the budget runs out.

    An indexed max-heap keeps exactly one entry per positive-merit node
    (merit ties go to the lowest node id), so the top is always current and
    each merit update is an in-place reposition. The rotation and the five
    affected merits are fused so every neighborhood cell is read once per
    bump. Behaviour matches the Python MeritQueue/optimize_step pair bump
    for bump. max_bumps < 0 means unlimited. Returns
    (root, bumps, budget_exhausted).
    """
    n = parent.size - 1
    hm = np.empty(n, np.float64)
    hx = np.empty(n, np.int32)
    pos = np.full(n, -1, np.int32)
    queued = np.zeros(n, np.uint8)  # summary of pos, small enough to stay cached
    size = 0
    for x in range(n):
        m = _node_merit(parent, left, right, weight, sw, x)
        if m > eps:
            hm[size] = m
            hx[size] = x
            pos[x] = size
            queued[x] = 1
            size += 1
    for i in range((size - 2) >> 2, -1, -1):
        _heap_sift_down(hm, hx, pos, size, i)

    bumps = 0
    exhausted = 0
    while size > 0:
        if max_bumps >= 0 and bumps >= max_bumps:
            exhausted = 1
            break
        x = np.int64(hx[0])
        pos[x] = -1
        queued[x] = 0
        size -= 1
        if size > 0:
            hm[0] = hm[size]
            hx[0] = hx[size]
            pos[hx[0]] = 0
            _heap_sift_down(hm, hx, pos, size, 0)

        # rotate x over its parent q; c keeps its side under x, q adopts
        # d (the moved subtree) and keeps e
        q = np.int64(parent[x])
        g = np.int64(parent[q])
        wx = weight[x]
        wq = weight[q]
        x_was_left = left[q] == x
        if x_was_left:
            c = np.int64(left[x])
            d = np.int64(right[x])
            e = np.int64(right[q])
            left[q] = d
            right[x] = q
        else:
            c = np.int64(right[x])
            d = np.int64(left[x])
            e = np.int64(left[q])
            right[q] = d
            left[x] = q
        if d != -1:
            parent[d] = q
        parent[q] = x
        parent[x] = g
        swc = sw[c]
        swd = sw[d]
        swe = sw[e]
        if x_was_left:
            swq = wq + swd + swe
            swx = wx + swc + swq
        else:
            swq = wq + swe + swd
            swx = wx + swq + swc
        sw[q] = swq
        sw[x] = swx

        # merits of the five nodes whose neighborhoods changed
        if g == -1:
            root = x
            mx = 0.0
        elif left[g] == q:
            left[g] = x
            mx = wx + (swc if x_was_left else swq) - weight[g] - sw[right[g]]
        else:
            right[g] = x
            mx = wx + (swq if x_was_left else swc) - weight[g] - sw[left[g]]
        if x_was_left:
            mq = wq + swe - wx - swc
            mc = -1.0 if c == -1 else weight[c] + sw[left[c]] - wx - swq
            md = -1.0 if d == -1 else weight[d] + sw[left[d]] - wq - swe
            me = -1.0 if e == -1 else weight[e] + sw[right[e]] - wq - swd
        else:
            mq = wq + swe - wx - swc
            mc = -1.0 if c == -1 else weight[c] + sw[right[c]] - wx - swq
            md = -1.0 if d == -1 else weight[d] + sw[right[d]] - wq - swe
            me = -1.0 if e == -1 else weight[e] + sw[left[e]] - wq - swd
        for idx in range(5):
            if idx == 0:
                a = x
                m = mx
            elif idx == 1:
                a = q
                m = mq
            elif idx == 2:
                a = c
                m = mc
            elif idx == 3:
                a = d
                m = md
            else:
                a = e
                m = me
            if a == -1:
                continue
            was_queued = queued[a]
            if m > eps:
                if not was_queued:
                    hm[size] = m
                    hx[size] = a
                    pos[a] = size
                    queued[a] = 1
                    size += 1
                    _heap_sift_up(hm, hx, pos, size - 1)
                else:
                    slot = pos[a]
                    hm[slot] = m
                    _heap_sift_up(hm, hx, pos, slot)
                    _heap_sift_down(hm, hx, pos, size, np.int64(pos[a]))
            elif was_queued:
                slot = pos[a]
                pos[a] = -1
                queued[a] = 0
                size -= 1
                if slot != size:
                    hm[slot] = hm[size]
                    hx[slot] = hx[size]
                    pos[hx[slot]] = slot
                    _heap_sift_up(hm, hx, pos, slot)
                    _heap_sift_down(hm, hx, pos, size, np.int64(pos[hx[slot]]))
        bumps += 1
    return root, bumps, exhausted
