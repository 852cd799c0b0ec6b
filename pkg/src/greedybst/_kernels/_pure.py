"""Pure-Python fallback for the hot kernels.

Mirrors the compiled extension exactly: same signatures, same outputs, same
tie-breaks.  The test suite asserts bit-identical agreement between the two.
"""

from __future__ import annotations

from bisect import bisect_left

ENGINE = "pure"


def greedyass_run(n: int, searches) -> tuple[list[list[int]], list[int]]:
    """Run the two-directional last-access sweep over a whole sequence.

    Returns (added columns per row, ascending; final last-access table indexed
    1..n with slot 0 unused).
    """
    rho = [0] * (n + 1)
    added_rows: list[list[int]] = []
    for i, s in enumerate(searches, start=1):
        if not 1 <= s <= n:
            raise ValueError(f"search key {s} outside universe 1..{n}")
        added: list[int] = []
        prev = rho[s]
        for j in range(s + 1, n + 1):
            if rho[j] > prev:
                prev = rho[j]
                added.append(j)
        prev = rho[s]
        for j in range(s - 1, 0, -1):
            if rho[j] > prev:
                prev = rho[j]
                added.append(j)
        for j in added:
            rho[j] = i
        rho[s] = i
        added.sort()
        added_rows.append(added)
    return added_rows, rho


def greedy_future_run(
    n: int,
    left: list[int],
    right: list[int],
    root: int,
    searches,
    collect_accessed: bool = False,
    sequential_checks: bool = False,
) -> tuple[list[int], list[list[int]] | None, list[int], list[int], int, list[str]]:
    """Run the search-path restructuring algorithm over a whole sequence.

    The tree is given as child arrays indexed by key (0 = none).  Per search:
    take the root-to-key path, then rebuild it so the next searched key (or
    its path predecessor/successor pair) sits at the top, recursing on the
    future subsequence restricted to each side.  The final search leaves the
    tree untouched.

    Future lookups use a segment tree of next-occurrence times over the
    elements, so each rebuild costs O(path * log n).

    Returns (per-search costs, accessed nodes per search or None, final left
    array, final right array, final root, violation messages from the
    sequential-run checks).
    """
    m = len(searches)
    s = [0] * (m + 1)
    for i, v in enumerate(searches, start=1):
        if not 1 <= v <= n:
            raise ValueError(f"search key {v} outside universe 1..{n}")
        s[i] = v
    left = list(left)
    right = list(right)
    inf = m + 1

    # next_same[t]: next time the value searched at t is searched again.
    next_same = [inf] * (m + 1)
    seen = [inf] * (n + 1)
    for t in range(m, 0, -1):
        v = s[t]
        next_same[t] = seen[v]
        seen[v] = t

    size = 1
    while size < n:
        size *= 2
    seg = [inf] * (2 * size)
    for v in range(1, n + 1):
        seg[size + v - 1] = seen[v]
    for i in range(size - 1, 0, -1):
        seg[i] = min(seg[2 * i], seg[2 * i + 1])

    def seg_update(v: int, t: int) -> None:
        i = size + v - 1
        seg[i] = t
        i >>= 1
        while i:
            seg[i] = min(seg[2 * i], seg[2 * i + 1])
            i >>= 1

    def seg_query(lo: int, hi: int) -> int:
        if lo > hi:
            return inf
        res = inf
        l = size + lo - 1
        r = size + hi
        while l < r:
            if l & 1:
                if seg[l] < res:
                    res = seg[l]
                l += 1
            if r & 1:
                r -= 1
                if seg[r] < res:
                    res = seg[r]
            l >>= 1
            r >>= 1
        return res

    def build(vkeys: list[int], i0: int, i1: int, lo: int, hi: int) -> int:
        """Rebuild the path keys vkeys[i0:i1]; future lookups span [lo, hi]."""
        out_root = 0
        # (i0, i1, lo, hi, parent, side); side 0 = left child, 1 = right.
        stack = [(i0, i1, lo, hi, 0, 0)]
        while stack:
            i0, i1, lo, hi, parent, side = stack.pop()
            if i0 >= i1:
                continue
            t = seg_query(lo, hi)
            if t == inf:
                # No future search in range: balance the remaining keys.
                bstack = [(i0, i1, parent, side)]
                while bstack:
                    b0, b1, par, sd = bstack.pop()
                    if b0 >= b1:
                        continue
                    mid = (b0 + b1) // 2
                    k = vkeys[mid]
                    left[k] = 0
                    right[k] = 0
                    if par == 0:
                        out_root = k
                    elif sd == 0:
                        left[par] = k
                    else:
                        right[par] = k
                    bstack.append((b0, mid, k, 0))
                    bstack.append((mid + 1, b1, k, 1))
                continue
            f = s[t]
            j = bisect_left(vkeys, f, i0, i1)
            if j < i1 and vkeys[j] == f:
                left[f] = 0
                right[f] = 0
                if parent == 0:
                    out_root = f
                elif side == 0:
                    left[parent] = f
                else:
                    right[parent] = f
                stack.append((i0, j, lo, f - 1, f, 0))
                stack.append((j + 1, i1, f + 1, hi, f, 1))
            elif j > i0 and j < i1:
                # Next search falls between two path keys: predecessor on top,
                # successor as its right child.
                xl = vkeys[j - 1]
                xr = vkeys[j]
                left[xl] = 0
                right[xl] = xr
                left[xr] = 0
                right[xr] = 0
                if parent == 0:
                    out_root = xl
                elif side == 0:
                    left[parent] = xl
                else:
                    right[parent] = xl
                stack.append((i0, j - 1, lo, xl - 1, xl, 0))
                stack.append((j + 1, i1, xr + 1, hi, xr, 1))
            elif j == i1:
                # Next search above every path key: predecessor alone on top.
                xl = vkeys[i1 - 1]
                left[xl] = 0
                right[xl] = 0
                if parent == 0:
                    out_root = xl
                elif side == 0:
                    left[parent] = xl
                else:
                    right[parent] = xl
                stack.append((i0, i1 - 1, lo, xl - 1, xl, 0))
            else:
                xr = vkeys[i0]
                left[xr] = 0
                right[xr] = 0
                if parent == 0:
                    out_root = xr
                elif side == 0:
                    left[parent] = xr
                else:
                    right[parent] = xr
                stack.append((i0 + 1, i1, xr + 1, hi, xr, 1))
        return out_root

    costs: list[int] = []
    accessed: list[list[int]] | None = [] if collect_accessed else None
    violations: list[str] = []
    deep_count = [0] * (n + 1) if sequential_checks else None

    for i in range(1, m + 1):
        key = s[i]
        if sequential_checks and i >= 2:
            ok = root == key
            if not ok and root == key - 1 and right[root] != 0:
                node = right[root]
                while left[node]:
                    node = left[node]
                ok = node == key
            if not ok:
                violations.append(f"root-locality:i={i}")

        # Root-to-key path; "went right" keys are ascending lower bounds,
        # "went left" keys descending upper bounds, so the sorted key list
        # falls out of the walk.
        lows: list[int] = []
        highs: list[int] = []
        cur = root
        while cur != key:
            if key < cur:
                highs.append(cur)
                cur = left[cur]
            else:
                lows.append(cur)
                cur = right[cur]
        # Already in ascending key order.
        vkeys = lows + [key] + highs[::-1]
        path_len = len(vkeys)
        costs.append(path_len)
        if accessed is not None:
            accessed.append(list(vkeys))

        if sequential_checks and i >= 2:
            root_right = right[root]
            for x in lows + highs + [key]:
                if x != root and x != root_right:
                    deep_count[x] += 1
                    if deep_count[x] == 2:
                        violations.append(f"deep-access:node={x},i={i}")

        # Advance the searched value's next occurrence past time i before
        # consulting the future.
        seg_update(key, next_same[i])

        if i == m:
            break

        hangers: list[int] = []
        in_path = set(vkeys)
        for p in vkeys:
            for c in (left[p], right[p]):
                if c and c not in in_path:
                    hangers.append(c)
        root = build(vkeys, 0, path_len, 1, n)
        for h in hangers:
            cur = root
            while True:
                if h < cur:
                    if left[cur] == 0:
                        left[cur] = h
                        break
                    cur = left[cur]
                else:
                    if right[cur] == 0:
                        right[cur] = h
                        break
                    cur = right[cur]

    return costs, accessed, left, right, root, violations
