# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the row sweep and the search-path restructuring run.

Same contracts as _pure; that module is the readable description of both.
"""

from libc.stdlib cimport calloc, free, malloc

ENGINE = "compiled"


cdef inline int imin(int a, int b) nogil:
    return a if a < b else b


def greedyass_run(int n, searches):
    cdef int m = len(searches)
    cdef int* rho = <int*> calloc(n + 1, sizeof(int))
    cdef int* added = <int*> malloc((n + 1) * sizeof(int))
    if rho == NULL or added == NULL:
        free(rho); free(added)
        raise MemoryError()
    cdef int i, j, s, prev, na, k
    added_rows = []
    try:
        for i in range(1, m + 1):
            s = searches[i - 1]
            if s < 1 or s > n:
                raise ValueError(f"search key {s} outside universe 1..{n}")
            na = 0
            prev = rho[s]
            for j in range(s + 1, n + 1):
                if rho[j] > prev:
                    prev = rho[j]
                    added[na] = j
                    na += 1
            prev = rho[s]
            for j in range(s - 1, 0, -1):
                if rho[j] > prev:
                    prev = rho[j]
                    added[na] = j
                    na += 1
            row = [0] * na
            for k in range(na):
                rho[added[k]] = i
                row[k] = added[k]
            rho[s] = i
            row.sort()
            added_rows.append(row)
        rho_out = [0] * (n + 1)
        for j in range(1, n + 1):
            rho_out[j] = rho[j]
        return added_rows, rho_out
    finally:
        free(rho)
        free(added)


cdef struct GFState:
    int n
    int m
    int inf
    int segsize
    int* left
    int* right
    int* s
    int* seg
    int* next_same


cdef inline void seg_update(GFState* st, int v, int t) nogil:
    cdef int i = st.segsize + v - 1
    st.seg[i] = t
    i >>= 1
    while i:
        st.seg[i] = imin(st.seg[2 * i], st.seg[2 * i + 1])
        i >>= 1


cdef inline int seg_query(GFState* st, int lo, int hi) nogil:
    if lo > hi:
        return st.inf
    cdef int res = st.inf
    cdef int l = st.segsize + lo - 1
    cdef int r = st.segsize + hi
    while l < r:
        if l & 1:
            if st.seg[l] < res:
                res = st.seg[l]
            l += 1
        if r & 1:
            r -= 1
            if st.seg[r] < res:
                res = st.seg[r]
        l >>= 1
        r >>= 1
    return res


cdef int build_balanced(GFState* st, int* vkeys, int i0, int i1) nogil:
    if i0 >= i1:
        return 0
    cdef int mid = (i0 + i1) >> 1
    cdef int k = vkeys[mid]
    st.left[k] = build_balanced(st, vkeys, i0, mid)
    st.right[k] = build_balanced(st, vkeys, mid + 1, i1)
    return k


cdef int build(GFState* st, int* vkeys, int i0, int i1, int lo, int hi) nogil:
    if i0 >= i1:
        return 0
    cdef int t = seg_query(st, lo, hi)
    if t == st.inf:
        return build_balanced(st, vkeys, i0, i1)
    cdef int f = st.s[t]
    # Lowest index in [i0, i1) with vkeys[j] >= f.
    cdef int a = i0, b = i1, mid
    while a < b:
        mid = (a + b) >> 1
        if vkeys[mid] < f:
            a = mid + 1
        else:
            b = mid
    cdef int j = a
    cdef int xl, xr
    if j < i1 and vkeys[j] == f:
        st.left[f] = build(st, vkeys, i0, j, lo, f - 1)
        st.right[f] = build(st, vkeys, j + 1, i1, f + 1, hi)
        return f
    if j > i0 and j < i1:
        xl = vkeys[j - 1]
        xr = vkeys[j]
        st.left[xl] = build(st, vkeys, i0, j - 1, lo, xl - 1)
        st.right[xl] = xr
        st.left[xr] = 0
        st.right[xr] = build(st, vkeys, j + 1, i1, xr + 1, hi)
        return xl
    if j == i1:
        xl = vkeys[i1 - 1]
        st.left[xl] = build(st, vkeys, i0, i1 - 1, lo, xl - 1)
        st.right[xl] = 0
        return xl
    xr = vkeys[i0]
    st.left[xr] = 0
    st.right[xr] = build(st, vkeys, i0 + 1, i1, xr + 1, hi)
    return xr


def greedy_future_run(
    int n,
    left_in,
    right_in,
    int root,
    searches,
    bint collect_accessed=False,
    bint sequential_checks=False,
):
    cdef int m = len(searches)
    cdef int inf = m + 1
    cdef int segsize = 1
    while segsize < n:
        segsize *= 2

    cdef GFState st
    st.n = n
    st.m = m
    st.inf = inf
    st.segsize = segsize
    st.left = <int*> malloc((n + 1) * sizeof(int))
    st.right = <int*> malloc((n + 1) * sizeof(int))
    st.s = <int*> malloc((m + 1) * sizeof(int))
    st.seg = <int*> malloc(2 * segsize * sizeof(int))
    st.next_same = <int*> malloc((m + 1) * sizeof(int))
    cdef int* seen = <int*> malloc((n + 1) * sizeof(int))
    cdef int* vkeys = <int*> malloc((n + 1) * sizeof(int))
    cdef int* hangers = <int*> malloc((n + 2) * sizeof(int))
    cdef unsigned char* onpath = <unsigned char*> calloc(n + 1, 1)
    cdef int* deep = <int*> calloc(n + 1, sizeof(int))
    if (st.left == NULL or st.right == NULL or st.s == NULL or st.seg == NULL
            or st.next_same == NULL or seen == NULL or vkeys == NULL
            or hangers == NULL or onpath == NULL or deep == NULL):
        free(st.left); free(st.right); free(st.s); free(st.seg)
        free(st.next_same); free(seen); free(vkeys); free(hangers)
        free(onpath); free(deep)
        raise MemoryError()

    cdef int i, j, v, t, cur, key, ok, node, rr
    cdef int nlow, nhigh, plen, nhang, h, p, c
    costs = []
    accessed = [] if collect_accessed else None
    violations = []
    try:
        for j in range(1, n + 1):
            st.left[j] = left_in[j]
            st.right[j] = right_in[j]
            seen[j] = inf
        for i in range(1, m + 1):
            v = searches[i - 1]
            if v < 1 or v > n:
                raise ValueError(f"search key {v} outside universe 1..{n}")
            st.s[i] = v
        for t in range(m, 0, -1):
            v = st.s[t]
            st.next_same[t] = seen[v]
            seen[v] = t
        for j in range(2 * segsize):
            st.seg[j] = inf
        for v in range(1, n + 1):
            st.seg[segsize + v - 1] = seen[v]
        for j in range(segsize - 1, 0, -1):
            st.seg[j] = imin(st.seg[2 * j], st.seg[2 * j + 1])

        for i in range(1, m + 1):
            key = st.s[i]
            if sequential_checks and i >= 2:
                ok = root == key
                if not ok and root == key - 1 and st.right[root] != 0:
                    node = st.right[root]
                    while st.left[node]:
                        node = st.left[node]
                    ok = node == key
                if not ok:
                    violations.append(f"root-locality:i={i}")

            # Walk the path; "went right" keys fill vkeys from the front in
            # ascending order, "went left" keys from the back, leaving the
            # sorted path in vkeys[0:plen].
            nlow = 0
            nhigh = 0
            cur = root
            while cur != key:
                if key < cur:
                    nhigh += 1
                    vkeys[n + 1 - nhigh] = cur
                    cur = st.left[cur]
                else:
                    vkeys[nlow] = cur
                    nlow += 1
                    cur = st.right[cur]
            vkeys[nlow] = key
            plen = nlow + 1
            for j in range(nhigh):
                vkeys[plen + j] = vkeys[n + 1 - nhigh + j]
            plen += nhigh

            costs.append(plen)
            if collect_accessed:
                accessed.append([vkeys[j] for j in range(plen)])

            if sequential_checks and i >= 2:
                rr = st.right[root]
                for j in range(plen):
                    node = vkeys[j]
                    if node != root and node != rr:
                        deep[node] += 1
                        if deep[node] == 2:
                            violations.append(f"deep-access:node={node},i={i}")

            seg_update(&st, key, st.next_same[i])

            if i == m:
                break

            nhang = 0
            for j in range(plen):
                onpath[vkeys[j]] = 1
            for j in range(plen):
                p = vkeys[j]
                c = st.left[p]
                if c and not onpath[c]:
                    hangers[nhang] = c
                    nhang += 1
                c = st.right[p]
                if c and not onpath[c]:
                    hangers[nhang] = c
                    nhang += 1
            for j in range(plen):
                onpath[vkeys[j]] = 0

            root = build(&st, vkeys, 0, plen, 1, n)
            for j in range(nhang):
                h = hangers[j]
                cur = root
                while True:
                    if h < cur:
                        if st.left[cur] == 0:
                            st.left[cur] = h
                            break
                        cur = st.left[cur]
                    else:
                        if st.right[cur] == 0:
                            st.right[cur] = h
                            break
                        cur = st.right[cur]

        left_out = [0] * (n + 1)
        right_out = [0] * (n + 1)
        for j in range(1, n + 1):
            left_out[j] = st.left[j]
            right_out[j] = st.right[j]
        return costs, accessed, left_out, right_out, root, violations
    finally:
        free(st.left); free(st.right); free(st.s); free(st.seg)
        free(st.next_same); free(seen); free(vkeys); free(hangers)
        free(onpath); free(deep)
