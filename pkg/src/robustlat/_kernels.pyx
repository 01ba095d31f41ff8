# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the brute-force kernels in ``_fallback.py``.

Carriers are tiny (the Python layer caps them), so fixed-size C arrays are
used throughout. Output order matches the fallback exactly.
"""

cdef enum:
    MAXN = 8
    MAXSUB = 16


def topology_families(int n, leq_rows):
    cdef int full = (1 << n) - 1
    cdef int m = full - 1 if n > 0 else 0
    cdef int middle[MAXSUB]
    cdef int opens[MAXSUB]
    cdef int rows[MAXN]
    cdef char is_open[MAXSUB]
    cdef int k, i, j, a, b, x, nopen, nbhd, s
    cdef unsigned long long choice, limit
    cdef bint ok
    if n > 4:
        raise ValueError("topology_families kernel supports n <= 4")
    for x in range(n):
        rows[x] = leq_rows[x]
    for k in range(m):
        middle[k] = k + 1
    limit = 1ULL << m
    found = []
    choice = 0
    while choice < limit:
        for s in range(full + 1):
            is_open[s] = 0
        nopen = 0
        opens[nopen] = 0
        nopen += 1
        is_open[0] = 1
        if n > 0:
            opens[nopen] = full
            nopen += 1
            is_open[full] = 1
        for k in range(m):
            if (choice >> k) & 1:
                opens[nopen] = middle[k]
                nopen += 1
                is_open[middle[k]] = 1
        ok = True
        for i in range(nopen):
            a = opens[i]
            for j in range(nopen):
                b = opens[j]
                if not is_open[a | b] or not is_open[a & b]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for x in range(n):
                nbhd = full
                for i in range(nopen):
                    if (opens[i] >> x) & 1:
                        nbhd &= opens[i]
                if nbhd != rows[x]:
                    ok = False
                    break
        if ok:
            code = 0
            for i in range(nopen):
                code |= 1 << opens[i]
            found.append(code)
        choice += 1
    return found


cdef bint _next_table(int* t, int length, int base):
    # odometer over range(base) ** length, last position fastest (itertools.product order)
    cdef int i = length - 1
    while i >= 0:
        t[i] += 1
        if t[i] < base:
            return True
        t[i] = 0
        i -= 1
    return False


def monotone_maps(x_leq, y_leq):
    cdef int nx = len(x_leq), ny = len(y_leq)
    cdef int xr[MAXN]
    cdef int yr[MAXN]
    cdef int t[MAXN]
    cdef int a, b
    cdef bint ok, more
    if nx > MAXN or ny > MAXN:
        raise ValueError("carrier too large for kernel")
    for a in range(nx):
        xr[a] = x_leq[a]
        t[a] = 0
    for a in range(ny):
        yr[a] = y_leq[a]
    out = []
    if ny == 0:
        return [()] if nx == 0 else []
    more = True
    while more:
        ok = True
        for a in range(nx):
            for b in range(nx):
                if a != b and (xr[a] >> b) & 1 and not ((yr[t[a]] >> t[b]) & 1):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple([t[a] for a in range(nx)]))
        more = _next_table(t, nx, ny) if nx > 0 else False
    return out


def adjoint_candidates(x_leq, y_leq, f):
    cdef int nx = len(x_leq), ny = len(y_leq)
    cdef int xr[MAXN]
    cdef int yr[MAXN]
    cdef int ft[MAXN]
    cdef int g[MAXN]
    cdef int a, b, x, y
    cdef bint ok, more
    if nx > MAXN or ny > MAXN:
        raise ValueError("carrier too large for kernel")
    for a in range(nx):
        xr[a] = x_leq[a]
        ft[a] = f[a]
    for a in range(ny):
        yr[a] = y_leq[a]
        g[a] = 0
    out = []
    if nx == 0:
        return [()] if ny == 0 else []
    more = True
    while more:
        ok = True
        for a in range(ny):
            for b in range(ny):
                if a != b and (yr[a] >> b) & 1 and not ((xr[g[a]] >> g[b]) & 1):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for y in range(ny):
                if not ((yr[ft[g[y]]] >> y) & 1):
                    ok = False
                    break
        if ok:
            for x in range(nx):
                if not ((xr[x] >> g[ft[x]]) & 1):
                    ok = False
                    break
        if ok:
            out.append(tuple([g[a] for a in range(ny)]))
        more = _next_table(g, ny, nx) if ny > 0 else False
    return out
