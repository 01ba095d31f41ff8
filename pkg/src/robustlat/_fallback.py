"""Pure-Python brute-force kernels.

Every function here has a compiled twin in ``_kernels.pyx`` with the same
signature and the same output ordering. Orders are passed as bitmask rows:
``leq[a] >> b & 1`` is set iff ``a <= b``.
"""
from __future__ import annotations

from itertools import product


def topology_families(n: int, leq_rows: list[int]) -> list[int]:
    """All families of subsets of ``range(n)`` that are topologies whose
    specialization order is ``leq_rows``.

    A family is returned as a bitmask over subset codes: bit ``s`` is set iff
    the subset with bitmask ``s`` is open. The empty set and the carrier are
    forced; everything else is searched exhaustively.
    """
    full = (1 << n) - 1
    middle = [s for s in range(1, full)] if n > 0 else []
    m = len(middle)
    found = []
    for choice in range(1 << m):
        opens = [0, full] if n > 0 else [0]
        for k in range(m):
            if choice >> k & 1:
                opens.append(middle[k])
        code = 0
        for s in opens:
            code |= 1 << s
        ok = True
        for a in opens:
            for b in opens:
                if not (code >> (a | b) & 1) or not (code >> (a & b) & 1):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        for x in range(n):
            nbhd = full
            for s in opens:
                if s >> x & 1:
                    nbhd &= s
            if nbhd != leq_rows[x]:
                ok = False
                break
        if ok:
            found.append(code)
    return found


def monotone_maps(x_leq: list[int], y_leq: list[int]) -> list[tuple[int, ...]]:
    """All order-preserving tables ``X -> Y`` in lexicographic order."""
    nx, ny = len(x_leq), len(y_leq)
    pairs = [(a, b) for a in range(nx) for b in range(nx) if a != b and x_leq[a] >> b & 1]
    out = []
    for table in product(range(ny), repeat=nx):
        if all(y_leq[table[a]] >> table[b] & 1 for a, b in pairs):
            out.append(table)
    return out


def adjoint_candidates(x_leq: list[int], y_leq: list[int], f: list[int]) -> list[tuple[int, ...]]:
    """Every monotone ``g: Y -> X`` with ``f.g <= id_Y`` and ``g.f >= id_X``.

    Exhaustive over all ``|X| ** |Y|`` tables; the adjunction laws make the
    answer a singleton or empty, which is exactly what callers check.
    """
    nx, ny = len(x_leq), len(y_leq)
    pairs = [(a, b) for a in range(ny) for b in range(ny) if a != b and y_leq[a] >> b & 1]
    out = []
    for g in product(range(nx), repeat=ny):
        if not all(x_leq[g[a]] >> g[b] & 1 for a, b in pairs):
            continue
        if not all(y_leq[f[g[y]]] >> y & 1 for y in range(ny)):
            continue
        if not all(x_leq[x] >> g[f[x]] & 1 for x in range(nx)):
            continue
        out.append(g)
    return out
