"""Exact numerics for sequence spaces: finite-support rational vectors,
p-norms with bracketed roots, clamps, truncations and the d_* metric.

Rationals are ``gmpy2.mpq`` throughout; they compare and hash equal to
``fractions.Fraction`` and are an order of magnitude faster.
"""
from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from gmpy2 import iroot, mpq, mpz

from .idempotents import Fn, SplitChain, Stage

Q = mpq
INF = math.inf
STAR = "star"
DEFAULT_TOL = Q(1, 1 << 40)


class DomainError(ValueError):
    """Exponent or argument outside the supported domain."""


def to_q(v) -> mpq:
    """Exact rational from int, str ("a/b" or decimal), Fraction or mpq."""
    if isinstance(v, bool):
        raise TypeError("bool is not a rational")
    if isinstance(v, float):
        if not math.isfinite(v):
            raise DomainError(f"non-finite value {v}")
        return Q(v)
    if isinstance(v, str):
        try:
            return Q(v.strip())
        except ValueError as exc:
            raise DomainError(f"bad rational literal {v!r}") from exc
    return Q(v)


def fmt_q(v) -> str:
    return str(Q(v))


def parse_p(v) -> mpq | float:
    """``"inf"``/``math.inf`` or a rational exponent ``>= 1``."""
    if v == INF or (isinstance(v, str) and v.strip().lower() in ("inf", "infinity", "oo")):
        return INF
    p = to_q(v)
    if p < 1:
        raise DomainError(f"exponent p={p} < 1")
    return p


def fmt_p(p) -> str:
    return "inf" if p == INF else fmt_q(p)


def _pq(p) -> tuple[int, int]:
    p = Q(p)
    return int(p.numerator), int(p.denominator)


class SeqVec:
    """Finite-support sequence with exact rational coordinates (zero tail)."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coords: Mapping[int, object] | None = None):
        c = {}
        for i, v in (coords or {}).items():
            i = int(i)
            if i < 0:
                raise DomainError(f"negative index {i}")
            q = to_q(v)
            if q:
                c[i] = q
        self._c = dict(sorted(c.items()))
        self._hash = None

    @classmethod
    def from_list(cls, values: Iterable) -> SeqVec:
        return cls(dict(enumerate(values)))

    @classmethod
    def unit(cls, i: int, scale=1) -> SeqVec:
        return cls({i: scale})

    @classmethod
    def zero(cls) -> SeqVec:
        return cls()

    @property
    def coords(self) -> dict[int, mpq]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __getitem__(self, i: int) -> mpq:
        return self._c.get(i, Q(0))

    def support(self) -> list[int]:
        return list(self._c)

    def length(self) -> int:
        """One past the last nonzero index."""
        return max(self._c) + 1 if self._c else 0

    def prefix(self, n: int) -> SeqVec:
        return SeqVec({i: v for i, v in self._c.items() if i < n})

    def dense(self, n: int) -> list[mpq]:
        return [self._c.get(i, Q(0)) for i in range(n)]

    def __add__(self, other: SeqVec) -> SeqVec:
        c = dict(self._c)
        for i, v in other._c.items():
            c[i] = c.get(i, 0) + v
        return SeqVec(c)

    def __neg__(self) -> SeqVec:
        return SeqVec({i: -v for i, v in self._c.items()})

    def __sub__(self, other: SeqVec) -> SeqVec:
        return self + (-other)

    def scale(self, k) -> SeqVec:
        k = to_q(k)
        return SeqVec({i: k * v for i, v in self._c.items()})

    def __eq__(self, other):
        return isinstance(other, SeqVec) and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{i}: {fmt_q(v)}" for i, v in self._c.items())
        return f"SeqVec({{{body}}})"

    def to_json(self) -> dict:
        return {"coords": {str(i): fmt_q(v) for i, v in self._c.items()}}

    @classmethod
    def from_json(cls, obj) -> SeqVec:
        if isinstance(obj, list):
            return cls.from_list(obj)
        if not isinstance(obj, dict) or not isinstance(obj.get("coords", {}), dict):
            raise DomainError("vector literal must be {\"coords\": {index: rational}}")
        return cls(obj.get("coords", {}))


# ---------------------------------------------------------------- roots

def _floor_root(q: mpq, k: int, m: int) -> mpz:
    """``floor(q**(1/k) * 2**m)`` for ``q >= 0``."""
    scaled = (mpz(q.numerator) << (m * k)) // mpz(q.denominator)
    return iroot(scaled, k)[0]


def root_bracket(q, k: int, m: int) -> tuple[mpq, mpq]:
    """Rational bracket ``lo <= q**(1/k) <= hi`` of width ``2**-m`` (or 0 if exact)."""
    q = Q(q)
    if q < 0:
        raise DomainError("root of a negative number")
    exact = exact_root(q, k)
    if exact is not None:
        return exact, exact
    r = _floor_root(q, k, m)
    return Q(r, 1 << m), Q(r + 1, 1 << m)


def exact_root(q, k: int) -> mpq | None:
    q = Q(q)
    rn, okn = iroot(mpz(q.numerator), k)
    if not okn:
        return None
    rd, okd = iroot(mpz(q.denominator), k)
    return Q(rn, rd) if okd else None


def exact_power(v, p) -> mpq | None:
    """``|v|**p`` when it is rational, else ``None``."""
    a, b = _pq(p)
    r = exact_root(abs(Q(v)), b)
    return None if r is None else r ** a


def power_bracket(v, p, m: int) -> tuple[mpq, mpq]:
    """Bracket of ``|v|**p`` for rational ``p = a/b``."""
    a, b = _pq(p)
    ex = exact_power(v, p)
    if ex is not None:
        return ex, ex
    lo, hi = root_bracket(abs(Q(v)), b, m)
    return lo ** a, hi ** a


@lru_cache(maxsize=64)
def _bits_for(tol) -> int:
    tol = Q(tol)
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    return max(1, int(mpz(tol.denominator).bit_length() - mpz(tol.numerator).bit_length() + 1))


# ---------------------------------------------------------------- Dist

@dataclass(frozen=True)
class Dist:
    """A norm or distance value.

    ``lo``/``hi`` bracket the value (equal when exact). For finite ``p`` the
    exact sum of p-th powers is kept in ``power`` whenever every term is
    rational, so order questions can be settled without roots.
    """

    p: object
    lo: mpq
    hi: mpq
    power: mpq | None = None
    terms: tuple = field(default=(), compare=False, repr=False)

    @property
    def exact(self) -> mpq | None:
        return self.lo if self.lo == self.hi else None

    @property
    def width(self) -> mpq:
        return self.hi - self.lo

    def le(self, r, max_bits: int = 256) -> bool | None:
        """Decide ``value <= r``; ``None`` only if undecidable at ``max_bits``."""
        return self._cmp(Q(r), max_bits, strict=False)

    def lt(self, r, max_bits: int = 256) -> bool | None:
        return self._cmp(Q(r), max_bits, strict=True)

    def eq(self, r, max_bits: int = 256) -> bool | None:
        a, b = self.le(r, max_bits), self.lt(r, max_bits)
        if a is None or b is None:
            return None
        return a and not b

    def _cmp(self, r: mpq, max_bits: int, strict: bool) -> bool | None:
        if r < 0:
            return False
        if self.exact is not None:
            return self.exact < r if strict else self.exact <= r
        if self.power is not None and self.p not in (INF, STAR):
            a, b = _pq(self.p)
            lhs, rhs = self.power ** b, r ** a
            return lhs < rhs if strict else lhs <= rhs
        if self.hi < r or (not strict and self.hi == r):
            return True
        if self.lo > r or (strict and self.lo == r):
            return False
        if self.terms and self.p not in (INF, STAR):
            # refine the p-th power sum against r**p
            a, b = _pq(self.p)
            m = 64
            while m <= max_bits:
                plo = phi = Q(0)
                for t in self.terms:
                    lo, hi = power_bracket(t, self.p, m)
                    plo += lo
                    phi += hi
                rlo, rhi = power_bracket(r, self.p, m)
                if phi < rlo:
                    return True
                if plo > rhi:
                    return False
                m *= 2
        return None

    def to_json(self) -> dict:
        out = {"p": fmt_p(self.p) if self.p != STAR else STAR}
        if self.exact is not None:
            out["value"] = fmt_q(self.exact)
        else:
            out["lo"], out["hi"] = fmt_q(self.lo), fmt_q(self.hi)
        if self.power is not None:
            out["power"] = fmt_q(self.power)
        return out


def _dist_from_terms(terms: Sequence[mpq], p, tol) -> Dist:
    terms = tuple(abs(t) for t in terms if t)
    if p == INF:
        v = max(terms, default=Q(0))
        return Dist(INF, v, v, terms=terms)
    if p == 1:
        v = sum(terms, Q(0))
        return Dist(p, v, v, v, terms)
    a, b = _pq(p)
    m = _bits_for(tol)
    powers = [exact_power(t, p) for t in terms]
    if all(pw is not None for pw in powers):
        P = sum(powers, Q(0))
        root = exact_root(P ** b, a)
        if root is not None:
            return Dist(p, root, root, P, terms)
        return Dist(p, *root_bracket(P ** b, a, m), P, terms)
    extra = m + 8 + len(terms).bit_length()
    for _ in range(8):
        plo = phi = Q(0)
        for t in terms:
            lo, hi = power_bracket(t, p, extra)
            plo += lo
            phi += hi
        vlo = root_bracket(plo ** b, a, m)[0]
        vhi = root_bracket(phi ** b, a, m)[1]
        if vhi - vlo <= Q(tol):
            break
        extra *= 2
    return Dist(p, vlo, vhi, None, terms)


def norm(x: SeqVec, p, tol=DEFAULT_TOL) -> Dist:
    """``||x||_p`` (``p = inf`` gives the sup norm)."""
    p = parse_p(p)
    return _dist_from_terms([v for _, v in x.items()], p, tol)


def dist(x: SeqVec, y: SeqVec, p, tol=DEFAULT_TOL) -> Dist:
    return norm(x - y, p, tol)


def dstar(x: SeqVec, y: SeqVec) -> Dist:
    """``sum_n |x_n - y_n| / 2**(n+1)``; exact for finite support."""
    d = x - y
    v = sum((abs(c) / Q(1 << (i + 1)) for i, c in d.items()), Q(0))
    return Dist(STAR, v, v)


def dinf(x: SeqVec, y: SeqVec) -> mpq:
    return max((abs(v) for _, v in (x - y).items()), default=Q(0))


# ---------------------------------------------------------------- maps

def clamp(n: int, t) -> mpq:
    """``r_n``: clamp ``t`` into ``[-n, n]``."""
    if n < 0:
        raise DomainError("clamp index must be >= 0")
    t = Q(t)
    return Q(n) if t > n else (Q(-n) if t < -n else t)


def truncate(n: int, x: SeqVec) -> SeqVec:
    """``g_n``: clamp the first ``n`` coordinates by ``r_n``, zero the rest."""
    return SeqVec({i: clamp(n, v) for i, v in x.items() if i < n})


def clamp_all(n: int, x: SeqVec, dim: int) -> SeqVec:
    """Coordinatewise ``r_n`` on the first ``dim`` coordinates (finite-dimensional chains)."""
    return SeqVec({i: clamp(n, v) for i, v in x.items() if i < dim})


# ---------------------------------------------------------------- chains

@dataclass(frozen=True)
class SpaceCtx:
    """``p`` with ``dim`` coordinates (``None`` for sequences); ``ball`` set for Ω-type spaces."""

    p: object = Q(2)
    dim: int | None = None
    ball: mpq | None = None

    def __post_init__(self):
        object.__setattr__(self, "p", parse_p(self.p))
        if self.ball is not None:
            r = to_q(self.ball)
            if r <= 0:
                raise DomainError("ball radius must be positive")
            object.__setattr__(self, "ball", r)
        if self.dim is not None and self.dim < 1:
            raise DomainError("dimension must be >= 1")


@dataclass(frozen=True)
class StageSpace:
    """Image of ``g_n``: vectors supported below ``dim`` with ``|x_i| <= bound``,
    optionally cut down to the ``p``-ball of radius ``radius``."""

    n: int
    dim: int
    bound: int
    p: object
    radius: mpq | None = None

    def contains(self, x: SeqVec) -> bool:
        if any(i >= self.dim or abs(v) > self.bound for i, v in x.items()):
            return False
        return self.radius is None or bool(norm(x, self.p).le(self.radius))

    def describe(self) -> str:
        box = f"[-{self.bound},{self.bound}]^{self.dim}"
        if self.radius is not None:
            return f"closed {fmt_p(self.p)}-ball of radius {fmt_q(self.radius)} in R^{self.dim} (within {box})"
        return f"{box} with d_{fmt_p(self.p)}"


def g_map(ctx: SpaceCtx, n: int) -> Fn:
    if ctx.dim is None:
        return Fn(lambda x, n=n: truncate(n, x), name=f"g_{n}")
    return Fn(lambda x, n=n, m=ctx.dim: clamp_all(n, x, m), name=f"g_{n}")


def chain_ctx(ctx: SpaceCtx, depth: int = 4) -> SplitChain:
    """Truncation chain ``(g_n | n <= depth)`` split through its images.

    Each carrier is a subspace of the ambient space, so ``f_n`` is the
    identity on vectors and ``q_n`` is ``g_n`` itself.
    """
    stages = []
    for n in range(depth + 1):
        g = g_map(ctx, n)
        dim = ctx.dim if ctx.dim is not None else n
        carrier = StageSpace(n, dim, n, ctx.p, ctx.ball)
        stages.append(Stage(g=g, carrier=carrier, f=Fn(lambda x: x, name=f"f_{n}"), q=g.renamed(f"q_{n}")))
    return SplitChain(stages, ambient=None)


def sample_vectors(rng, count: int, length: int, bound: int = 4, denom: int = 4) -> list[SeqVec]:
    """Random vectors with coordinates in ``[-bound, bound]`` on a ``1/denom`` grid."""
    out = []
    for _ in range(count):
        out.append(SeqVec({i: Q(rng.randint(-bound * denom, bound * denom), denom) for i in range(length)}))
    return out


__all__ = [
    "DEFAULT_TOL", "Dist", "DomainError", "INF", "Q", "STAR", "SeqVec", "SpaceCtx", "StageSpace",
    "chain_ctx", "clamp", "clamp_all", "dinf", "dist", "dstar", "exact_power", "exact_root", "fmt_p", "fmt_q",
    "g_map", "norm", "parse_p", "power_bracket", "root_bracket", "sample_vectors", "to_q", "truncate",
]
