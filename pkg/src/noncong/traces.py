"""Frobenius traces of the elliptic surfaces over F_p and F_{p^2}.

The trace over F_q is the negated sum of local terms over P^1(F_q):
q + 1 - #E for a smooth fiber, +1 / -1 / 0 for split multiplicative /
nonsplit multiplicative / additive fibers, with the singular type decided
by whether -2AB is zero, a nonzero square, or a nonsquare.

Point counts use the quadratic-character sum #E = q + 1 + sum chi(x^3+Ax+B),
vectorized with a precomputed character table per field; all twelve cover
parameterizations of one base family at one q share a single fiber-trace
table, so the q^2 work is done once per (level, q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from .surfaces import (RationalFunction, beauville_short, polynomial_resultant)


class BadPrimeError(ValueError):
    """The requested prime is not of good reduction for the family."""


# ---------------------------------------------------------------------------
# fields


class PrimeField:
    """F_p, elements 0..p-1."""

    def __init__(self, p: int):
        if p < 5:
            raise BadPrimeError("characteristic must not be 2 or 3")
        self.p = p
        self.q = p
        sq = np.full(p, -1, dtype=np.int8)
        sq[0] = 0
        roots = (np.arange(1, p, dtype=np.int64) ** 2) % p
        sq[roots] = 1
        self.chi_table = sq
        self._inv = None

    def inv_table(self) -> np.ndarray:
        if self._inv is None:
            inv = np.zeros(self.p, dtype=np.int64)
            for x in range(1, self.p):
                inv[x] = pow(x, -1, self.p)
            self._inv = inv
        return self._inv

    # scalar interface (elements are ints)
    def chi(self, u: int) -> int:
        return int(self.chi_table[u % self.p])

    def elements(self):
        return range(self.p)

    def poly_eval_scalar(self, coeffs, x: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def curve_rhs_values(self, A: int, B: int) -> np.ndarray:
        x = np.arange(self.p, dtype=np.int64)
        return (x * x % self.p * x + A * x + B) % self.p


class QuadExtField:
    """F_{p^2} = F_p(sqrt(nu)) for a quadratic nonresidue nu; elements are
    pairs (a, b) = a + b*sqrt(nu), indexed by a*p + b."""

    def __init__(self, p: int, nonresidue: int | None = None):
        if p < 5:
            raise BadPrimeError("characteristic must not be 2 or 3")
        self.p = p
        self.q = p * p
        base = PrimeField(p)
        self.base = base
        if nonresidue is None:
            nonresidue = next(n for n in range(2, p) if base.chi(n) == -1)
        if base.chi(nonresidue) != -1:
            raise ValueError(f"{nonresidue} is a square mod {p}")
        self.nu = nonresidue % p
        a = np.repeat(np.arange(p, dtype=np.int64), p)
        b = np.tile(np.arange(p, dtype=np.int64), p)
        norm = (a * a - self.nu * b * b) % p
        self.chi_table = base.chi_table[norm]           # chi_q = chi_p o Norm
        self._a, self._b = a, b

    # scalar interface (elements are (a, b) pairs)
    def chi(self, u) -> int:
        a, b = u
        return int(self.base.chi_table[(a * a - self.nu * b * b) % self.p])

    def elements(self):
        p = self.p
        return ((a, b) for a in range(p) for b in range(p))

    def index(self, u) -> int:
        a, b = u
        return (a % self.p) * self.p + (b % self.p)

    def mul(self, u, v):
        a, b = u
        c, d = v
        p, nu = self.p, self.nu
        return ((a * c + nu * b * d) % p, (a * d + b * c) % p)

    def inv(self, u):
        a, b = u
        p = self.p
        n = (a * a - self.nu * b * b) % p
        ni = pow(n, -1, p)
        return (a * ni % p, (-b) * ni % p)

    def poly_eval_scalar(self, coeffs, u):
        acc = (0, 0)
        for c in reversed(coeffs):
            acc = self.mul(acc, u)
            acc = ((acc[0] + c) % self.p, acc[1])
        return acc

    def curve_rhs_values(self, A, B) -> np.ndarray:
        """(x^3 + A x + B) over all x, returned as element indices."""
        p, nu = self.p, self.nu
        x0, x1 = self._a, self._b
        s0 = (x0 * x0 + nu * x1 * x1) % p
        s1 = (2 * x0 * x1) % p
        c0 = (s0 * x0 + nu * s1 * x1) % p
        c1 = (s0 * x1 + s1 * x0) % p
        A0, A1 = A
        B0, B1 = B
        f0 = (c0 + A0 * x0 + nu * A1 * x1 + B0) % p
        f1 = (c1 + A0 * x1 + A1 * x0 + B1) % p
        return f0 * p + f1


def field_for(p: int, squared: bool, nonresidue: int | None = None):
    return QuadExtField(p, nonresidue) if squared else PrimeField(p)


# ---------------------------------------------------------------------------
# spec-level scalar operations


def quadratic_character(field, u) -> int:
    """0 for zero, +1 for a nonzero square, -1 otherwise."""
    return field.chi(u)


def _is_zero(field, u) -> bool:
    if isinstance(field, PrimeField):
        return u % field.p == 0
    return u[0] % field.p == 0 and u[1] % field.p == 0


def _disc(field, A, B):
    if isinstance(field, PrimeField):
        return (4 * A * A % field.p * A + 27 * B * B) % field.p
    t1 = field.mul(field.mul(A, A), A)
    t2 = field.mul(B, B)
    return ((4 * t1[0] + 27 * t2[0]) % field.p, (4 * t1[1] + 27 * t2[1]) % field.p)


def count_points_short(field, A, B) -> int:
    """#E(F_q) for y^2 = x^3 + Ax + B via the character sum."""
    if _is_zero(field, _disc(field, A, B)):
        raise ValueError("singular curve: classify the fiber instead of counting")
    vals = field.curve_rhs_values(A, B)
    return int(field.q + 1 + field.chi_table[vals].sum())


def classify_singular_fiber(field, A, B) -> str:
    """Tate type of a singular short Weierstrass fiber from chi(-2AB)."""
    if not _is_zero(field, _disc(field, A, B)):
        raise ValueError("nonsingular curve: count points instead of classifying")
    if isinstance(field, PrimeField):
        m = (-2 * A * B) % field.p
    else:
        ab = field.mul(A, B)
        m = ((-2 * ab[0]) % field.p, (-2 * ab[1]) % field.p)
    c = field.chi(m)
    return {0: "additive", 1: "splitMult", -1: "nonsplitMult"}[c]


FIBER_VALUE = {"splitMult": 1, "nonsplitMult": -1, "additive": 0}


@dataclass(frozen=True)
class LocalTrace:
    point: object          # field element, or "inf"
    fiber_type: str
    value: int


# ---------------------------------------------------------------------------
# surface families (a base level plus a parameter substitution r -> sub(r))


@dataclass(frozen=True)
class SurfaceFamily:
    label: str
    level: str                     # "E8" or "E6"
    sub: RationalFunction

    @lru_cache(maxsize=None)
    def _int_data(self):
        num, den = _clear_rational(self.sub)
        res = polynomial_resultant([Fraction(c) for c in num],
                                   [Fraction(c) for c in den])
        bad = {2, 3}
        bad |= _prime_divisors(abs(res.numerator)) | _prime_divisors(res.denominator)
        bad |= _prime_divisors(_content(num)) | _prime_divisors(_content(den))
        return num, den, frozenset(bad)

    def bad_primes(self) -> frozenset[int]:
        return self._int_data()[2]


def _clear_rational(f: RationalFunction) -> tuple[tuple[int, ...], tuple[int, ...]]:
    den_lcm = lcm(*[c.denominator for c in f.num + f.den], 1)
    num = tuple(int(c * den_lcm) for c in f.num)
    den = tuple(int(c * den_lcm) for c in f.den)
    return num, den


def _content(coeffs) -> int:
    g = 0
    for c in coeffs:
        g = np.gcd(g, abs(int(c)))
    return int(g) if g else 1


def _prime_divisors(n: int) -> set[int]:
    n = abs(int(n))
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def surface_families(group) -> list[SurfaceFamily]:
    level = "E8" if group.parent == "G8" else "E6"
    return [SurfaceFamily(label, level, sub) for label, sub in group.parameterizations]


# ---------------------------------------------------------------------------
# the per-level fiber trace table


@lru_cache(maxsize=None)
def _level_poly_coeffs(level: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    sw = beauville_short(level)
    A = tuple(int(c) for c in sw.A.num)
    B = tuple(int(c) for c in sw.B.num)
    assert sw.A.den == (Fraction(1),) and sw.B.den == (Fraction(1),)
    return A, B


def _infinity_model(level: str) -> tuple[int, int]:
    """Leading coefficients (A*, B*) of the model cleared at t = 1/s, s = 0."""
    A, B = _level_poly_coeffs(level)
    if len(A) - 1 != 4 or len(B) - 1 != 6:
        raise AssertionError("level family must have deg A = 4, deg B = 6")
    Astar, Bstar = A[-1], B[-1]
    if 4 * Astar ** 3 + 27 * Bstar ** 2 != 0:
        raise AssertionError("fiber at infinity expected to be singular")
    return Astar, Bstar


@lru_cache(maxsize=None)
def fiber_trace_table(level: str, p: int, squared: bool,
                      nonresidue: int | None = None):
    """Local trace of the level family at every parameter value of F_q (a
    read-only int64 array indexed by element), plus the trace at the
    parameter point at infinity."""
    field = field_for(p, squared, nonresidue)
    Acoef, Bcoef = _level_poly_coeffs(level)
    q = field.q
    if isinstance(field, PrimeField):
        s = np.arange(q, dtype=np.int64)
        As = _poly_eval_vec_prime(Acoef, s, p)
        Bs = _poly_eval_vec_prime(Bcoef, s, p)
        disc = (4 * As * As % p * As + 27 * Bs * Bs) % p
        x = np.arange(q, dtype=np.int64)
        x3 = x * x % p * x % p
        tau = np.empty(q, dtype=np.int64)
        chunk = max(1, 4_000_000 // q)
        for lo in range(0, q, chunk):
            hi = min(lo + chunk, q)
            f = (x3[None, :] + As[lo:hi, None] * x[None, :] + Bs[lo:hi, None]) % p
            tau[lo:hi] = -field.chi_table[f].sum(axis=1)
        sing = disc == 0
        m = (-2 * As * Bs) % p
        tau[sing] = field.chi_table[m[sing]]
    else:
        nu = field.nu
        a0, a1 = field._a, field._b
        A0, A1 = _poly_eval_vec_ext(Acoef, a0, a1, p, nu)
        B0, B1 = _poly_eval_vec_ext(Bcoef, a0, a1, p, nu)
        c0, c1 = _vec_mul(A0, A1, A0, A1, p, nu)
        c0, c1 = _vec_mul(c0, c1, A0, A1, p, nu)          # A^3
        d0, d1 = _vec_mul(B0, B1, B0, B1, p, nu)          # B^2
        disc0 = (4 * c0 + 27 * d0) % p
        disc1 = (4 * c1 + 27 * d1) % p
        x0, x1 = field._a, field._b
        s0 = (x0 * x0 + nu * x1 * x1) % p
        s1 = (2 * x0 * x1) % p
        x30 = (s0 * x0 + nu * s1 * x1) % p
        x31 = (s0 * x1 + s1 * x0) % p
        tau = np.empty(q, dtype=np.int64)
        chunk = max(1, 4_000_000 // q)
        for lo in range(0, q, chunk):
            hi = min(lo + chunk, q)
            f0 = (x30[None, :]
                  + A0[lo:hi, None] * x0[None, :] + nu * A1[lo:hi, None] * x1[None, :]
                  + B0[lo:hi, None]) % p
            f1 = (x31[None, :]
                  + A0[lo:hi, None] * x1[None, :] + A1[lo:hi, None] * x0[None, :]
                  + B1[lo:hi, None]) % p
            tau[lo:hi] = -field.chi_table[f0 * p + f1].sum(axis=1)
        sing = (disc0 == 0) & (disc1 == 0)
        m0, m1 = _vec_mul(A0, A1, B0, B1, p, nu)
        m0 = (-2 * m0) % p
        m1 = (-2 * m1) % p
        tau[sing] = field.chi_table[(m0 * p + m1)[sing]]
    Astar, Bstar = _infinity_model(level)
    if isinstance(field, PrimeField):
        tau_inf = field.chi((-2 * Astar * Bstar) % p)
    else:
        tau_inf = field.chi(((-2 * Astar * Bstar) % p, 0))
    tau.flags.writeable = False
    return tau, int(tau_inf)


def _poly_eval_vec_prime(coeffs, x, p):
    acc = np.zeros_like(x)
    for c in reversed(coeffs):
        acc = (acc * x + c % p) % p
    return acc


def _vec_mul(a0, a1, b0, b1, p, nu):
    return (a0 * b0 + nu * a1 * b1) % p, (a0 * b1 + a1 * b0) % p


def _poly_eval_vec_ext(coeffs, x0, x1, p, nu):
    acc0 = np.zeros_like(x0)
    acc1 = np.zeros_like(x1)
    for c in reversed(coeffs):
        acc0, acc1 = _vec_mul(acc0, acc1, x0, x1, p, nu)
        acc0 = (acc0 + c % p) % p
    return acc0, acc1


# ---------------------------------------------------------------------------
# traces


def _check_good_prime(family: SurfaceFamily, p: int):
    if p in family.bad_primes():
        raise BadPrimeError(
            f"{family.label}: {p} is not a good prime (bad set {sorted(family.bad_primes())})")


def _bucket_indices(family: SurfaceFamily, field) -> tuple[np.ndarray, int]:
    """Parameter value s = sub(r) for every r in F_q (as element indices; -1
    for s = infinity), plus the count of r (including r = infinity) mapping
    to infinity is folded in via the returned inf count."""
    num, den, _ = family._int_data()
    p = field.p
    if isinstance(field, PrimeField):
        r = np.arange(field.q, dtype=np.int64)
        nv = _poly_eval_vec_prime(num, r, p)
        dv = _poly_eval_vec_prime(den, r, p)
        zero_den = dv == 0
        if np.any(nv[zero_den] == 0):
            raise BadPrimeError(f"{family.label}: map degenerates mod {p}")
        inv = field.inv_table()[dv % p]
        s = nv * inv % p
        idx = np.where(zero_den, -1, s)
    else:
        nu = field.nu
        r0, r1 = field._a, field._b
        n0, n1 = _poly_eval_vec_ext(num, r0, r1, p, nu)
        d0, d1 = _poly_eval_vec_ext(den, r0, r1, p, nu)
        zero_den = (d0 == 0) & (d1 == 0)
        if np.any((n0[zero_den] == 0) & (n1[zero_den] == 0)):
            raise BadPrimeError(f"{family.label}: map degenerates mod {p}")
        norm = (d0 * d0 - nu * d1 * d1) % p
        ninv = field.base.inv_table()[norm]
        i0 = d0 * ninv % p
        i1 = (-d1) * ninv % p
        s0, s1 = _vec_mul(n0, n1, i0, i1, p, nu)
        idx = np.where(zero_den, -1, s0 * p + s1)
    # the point r = infinity maps by leading coefficients
    dn = _degree_mod(num, p)
    dd = _degree_mod(den, p)
    if dn < 0 or dd < 0:
        raise BadPrimeError(f"{family.label}: map collapses mod {p}")
    if dn > dd:
        inf_image = -1
    elif dn < dd:
        inf_image = 0  # the zero element has index 0 in both fields
    else:
        lead = num[dn] * pow(den[dd], -1, p) % p
        inf_image = lead if isinstance(field, PrimeField) else lead * p
    return idx, inf_image


def _degree_mod(coeffs, p) -> int:
    for i in range(len(coeffs) - 1, -1, -1):
        if coeffs[i] % p:
            return i
    return -1


def frobenius_trace(family: SurfaceFamily, p: int, squared: bool = False,
                    nonresidue: int | None = None) -> int:
    """Tr(Frob_q) = - sum of local traces over P^1(F_q), q = p or p^2."""
    _check_good_prime(family, p)
    field = field_for(p, squared, nonresidue)
    tau_arr, tau_inf = fiber_trace_table(family.level, p, squared, nonresidue)
    idx, inf_image = _bucket_indices(family, field)
    total = 0
    finite = idx >= 0
    total += int(tau_arr[idx[finite]].sum())
    total += int((~finite).sum()) * tau_inf
    total += tau_inf if inf_image == -1 else int(tau_arr[inf_image])
    return -total


def local_trace(family: SurfaceFamily, field, point) -> LocalTrace:
    """The local term at one point of P^1(F_q), computed scalar-wise."""
    p = field.p
    num, den, _ = family._int_data()
    if point == "inf":
        dn, dd = _degree_mod(num, p), _degree_mod(den, p)
        if dn > dd:
            s = "inf"
        elif dn < dd:
            s = 0 if isinstance(field, PrimeField) else (0, 0)
        else:
            lead = num[dn] * pow(den[dd], -1, p) % p
            s = lead if isinstance(field, PrimeField) else (lead, 0)
    else:
        nv = field.poly_eval_scalar(num, point)
        dv = field.poly_eval_scalar(den, point)
        if _is_zero(field, dv):
            if _is_zero(field, nv):
                raise BadPrimeError(f"{family.label}: map degenerates mod {p}")
            s = "inf"
        elif isinstance(field, PrimeField):
            s = nv * pow(dv, -1, p) % p
        else:
            s = field.mul(nv, field.inv(dv))
    Acoef, Bcoef = _level_poly_coeffs(family.level)
    if s == "inf":
        Astar, Bstar = _infinity_model(family.level)
        A = Astar % p if isinstance(field, PrimeField) else (Astar % p, 0)
        B = Bstar % p if isinstance(field, PrimeField) else (Bstar % p, 0)
    else:
        A = field.poly_eval_scalar(Acoef, s)
        B = field.poly_eval_scalar(Bcoef, s)
    if _is_zero(field, _disc(field, A, B)):
        kind = classify_singular_fiber(field, A, B)
        return LocalTrace(point, kind, FIBER_VALUE[kind])
    return LocalTrace(point, "smooth", field.q + 1 - count_points_short(field, A, B))


def trace_pair(family: SurfaceFamily, p: int) -> tuple[int, int]:
    """(Tr_p, Tr_{p^2})."""
    return frobenius_trace(family, p, False), frobenius_trace(family, p, True)


def trace_fingerprint_equal(fam_a: SurfaceFamily, fam_b: SurfaceFamily,
                            primes) -> dict[int, dict]:
    """Per-prime comparison of Tr_p and Tr_{p^2} between two families."""
    out = {}
    for p in primes:
        ta, ta2 = trace_pair(fam_a, p)
        tb, tb2 = trace_pair(fam_b, p)
        out[p] = dict(tr_p=(ta, tb), tr_p2=(ta2, tb2),
                      tr_p_equal=ta == tb, tr_p2_equal=ta2 == tb2)
    return out


# ---------------------------------------------------------------------------
# table assembly

TABLE8_PRIMES = (5, 7, 11, 13, 17, 19, 23, 73)


def trace_rows(groups, primes=TABLE8_PRIMES, thread_count: int | None = None):
    """Rows (group, parameterization, p, tr_p, tr_p2) for the requested
    groups, in catalog order, primes ascending.

    The heavy work is one fiber-trace table per (level, q); with a thread
    count those tables are computed concurrently (the numpy kernels release
    the GIL), each exactly once, and the per-family bucket sums stay serial
    so the output order is deterministic.
    """
    jobs = []
    table_keys = []
    seen = set()
    for g in groups:
        for fam in surface_families(g):
            for p in primes:
                jobs.append((g.name, fam, p))
                for squared in (False, True):
                    key = (fam.level, p, squared)
                    if key not in seen:
                        seen.add(key)
                        table_keys.append(key)
    if thread_count and thread_count > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=thread_count) as ex:
            list(ex.map(lambda k: fiber_trace_table(*k), table_keys))
    rows = []
    for name, fam, p in jobs:
        rows.append((name, fam.label, p, *trace_pair(fam, p)))
    return rows


def rows_to_csv(rows) -> str:
    lines = ["group,parameterization,p,tr_p,tr_p2"]
    for name, label, p, tr, tr2 in rows:
        lines.append(f"{name},{label},{p},{tr},{tr2}")
    return "\n".join(lines) + "\n"
