"""Catalog of the two congruence parents, the eight index-3 noncongruence
subgroups (plus the conjugate B-variant), and the four associated weight-3
congruence newforms, together with the group-theoretic operations: the
dimension formula, cusp regularity, the cusp-width noncongruence test, the
cube-root basis construction, newform coefficient access and Hecke checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .series import EtaQuotient, PuiseuxSeries, eisenstein_e6
from .surfaces import RationalFunction, rf, T, ISOGENY_BY_INVOLUTION

# ---------------------------------------------------------------------------
# small number-theory utilities


def primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p:: p] = b"\x00" * len(sieve[p * p:: p])
    return [i for i in range(2, n + 1) if sieve[i]]


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def character_value(discriminants, p: int) -> int:
    """Product of Kronecker symbols (d/p) at an odd prime p coprime to all d."""
    if p == 2 or p < 2:
        raise ValueError("character values are defined here at odd primes only")
    val = 1
    for d in discriminants:
        if d % p == 0:
            raise ValueError(f"prime {p} divides the discriminant {d}")
        val *= kronecker_symbol(d, p)
    return val


# ---------------------------------------------------------------------------
# biquadratic coefficients c0 + c1*sqrt(d1) + c2*sqrt(d2) + c3*sqrt(d1*d2)


@dataclass(frozen=True)
class BiquadraticNumber:
    d1: int
    d2: int
    c: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        if self.d1 == self.d2 or self.d1 == 1 or self.d2 == 1:
            raise ValueError("need two distinct squarefree non-unit discriminants")

    @classmethod
    def make(cls, d1, d2, c0=0, c1=0, c2=0, c3=0) -> "BiquadraticNumber":
        return cls(d1, d2, (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3)))

    @property
    def is_rational(self) -> bool:
        return self.c[1] == 0 and self.c[2] == 0 and self.c[3] == 0

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.c[0]

    def _check(self, other):
        if (self.d1, self.d2) != (other.d1, other.d2):
            raise ValueError("incompatible biquadratic configurations")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiquadraticNumber.make(self.d1, self.d2, other)
        self._check(other)
        return BiquadraticNumber(self.d1, self.d2,
                                 tuple(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        return BiquadraticNumber(self.d1, self.d2, tuple(-a for a in self.c))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiquadraticNumber.make(self.d1, self.d2, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiquadraticNumber(self.d1, self.d2,
                                     tuple(Fraction(other) * a for a in self.c))
        self._check(other)
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = other.c
        d1, d2 = self.d1, self.d2
        return BiquadraticNumber(d1, d2, (
            a0 * b0 + d1 * a1 * b1 + d2 * a2 * b2 + d1 * d2 * a3 * b3,
            a0 * b1 + a1 * b0 + d2 * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + d1 * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.c[0] == other
        return (self.d1, self.d2) == (other.d1, other.d2) and self.c == other.c

    def __hash__(self):
        return hash((self.d1, self.d2, self.c))

    def __repr__(self):
        names = ["", f"sqrt({self.d1})", f"sqrt({self.d2})", f"sqrt({self.d1 * self.d2})"]
        parts = []
        for coeff, name in zip(self.c, names):
            if coeff:
                parts.append(f"{coeff}{'*' + name if name else ''}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# parent-level eta data

ETA_T8 = EtaQuotient.of({1: 8, 4: 4, 2: -12})          # hauptmodul of the level-8 parent
ETA_EA = EtaQuotient.of({4: 4, 2: 6, 1: -4})           # weight 3
ETA_EB = EtaQuotient.of({2: 8, 8: 4, 4: -6})           # weight 3, (2t/(t+1)) * Ea

ETA_A6 = EtaQuotient.of({1: 1, 6: 6, 2: -2, 3: -3})    # weight 1 forms on the
ETA_B6 = EtaQuotient.of({2: 1, 3: 6, 1: -2, 6: -3})    # level-6 parent
ETA_C6 = EtaQuotient.of({3: 1, 2: 6, 6: -2, 1: -3})
ETA_D6 = EtaQuotient.of({6: 1, 1: 6, 3: -2, 2: -3})

SEBBAR_WIDTH_MULTISETS = frozenset({
    (3, 3, 3, 3, 6, 6, 6, 6),
    (1, 1, 1, 3, 3, 9, 9, 9),
    (3, 3, 3, 3, 3, 3, 9, 9),
    (1, 1, 2, 2, 5, 5, 10, 10),
    (1, 1, 1, 2, 2, 2, 9, 18),
    (1, 1, 1, 1, 1, 1, 3, 27),
})


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class GroupRecord:
    name: str
    parent: str                      # "G8" = Gamma0(8) ^ Gamma1(4), "G6" = Gamma1(6)
    cusp_widths: tuple[int, ...]
    generators: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    mu: int                          # cusp width at infinity
    h1: EtaQuotient
    h2: EtaQuotient
    h1_unit: int                     # printed index n <-> series index n*unit
    h2_unit: int
    newform: str
    covering_m: RationalFunction | None = None
    covering_m_inv: RationalFunction | None = None
    involution_base: RationalFunction | None = None
    involution_cover: RationalFunction | None = None
    construction: tuple[str, str, int] | None = None   # (radicand, form, h1 power)
    parameterizations: tuple[tuple[str, RationalFunction], ...] = ()
    isogeny_key: str | None = None

    @property
    def display(self) -> str:
        return self.name.removeprefix("gamma_")

    def isogeny_data(self) -> dict | None:
        return ISOGENY_BY_INVOLUTION.get(self.isogeny_key) if self.isogeny_key else None


def _g(rows):
    return tuple(((a, b), (c, d)) for a, b, c, d in rows)


_x = T  # the catalog writes covering data in one formal variable

GROUPS: dict[str, GroupRecord] = {}


def _add(rec: GroupRecord):
    GROUPS[rec.name] = rec


_add(GroupRecord(
    name="gamma_24.6.1^6", parent="G8",
    cusp_widths=(24, 6, 1, 1, 1, 1, 1, 1),
    generators=_g([(1, 0, 24, 1), (9, -1, 64, -7), (5, -1, 16, -3), (1, 1, 0, 1),
                   (-3, -1, 16, 5), (-7, -1, 64, 9), (-11, -1, 144, 13)]),
    mu=1,
    h1=EtaQuotient.of({1: 4, 2: -6, 4: 20}),
    h2=EtaQuotient.of({1: -4, 2: 6, 4: 16}),
    h1_unit=1, h2_unit=1, newform="L48",
    covering_m=_x, covering_m_inv=_x,
    involution_base=-_x, involution_cover=-_x,
    construction=("t", "Ea", 2),
    parameterizations=(("E8(r^3)", _x ** 3),),
    isogeny_key="E8:-t",
))

_add(GroupRecord(
    name="gamma_8^3.2^3.3^2", parent="G8",
    cusp_widths=(8, 8, 8, 2, 2, 2, 3, 3),
    generators=_g([(1, 3, 0, 1), (-7, -8, 8, 9), (-3, -2, 8, 5), (1, 0, 8, 1),
                   (5, -2, 8, -3), (9, -8, 8, -7), (13, -18, 8, -11)]),
    mu=3,
    h1=EtaQuotient.of({2: 20, 4: -6, 8: 4}),
    h2=EtaQuotient.of({2: 16, 4: 6, 8: -4}),
    h1_unit=2, h2_unit=1, newform="L48",
    covering_m=(1 + _x) / (1 - _x), covering_m_inv=(_x - 1) / (_x + 1),
    involution_base=1 / _x, involution_cover=-_x,
    construction=("4(t+1)/(1-t)", "Eb", 1),
    parameterizations=(("E8((r^3-1)/(r^3+1))", (_x ** 3 - 1) / (_x ** 3 + 1)),),
    isogeny_key="E8:1/t",
))

_add(GroupRecord(
    name="gamma_8^3.6.3.1^3", parent="G8",
    cusp_widths=(8, 8, 8, 6, 3, 1, 1, 1),
    generators=_g([(-11, 6, -24, 13), (41, -25, 64, -39), (49, -32, 72, -47),
                   (1, 1, 0, 1), (1, 0, 8, 1), (25, -9, 64, -23), (81, -32, 200, -79)]),
    mu=1,
    h1=EtaQuotient.of({1: 4, 2: 10, 4: -4, 8: 8}),
    h2=EtaQuotient.of({1: 8, 2: -4, 4: 10, 8: 4}),
    h1_unit=1, h2_unit=1, newform="L432",
    covering_m=(_x + 1) / 4, covering_m_inv=4 * _x - 1,
    involution_base=(1 - _x) / (1 + _x), involution_cover=1 / (2 * _x),
    construction=("(t+1)/2", "Eb", 1),
    parameterizations=(("E8(r^3-1)", _x ** 3 - 1),
                       ("E8(2r^3-1)", 2 * _x ** 3 - 1),
                       ("E8(4r^3-1)", 4 * _x ** 3 - 1)),
    isogeny_key="E8:(1-t)/(1+t)",
))

_add(GroupRecord(
    name="gamma_24.3.2^3.1^3", parent="G8",
    cusp_widths=(24, 3, 2, 2, 2, 1, 1, 1),
    generators=_g([(1, 0, 24, 1), (21, -2, 200, -19), (9, -1, 64, -7), (5, -2, 8, -3),
                   (1, 1, 0, 1), (-11, -2, 72, 13), (-7, -1, 64, 9)]),
    mu=1,
    h1=EtaQuotient.of({1: -4, 2: 22, 4: -8, 8: 8}),
    h2=EtaQuotient.of({1: -8, 2: 20, 4: 2, 8: 4}),
    h1_unit=1, h2_unit=1, newform="L432",
    covering_m=2 * (1 + _x) / _x, covering_m_inv=2 / (_x - 2),
    involution_base=(_x + 1) / (_x - 1), involution_cover=2 / _x,
    construction=("(t+1)/(2t)", "Eb", 1),
    parameterizations=(("E8(2/(r^3-2))", 2 / (_x ** 3 - 2)),),
    isogeny_key="E8:(t+1)/(t-1)",
))

# Conjugate variant of gamma_24.3.2^3.1^3 by (0 -1; 8 0); generators obtained
# by that conjugation, basis forms as given with r = q^(1/3), h1 starting at r^2.
_add(GroupRecord(
    name="gamma_24.3.2^3.1^3B", parent="G8",
    cusp_widths=(24, 3, 2, 2, 2, 1, 1, 1),
    generators=_g([(1, -3, 0, 1), (-19, -25, 16, 21), (-7, -8, 8, 9), (-3, -1, 16, 5),
                   (1, 0, -8, 1), (13, -9, 16, -11), (9, -8, 8, -7)]),
    mu=3,
    h1=EtaQuotient.of({1: 8, 2: -8, 4: 22, 8: -4}),
    h2=EtaQuotient.of({1: 4, 2: 2, 4: 20, 8: -8}),
    h1_unit=1, h2_unit=1, newform="L432",
))

_add(GroupRecord(
    name="gamma_18.6.3^3.1^3", parent="G6",
    cusp_widths=(18, 6, 3, 3, 3, 1, 1, 1),
    generators=_g([(1, 0, 18, 1), (25, -3, 192, -23), (7, -1, 36, -5), (7, -3, 12, -5),
                   (1, 1, 0, 1), (-11, -3, 48, 13), (-5, -1, 36, 7)]),
    mu=1,
    h1=EtaQuotient.of({1: 4, 2: 7, 3: -4, 6: 11}),
    h2=EtaQuotient.of({1: -4, 2: 11, 3: 4, 6: 7}),
    h1_unit=1, h2_unit=1, newform="L243",
    covering_m=_x / 9, covering_m_inv=9 * _x,
    involution_base=1 / (9 * _x), involution_cover=1 / (9 * _x),
    construction=("b/d", "acd", 1),
    parameterizations=(("E6(3r^3)", 3 * _x ** 3), ("E6(9r^3)", 9 * _x ** 3)),
    isogeny_key="E6:1/(9t)",
))

_add(GroupRecord(
    name="gamma_9.6^3.3.2^3", parent="G6",
    cusp_widths=(9, 6, 6, 6, 3, 2, 2, 2),
    generators=_g([(1, 3, 0, 1), (-5, -6, 6, 7), (-11, -8, 18, 13), (1, 0, 6, 1),
                   (7, -2, 18, -5), (7, -6, 6, -5), (25, -32, 18, -23)]),
    mu=3,
    h1=EtaQuotient.of({1: 7, 2: 4, 3: 11, 6: -4}),
    h2=EtaQuotient.of({1: 11, 2: -4, 3: 7, 6: 4}),
    h1_unit=1, h2_unit=1, newform="L243",
    covering_m=(1 - 9 * _x) / (3 - 3 * _x), covering_m_inv=(1 - 3 * _x) / (9 - 3 * _x),
    involution_base=1 / (9 * _x), involution_cover=1 / _x,
    construction=("a/c", "bcd", 1),
    parameterizations=(("E6((1-3r^3)/(9-3r^3))",
                        (1 - 3 * _x ** 3) / (9 - 3 * _x ** 3)),),
    isogeny_key="E6:1/(9t)",
))

_add(GroupRecord(
    name="gamma_9.6^4.1^3", parent="G6",
    cusp_widths=(9, 6, 6, 6, 6, 1, 1, 1),
    generators=_g([(-17, 6, -54, 19), (127, -49, 324, -125), (61, -24, 150, -59),
                   (1, 1, 0, 1), (1, 0, 6, 1), (91, -25, 324, -89), (85, -24, 294, -83)]),
    mu=1,
    h1=EtaQuotient.of({1: 13, 2: -2, 3: -7, 6: 14}),
    h2=EtaQuotient.of({1: 14, 2: -7, 3: -2, 6: 13}),
    h1_unit=1, h2_unit=1, newform="L486",
    covering_m=8 / (3 - 3 * _x), covering_m_inv=1 - 8 / (3 * _x),
    involution_base=(1 - 9 * _x) / (9 - 9 * _x), involution_cover=2 / _x,
    construction=("b/c", "acd", 1),
    parameterizations=(("E6(1-24/r^3)", 1 - 24 / _x ** 3),
                       ("E6(1-8/(3r^3))", 1 - 8 / (3 * _x ** 3))),
    isogeny_key="E6:(1-9t)/(9-9t)",
))

_add(GroupRecord(
    name="gamma_18.3^4.2^3", parent="G6",
    cusp_widths=(18, 3, 3, 3, 3, 2, 2, 2),
    generators=_g([(1, 3, 0, 1), (-11, -8, 18, 13), (-5, -3, 12, 7), (7, -2, 18, -5),
                   (7, -3, 12, -5), (25, -32, 18, -23), (19, -27, 12, -17)]),
    mu=3,
    h1=EtaQuotient.of({1: -2, 2: 13, 3: 14, 6: -7}),
    h2=EtaQuotient.of({1: -7, 2: 14, 3: 13, 6: -2}),
    h1_unit=1, h2_unit=1, newform="L486",
    covering_m=(1 - 9 * _x) / (24 * _x), covering_m_inv=1 / (24 * _x + 9),
    involution_base=(1 - 9 * _x) / (9 - 9 * _x), involution_cover=1 / (2 * _x),
    construction=("a/d", "bcd", 1),
    parameterizations=(("E6(1/(24r^3+9))", 1 / (24 * _x ** 3 + 9)),),
    isogeny_key="E6:(1-9t)/(9-9t)",
))

MAIN_GROUPS = tuple(n for n in GROUPS if not n.endswith("B"))


def get_group(name: str) -> GroupRecord:
    key = name.strip()
    if not key.startswith("gamma_"):
        key = "gamma_" + key
    if key not in GROUPS:
        known = ", ".join(GROUPS)
        raise KeyError(f"unknown group {name!r}; catalog has: {known}")
    return GROUPS[key]


# ---------------------------------------------------------------------------
# structural operations


def dim_cusp_forms(k: int, g: int, u: int, u_irr: int, elliptic_orders=()) -> int:
    """Dimension of the weight-k cusp forms (odd k) of a genus-g subgroup with
    u regular and u_irr irregular cusps and the given elliptic-point orders."""
    if k % 2 == 0 or k < 3:
        raise ValueError("this formula needs odd k >= 3")
    val = Fraction(k - 1) * (g - 1) + Fraction(k - 2, 2) * u + Fraction(k - 1, 2) * u_irr
    val += sum(Fraction(k * (e - 1), 2 * e) for e in elliptic_orders)
    if val.denominator != 1:
        raise ValueError(f"non-integral dimension {val}: invalid input combination")
    return int(val)


def cusp_regularity(generators) -> list[str]:
    """Classify each generator: 'regular' (trace +2), 'irregular' (trace -2),
    or 'notParabolic'.  Matrices must be integral with determinant 1."""
    out = []
    for (a, b), (c, d) in generators:
        if a * d - b * c != 1:
            raise ValueError(f"matrix {((a, b), (c, d))} has determinant != 1")
        tr = a + d
        if abs(tr) != 2 or (b == 0 and c == 0):
            out.append("notParabolic")
        elif tr == 2:
            out.append("regular")
        else:
            out.append("irregular")
    return out


def derived_cusp_counts(group: GroupRecord) -> tuple[int, int]:
    """(u, u') from the generator traces and the 8-cusp width multiset."""
    kinds = cusp_regularity(group.generators)
    irr = kinds.count("irregular")
    if "notParabolic" in kinds:
        raise ValueError(f"{group.name}: non-parabolic generator")
    return len(group.cusp_widths) - irr, irr


def noncongruence_test(cusp_widths) -> str:
    """'noncongruence' when the width multiset is not one of the index-36
    genus-0 torsion-free congruence multisets, else 'inconclusive'."""
    widths = tuple(sorted(cusp_widths))
    if sum(widths) != 36:
        raise ValueError("out of scope: cusp widths must sum to 36")
    return "inconclusive" if widths in SEBBAR_WIDTH_MULTISETS else "noncongruence"


# ---------------------------------------------------------------------------
# basis series


def _series_order_for(eq: EtaQuotient, max_index: int, mu: int) -> int:
    # number of integer q coefficients of the eta product needed so that the
    # cube root is valid past exponent max_index/mu
    pre = Fraction(eq.prefactor24, 24)
    need = Fraction(max_index, mu) - pre / 3
    return max(int(need) + 2, 2)


@lru_cache(maxsize=None)
def _basis_cached(name: str, bound: int) -> tuple[PuiseuxSeries, PuiseuxSeries]:
    g = GROUPS[name]
    out = []
    for eq, unit in ((g.h1, g.h1_unit), (g.h2, g.h2_unit)):
        order = _series_order_for(eq, bound * unit, g.mu)
        out.append(eq.root_expansion(3, order))
    return tuple(out)


def basis_q_expansions(group: GroupRecord, bound: int = 501):
    """(h1, h2) as exact Puiseux series, valid through printed index `bound`."""
    return _basis_cached(group.name, bound)


def coefficient_sequence(group: GroupRecord, which: str, bound: int = 500) -> dict[int, Fraction]:
    """Printed coefficient sequence {n: a_n} for h1 ('a') or h2 ('b'),
    n = 1..bound in the form's own index units."""
    h1, h2 = basis_q_expansions(group, bound + 1)
    series, unit = (h1, group.h1_unit) if which == "a" else (h2, group.h2_unit)
    return {n: series.coefficient(n * unit) for n in range(1, bound + 1)}


# radicand builders for the cube-root construction, from parent-level data


def _level8_radicand(key: str, order: int) -> PuiseuxSeries:
    t = ETA_T8.expansion(order)
    if key == "t":
        return t
    if key == "(t+1)/2":
        return (t + 1) / 2
    if key == "(t+1)/(2t)":
        return (t + 1) / t.scale(2)
    if key == "4(t+1)/(1-t)":
        return (t + 1).scale(4) / (1 - t)
    raise KeyError(key)


def _level6_radicand(key: str, order: int) -> PuiseuxSeries:
    a = ETA_A6.expansion(order)
    b = ETA_B6.expansion(order)
    c = ETA_C6.expansion(order)
    d = ETA_D6.expansion(order)
    num, den = {"b/d": (b, d), "a/c": (a, c), "b/c": (b, c), "a/d": (a, d)}[key]
    return num / den


def _weight3_form(key: str, order: int) -> PuiseuxSeries:
    if key == "Ea":
        return ETA_EA.expansion(order)
    if key == "Eb":
        return ETA_EB.expansion(order)
    if key == "acd":
        return (ETA_A6.expansion(order) * ETA_C6.expansion(order)
                * ETA_D6.expansion(order))
    if key == "bcd":
        return (ETA_B6.expansion(order) * ETA_C6.expansion(order)
                * ETA_D6.expansion(order))
    raise KeyError(key)


def construct_basis(group: GroupRecord, order: int = 50):
    """Build (h1, h2) as cube-root-of-hauptmodul times weight-3 form and check
    the result against the catalog eta-quotient expansions.

    Returns the constructed pair; raises if it disagrees with the catalog.
    """
    if group.construction is None:
        raise ValueError(f"{group.name} has no cube-root construction data")
    radicand_key, form_key, h1_pow = group.construction
    qorder = order + 6
    if group.parent == "G8":
        u = _level8_radicand(radicand_key, qorder)
    else:
        u = _level6_radicand(radicand_key, qorder)
    form = _weight3_form(form_key, qorder)
    root = u.nth_root(3)
    built1 = root ** h1_pow * form
    built2 = root ** (3 - h1_pow) * form
    cat1, cat2 = basis_q_expansions(group, order + 1)
    bound = Fraction(order, group.mu)
    for built, cat, tag in ((built1, cat1, "h1"), (built2, cat2, "h2")):
        if not built.agrees_with(cat, through=bound):
            raise ArithmeticError(
                f"internal consistency failure: constructed {tag} of "
                f"{group.name} differs from its catalog eta quotient")
    return built1, built2


# ---------------------------------------------------------------------------
# newforms


@dataclass(frozen=True)
class NewformRecord:
    tag: str
    level: int
    character: tuple[int, ...]          # nebentypus as Kronecker discriminants,
                                        # verified against the exact expansion
    source: str                         # etaQuotient | etaEisenstein | storedTable
    biq: tuple[int, int]                # (d1, d2) housing the coefficients
    printed_character: tuple[int, ...] | None = None   # header as published,
                                        # when it differs from the verified one


# The published header for the level-48 form reads (-3/p)(-4/p); that product
# is an even character, and a weight-3 space with even character is zero.  The
# nebentypus verified exactly from the eta expansion is (-3/p); the published
# product is kept in printed_character.
NEWFORMS: dict[str, NewformRecord] = {
    "L48": NewformRecord("L48", 48, (-3,), "etaQuotient", (2, -3),
                         printed_character=(-3, -4)),
    "L432": NewformRecord("L432", 432, (-4,), "etaEisenstein", (2, -3)),
    "L243": NewformRecord("L243", 243, (-3,), "storedTable", (-1, 3)),
    "L486": NewformRecord("L486", 486, (-3,), "storedTable", (-2, -3)),
}

ETA_L48 = EtaQuotient.of({4: 9, 12: 9, 2: -3, 6: -3, 8: -3, 24: -3})

# stored prime coefficients (the L243/L486 tables end where shown)
_L243_STORED = {2: (0, 3), 5: (0, 6), 7: (11, 0), 11: (0, 12), 13: (5, 0),
                17: (0, -18), 19: (-19, 0), 23: (0, -30), 29: (0, 48),
                31: (-13, 0), 37: (17, 0)}
_L486_STORED = {2: (0, -1), 5: (0, 3), 7: (-7, 0), 11: (0, -3), 13: (5, 0),
                17: (0, -18), 19: (17, 0), 23: (0, -6), 29: (0, -39),
                31: (59, 0), 37: (-19, 0), 41: (0, 39), 43: (47, 0),
                47: (0, -57), 53: (0, 27), 59: (0, -15), 61: (-4, 0),
                67: (-46, 0)}


def _round_order(n: int) -> int:
    """Round series orders up to powers of two so repeated coefficient
    lookups share a handful of cached expansions."""
    return 1 << max(6, (n - 1).bit_length())


@lru_cache(maxsize=None)
def _l48_series(order: int) -> PuiseuxSeries:
    return ETA_L48.expansion(order)


@lru_cache(maxsize=None)
def _l432_components(order: int):
    """The four congruence pieces, already rescaled q -> q^12, so that the
    full form is comp1 + 6*sqrt(2)comp5 + sqrt(-3)comp7 + 6*sqrt(-6)comp11."""
    e6 = eisenstein_e6(order + 1)
    comp = {}
    comp[1] = EtaQuotient.of({2: 3, 3: 1, 6: -1, 1: -1}).expansion(order) * e6
    comp[5] = EtaQuotient.of({1: 1, 2: 3, 3: 3, 6: -1}).expansion(order)
    comp[7] = EtaQuotient.of({6: 3, 1: 1, 2: -1, 3: -1}).expansion(order) * e6
    comp[11] = EtaQuotient.of({3: 1, 1: 3, 6: 3, 2: -1}).expansion(order)
    return {k: v.substitute_qpower(12) for k, v in comp.items()}


_L432_UNITS = {1: (1, 0, 0, 0), 5: (0, 6, 0, 0), 7: (0, 0, 1, 0), 11: (0, 0, 0, 6)}


def newform_an(tag: str, n: int) -> BiquadraticNumber:
    """Exact coefficient a_n of the tagged newform.

    L48 and L432 are computed from their eta/Eisenstein expressions for any n;
    L243/L486 only carry the stored prime table.
    """
    rec = NEWFORMS[tag]
    d1, d2 = rec.biq
    if n < 1:
        raise ValueError("coefficient index must be >= 1")
    if tag == "L48":
        s = _l48_series(_round_order(n + 1))
        return BiquadraticNumber.make(d1, d2, s.coefficient(n))
    if tag == "L432":
        r = n % 12
        if r not in _L432_UNITS:
            return BiquadraticNumber.make(d1, d2, 0)
        comp = _l432_components(_round_order(n // 12 + 2))[r]
        c = comp.coefficient(n)
        u = _L432_UNITS[r]
        return BiquadraticNumber.make(d1, d2, *(Fraction(x) * c for x in u))
    stored = _L243_STORED if tag == "L243" else _L486_STORED
    if n == 3:
        return BiquadraticNumber.make(d1, d2, 0)
    if n not in stored:
        raise KeyError(
            f"coefficient unknown: {tag} stores primes {sorted(stored)} only")
    c0, c1 = stored[n]
    return BiquadraticNumber.make(d1, d2, c0, c1)


def newform_coefficients(tag: str, prime_bound: int) -> dict[int, BiquadraticNumber]:
    """Table p -> A_p for odd primes p <= prime_bound."""
    out = {}
    for p in primes_upto(prime_bound):
        if p < 5:
            continue
        out[p] = newform_an(tag, p)
    return out


def newform_expansion(tag: str, order: int, strict: bool = True):
    """a_1..a_order via the multiplicative structure (Hecke recursion).

    For the stored-table forms only n whose prime factors are stored are
    reachable; with strict=False those entries are left as None instead of
    raising.
    """
    rec = NEWFORMS[tag]
    d1, d2 = rec.biq
    one = BiquadraticNumber.make(d1, d2, 1)
    zero = BiquadraticNumber.make(d1, d2, 0)
    coeffs: list = [zero] * (order + 1)
    coeffs[1] = one
    missing = set()
    for p in primes_upto(order):
        try:
            ap = newform_an(tag, p)
        except KeyError:
            if strict:
                raise
            missing.add(p)
            continue
        coeffs[p] = ap
        chi = kronecker_symbol_product(rec.character, p)
        prev, cur, pk = one, ap, p * p
        while pk <= order:
            if rec.level % p == 0:
                nxt = ap * cur
            else:
                nxt = ap * cur - chi * p * p * prev
            coeffs[pk] = nxt
            prev, cur, pk = cur, nxt, pk * p
    for n in range(2, order + 1):
        f = _factorize(n)
        if missing & set(f):
            coeffs[n] = None
            continue
        if len(f) > 1:
            val = one
            for p, k in f.items():
                val = val * coeffs[p ** k]
            coeffs[n] = val
    return coeffs[1:]


def kronecker_symbol_product(discs, n: int) -> int:
    val = 1
    for d in discs:
        val *= kronecker_symbol(d, n)
    return val


def _factorize(n: int) -> dict[int, int]:
    f = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            f[d] = f.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        f[n] = f.get(n, 0) + 1
    return f


@dataclass
class HeckeReport:
    tag: str
    prime_bound: int
    n_bound: int
    checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def hecke_check(tag: str, prime_bound: int, n_bound: int,
                character=None) -> HeckeReport:
    """Exact verification of a_{np} = a_p a_n - chi(p) p^2 a_{n/p} for all
    good primes p <= prime_bound and n <= n_bound (weight 3).

    ``character`` overrides the catalog nebentypus (discriminant list)."""
    rec = NEWFORMS[tag]
    discs = rec.character if character is None else tuple(character)
    if rec.source == "storedTable":
        table = newform_expansion(tag, prime_bound * n_bound, strict=False)

        def an_of(n):
            v = table[n - 1]
            if v is None:
                raise KeyError(f"coefficient unknown: a_{n} of {tag}")
            return v
    else:
        an_of = lambda n: newform_an(tag, n)  # noqa: E731
    report = HeckeReport(tag, prime_bound, n_bound, 0, [])
    for p in primes_upto(prime_bound):
        if rec.level % p == 0:
            continue
        chi = kronecker_symbol_product(discs, p)
        ap = an_of(p)
        for n in range(1, n_bound + 1):
            lhs = an_of(n * p) - ap * an_of(n)
            if n % p == 0:
                lhs = lhs + chi * p * p * an_of(n // p)
            report.checked += 1
            if not (lhs.is_rational and lhs.rational_value() == 0):
                report.violations.append((p, n))
    return report


# ---------------------------------------------------------------------------
# machine-readable export


def export_text() -> str:
    """The whole catalog as key/value record blocks."""
    lines = []
    for name, g in GROUPS.items():
        lines.append(f"[group {name}]")
        lines.append(f"parent = {'Gamma0(8)^Gamma1(4)' if g.parent == 'G8' else 'Gamma1(6)'}")
        lines.append("widths = " + ",".join(map(str, g.cusp_widths)))
        gens = "; ".join(f"{a},{b},{c},{d}" for (a, b), (c, d) in g.generators)
        lines.append(f"generators = {gens}")
        lines.append(f"mu = {g.mu}")
        lines.append(f"h1 = cbrt[{g.h1}] unit {g.h1_unit}")
        lines.append(f"h2 = cbrt[{g.h2}] unit {g.h2_unit}")
        lines.append(f"newform = {g.newform}")
        if g.covering_m is not None:
            lines.append(f"m(t) = {g.covering_m}")
            lines.append(f"m_inv(x) = {g.covering_m_inv}")
            lines.append(f"i(t) = {g.involution_base}")
            lines.append(f"iota(r) = {g.involution_cover}")
        iso = g.isogeny_data()
        if iso:
            lines.append(f"isogeny = degree {iso['d']}, kernel {iso['kernel']}, "
                         f"field {iso['field']}")
        for label, sub in g.parameterizations:
            lines.append(f"parameterization = {label}")
        lines.append("")
    for tag, rec in NEWFORMS.items():
        lines.append(f"[newform {tag}]")
        lines.append(f"level = {rec.level}")
        lines.append("character = " + " * ".join(f"({d}/p)" for d in rec.character))
        lines.append(f"source = {rec.source}")
        lines.append("")
    return "\n".join(lines)
