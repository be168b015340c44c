"""Residues mod p^2, roots, ratio machinery, three-term checks, detection."""

import math
import random
from fractions import Fraction

import pytest

from noncong.catalog import (character_value, coefficient_sequence,
                             get_group, newform_an, newform_expansion,
                             primes_upto)
from noncong.congruence import (InsufficientDataError,
                                NotPIntegralError, ResidueModP2,
                                aswd_three_term_check, cbrt_mod_p2,
                                cross_ratio_constancy, detect_basis,
                                padic_valuation, primitive_cube_roots_mod_p2,
                                ratio_constancy, reduce_mod_p2, sixth_roots_mod_p2,
                                solve_alpha_ap, sqrt_mod_p2)


# --- residues -----------------------------------------------------------------

def test_reduce_examples():
    assert reduce_mod_p2(Fraction(-4, 3), 5).value == 7
    assert reduce_mod_p2(0, 7).value == 0
    assert reduce_mod_p2(-22, 13).value == 147


def test_reduce_round_trip_random():
    rng = random.Random(11)
    for _ in range(200):
        p = rng.choice([5, 7, 11, 13, 17, 19, 23])
        num = rng.randint(-500, 500)
        den = rng.choice([1, 3, 9, 27, 81])
        r = reduce_mod_p2(Fraction(num, den), p)
        assert (r.value * den - num) % (p * p) == 0


def test_reduce_rejects_non_integral():
    with pytest.raises(NotPIntegralError, match="not p-integral"):
        reduce_mod_p2(Fraction(1, 5), 5)


def test_padic_valuations():
    assert padic_valuation(Fraction(50, 3), 5) == 2
    assert padic_valuation(Fraction(-5968, 6561), 7) == 0
    assert padic_valuation(0, 5) == math.inf
    assert padic_valuation(Fraction(3, 49), 7) == -2


def test_residue_arithmetic():
    a = ResidueModP2(5, 7)
    assert (a * a.inverse()).value == 1
    assert (a + 18).value == 0
    with pytest.raises(ZeroDivisionError):
        ResidueModP2(5, 10).inverse()
    assert ResidueModP2(7, 18).order() == 3


# --- roots ----------------------------------------------------------------------

def test_sqrt_examples():
    roots = sqrt_mod_p2(ResidueModP2(7, -3 % 49))
    assert {r.value for r in roots} == {37, 12}
    assert (37 * 37 - (-3)) % 49 == 0
    assert sqrt_mod_p2(ResidueModP2(5, 2)) is None
    roots1 = sqrt_mod_p2(ResidueModP2(11, 1))
    assert {r.value for r in roots1} == {1, 120}


def test_cbrt_examples():
    assert cbrt_mod_p2(ResidueModP2(5, 3)).value == 12
    assert pow(12, 3, 25) == 3
    assert cbrt_mod_p2(ResidueModP2(5, 1)).value == 1
    assert cbrt_mod_p2(ResidueModP2(11, 3)).value == 9
    with pytest.raises(ValueError, match="not unique"):
        cbrt_mod_p2(ResidueModP2(7, 2))


def test_root_round_trips_random():
    rng = random.Random(3)
    squares = cubes = 0
    for p in [q for q in primes_upto(50) if q >= 5]:
        for _ in range(30):
            a = rng.randrange(1, p)
            r = sqrt_mod_p2(ResidueModP2(p, a))
            if r is not None:
                for x in r:
                    assert (x.value * x.value - a) % (p * p) == 0
                squares += 1
            if p % 3 == 2:
                c = cbrt_mod_p2(ResidueModP2(p, a))
                assert pow(c.value, 3, p * p) == a % (p * p)
                cubes += 1
    assert squares >= 100 and cubes >= 100


def test_sixth_roots():
    for p in (5, 7, 13, 23):
        roots = sixth_roots_mod_p2(p)
        m = p * p
        for r in roots:
            assert pow(r.value, 6, m) == 1
        assert {1, m - 1} <= {r.value for r in roots}
        assert len(roots) == (6 if p % 3 == 1 else 2)
    omegas = primitive_cube_roots_mod_p2(7)
    assert {w.value for w in omegas} == {18, 30}
    assert all((w.value ** 2 + w.value + 1) % 49 == 0 for w in omegas)
    w13 = primitive_cube_roots_mod_p2(13)
    assert 22 in {w.value for w in w13} and 146 in {w.value for w in w13}


# --- ratio machinery ---------------------------------------------------------------

def test_ratio_constancy_on_catalog_group():
    g = get_group("24.6.1^6")
    a = coefficient_sequence(g, "a", 500)
    assert ratio_constancy(a, 7, 500).value == 47
    assert ratio_constancy(a, 5, 500).value == 0
    assert ratio_constancy(a, 19, 500).value == 335


def test_ratio_constancy_empty_test_set_is_error():
    with pytest.raises(InsufficientDataError, match="insufficient data"):
        ratio_constancy({1: Fraction(1)}, 7, 500)


def test_ratio_constancy_detects_nonconstant():
    seq = {n: Fraction(n) for n in range(1, 60)}
    seq[14] = Fraction(999)
    assert ratio_constancy(seq, 7, 56) is None


def test_cross_ratio_on_catalog_group():
    g = get_group("8^3.6.3.1^3")
    a = coefficient_sequence(g, "a", 500)
    b = coefficient_sequence(g, "b", 500)
    assert ratio_constancy(a, 5, 500) is None          # case 1 fails at p = 2 mod 3
    c1, c2 = cross_ratio_constancy(a, b, 5, 500)
    assert (c1.value, c2.value) == (3, 1)
    c1, c2 = cross_ratio_constancy(a, b, 11, 500)
    assert (c1.value, c2.value) == (84, 32)


def test_solve_alpha_ap():
    c1, c2 = ResidueModP2(5, 3), ResidueModP2(5, 1)
    alpha_sq, ap_sq, pattern = solve_alpha_ap(c1, c2)
    assert ap_sq.value == 3
    assert ap_sq.value == (-2 * 36) % 25      # -2 * 6^2
    assert pattern[6].value == 4
    same = solve_alpha_ap(ResidueModP2(5, 7), ResidueModP2(5, 7))
    assert same[0].value == 1
    with pytest.raises(ZeroDivisionError):
        solve_alpha_ap(ResidueModP2(5, 5), ResidueModP2(5, 10))


# --- three-term checks ----------------------------------------------------------------

def test_three_term_exact_for_newform_itself():
    coeffs = {n + 1: v.rational_value()
              for n, v in enumerate(newform_expansion("L48", 170))}
    rep = aswd_three_term_check(coeffs, newform_an("L48", 7).rational_value(),
                                character_value((-3,), 7), 7, 24)
    assert rep.ok


def test_three_term_for_noncongruence_form():
    g = get_group("24.6.1^6")
    a = coefficient_sequence(g, "a", 500)
    chi7 = character_value((-3,), 7)
    rep = aswd_three_term_check(a, -2, chi7, 7, 70)
    assert rep.ok
    bad = aswd_three_term_check(a, 1, chi7, 7, 10)
    assert not bad.ok and bad.failures[0] == 1


def test_three_term_with_residue_ap():
    g = get_group("24.6.1^6")
    a = coefficient_sequence(g, "a", 500)
    rep = aswd_three_term_check(a, reduce_mod_p2(-2, 7), character_value((-3,), 7), 7, 20)
    assert rep.ok
    assert any(kind.startswith("mod") for _, _, kind, _ in rep.rows)


def test_three_term_insufficient_precision():
    with pytest.raises(InsufficientDataError):
        aswd_three_term_check({1: Fraction(1)}, -2, 1, 7, 3)


# --- detection ---------------------------------------------------------------------------

def test_detect_basis_deterministic():
    g = get_group("18.6.3^3.1^3")
    r1 = detect_basis(g, 7)
    r2 = detect_basis(g, 7)
    assert r1.to_json() == r2.to_json()


def test_detect_basis_case_assignments():
    g = get_group("18.6.3^3.1^3")
    assert detect_basis(g, 7).case_kind == "case1"
    assert detect_basis(g, 5).case_kind == "case2"
    assert detect_basis(g, 7).constants == {"a": 36, "b": 2}
    rep5 = detect_basis(g, 5)
    assert rep5.constants == {"ab": 3, "ba": 13}
    assert rep5.alpha_power_pattern[3] == (-9) % 25


def test_detect_basis_b_variant():
    g = get_group("24.3.2^3.1^3B")
    rep = detect_basis(g, 5)
    assert rep.case_kind == "case2"
    assert rep.constants == {"ab": 14, "ba": 2}
    rep7 = detect_basis(g, 7)
    assert rep7.case_kind == "case1"
    assert rep7.constants == {"a": 32, "b": 20}


def test_detect_basis_json_fields():
    rep = detect_basis(get_group("24.6.1^6"), 7)
    import json
    data = json.loads(rep.to_json())
    assert data["caseKind"] == "case1"
    assert data["constants"] == {"a": 47, "b": 47}
    assert data["newformMatch"]["a"]["tag"] == "L48"


def test_match_weakened_modulus_at_19():
    # constants = A_19 * omega with A_19 = -19 divisible by p: certified mod p
    rep = detect_basis(get_group("18.6.3^3.1^3"), 19)
    m = rep.matches["a"]
    assert m is not None and m.modulus_exponent == 1
    assert m.order == 3


def test_match_derived_when_catalog_unknown():
    rep = detect_basis(get_group("9.6^3.3.2^3"), 43)
    assert rep.case_kind == "case1"
    assert rep.matches["a"] is None
    assert any("derived" in n for n in rep.notes)


def test_detect_basis_attaches_three_term_rows():
    import json
    g = get_group("24.6.1^6")
    rep = detect_basis(g, 7, bound=500, three_term_n_bound=40)
    assert set(rep.three_term) == {"a", "b"}
    assert rep.three_term["a"].ok and rep.three_term["b"].ok
    data = json.loads(rep.to_json())
    assert data["threeTerm"]["a"][0][0] == 1
