"""Exact q-expansions of the weight-3 basis pairs.

Each of the nine catalog groups carries two cusp forms h1, h2 given as cube
roots of eta quotients.  Their expansions live in q^(1/mu) with exact
rational coefficients (denominators are powers of 3); this script prints the
leading terms and then rebuilds the same forms the way they were found:
cube root of a hauptmodul times a weight-3 form on the parent group.
"""

from noncong import GROUPS, MAIN_GROUPS, basis_q_expansions, construct_basis


def show(series, terms=6):
    parts = []
    for e, c in series.terms()[:terms]:
        expo = f"q^({e})" if e.denominator > 1 else f"q^{e}"
        parts.append(f"({c})*{expo}")
    return " + ".join(parts) + " + ..."


for name, group in GROUPS.items():
    h1, h2 = basis_q_expansions(group, 30)
    print(f"== {name}   (cusp width {group.mu} at infinity)")
    print(f"   h1 = cbrt[{group.h1}] = {show(h1)}")
    print(f"   h2 = cbrt[{group.h2}] = {show(h2)}")

print()
print("Rebuilding each basis from the parent data (cube root of the")
print("hauptmodul times the parent weight-3 form) and checking it against")
print("the eta-quotient expansions through 50 coefficients:")
for name in MAIN_GROUPS:
    radicand, form, power = GROUPS[name].construction
    construct_basis(GROUPS[name], order=50)   # raises on any mismatch
    print(f"   {name}: h1 = ({radicand})^({power}/3) * {form}  -- exact match")
