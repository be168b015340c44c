"""Structural facts about the nine groups.

Cusp-width multisets prove noncongruence (none appears among the six
congruence multisets of index 36), the generator traces give the regular /
irregular cusp split and hence dim S_3 = 2, and the base involutions lift to
the covers: (iota(cbrt m(t)))^3 = m(i(t)) holds as an exact identity in Q(t).
"""

from noncong import (GROUPS, MAIN_GROUPS, cusp_regularity, derived_cusp_counts,
                     dim_cusp_forms, involution_identity_check,
                     noncongruence_test)

for name, g in GROUPS.items():
    verdict = noncongruence_test(g.cusp_widths)
    kinds = cusp_regularity(g.generators)
    u, ui = derived_cusp_counts(g)
    dim = dim_cusp_forms(3, 0, u, ui)
    print(f"{name}")
    print(f"   widths {sorted(g.cusp_widths, reverse=True)} -> {verdict}")
    print(f"   generators all parabolic, traces +2 ({kinds.count('regular')} regular)"
          f" -> (u, u') = ({u}, {ui}), dim S_3 = {dim}")

print()
print("Involution identities (iota(r)^3 = m(i(t)) with r^3 = m(t)):")
for name in MAIN_GROUPS:
    g = GROUPS[name]
    ok = involution_identity_check(g)
    print(f"   {name}: i(t) = {g.involution_base}, iota(r) = {g.involution_cover}"
          f"  -> {'verified' if ok else 'FAILED'}")

print()
print("Isogeny data carried by each base involution:")
seen = set()
for name in MAIN_GROUPS:
    data = GROUPS[name].isogeny_data()
    key = (data["d"], data["kernel"])
    if key in seen:
        continue
    seen.add(key)
    print(f"   degree {data['d']}, kernel roots of {data['kernel']}, "
          f"defined over {data['field']}")
