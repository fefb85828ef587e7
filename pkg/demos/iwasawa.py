"""Walk through the Iwasawa example: the spinor, its structure, the leaves and
the transverse cohomology.

Run with ``python demos/iwasawa.py``.
"""
from gcgw.complexes import build_operators, cohomology_dims, transverse_split
from gcgw.gcs import (
    PureSpinorLine,
    check_axioms,
    check_calabi_yau,
    leaf_distribution,
    spinor_to_structure,
    structure_type,
)
from gcgw.lie import LieStructure, validate

L = LieStructure(6, {"e5": "e1^e3 + e4^e2", "e6": "e1^e4 + e2^e3"})
print("Lie algebra:", validate(L).summary())

for second in ("e3 + i e4", "e3 - i e4"):
    rho = PureSpinorLine.from_factors(L.space, omega="e5^e6", theta=["e1 + i e2", second])
    rep = check_calabi_yau(L, rho, strong=True)
    print(f"\nrho = exp(i e56)(e1 + i e2)({second})")
    print("  d rho              =", rep.d_rho)
    print("  nondegeneracy      =", rep.nondegeneracy_value)
    print("  strong GCY         =", rep.strong)
    J = spinor_to_structure(rho)
    print("  type               =", structure_type(J))
    print("  integrable         =", check_axioms(J, L).integrable)
    ld = leaf_distribution(L, rho)
    print("  leaf directions    =", [[str(x) for x in v] for v in ld.basis], "subalgebra:", ld.subalgebra)
    if rep.strong:
        tab = cohomology_dims(build_operators(transverse_split(J, L)))
        print("  dim H_D            =", tab.D)
        print("  h^{p,q}            =", tab.dL)
