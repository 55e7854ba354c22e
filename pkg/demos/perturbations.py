"""
Perturbing the products by a fixed element
==========================================

An element a with alpha^2(a) = beta^2(a) = a deforms the products of a
BiHom-Novikov-Poisson algebra into a new one with structure maps
alpha^2 and beta^2.
"""

from bihom.constructions import derivation_bhnp, derivation_perturbed, perturb_double, perturb_thm1, perturb_thm2
from bihom.families import gen_truncated_poly
from bihom.identities import check_bhnp_full
from bihom.linalg import fixed_subspace, mat_pow

parts = gen_truncated_poly(3, -1, -1)
A = derivation_bhnp(*parts)

# the admissible elements span the common fixed space of alpha^2 and beta^2
fixed = fixed_subspace([mat_pow(A.alpha, 2), mat_pow(A.beta, 2)])
print("fixed space basis:", [[str(c) for c in v] for v in fixed])

for a in fixed:
    label = "[" + ", ".join(map(str, a)) + "]"
    for build in (perturb_thm1, perturb_thm2):
        B = build(A, a)
        print(f"{build.__name__}(a={label}): BiHom-Novikov-Poisson {check_bhnp_full(B).passed}")

# perturbing twice equals the one-shot double perturbation,
# and for derivation algebras that has a closed form as well
one = [1, 0, 0]
D = perturb_double(A, one, one)
print("double == thm1 after thm2:", D == perturb_thm1(perturb_thm2(A, one), one))
print("closed form agrees:", D == derivation_perturbed(*parts, one, one))
