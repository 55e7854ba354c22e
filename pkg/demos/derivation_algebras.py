"""
Derivation algebras and their tensor products
=============================================

Start from the truncated polynomial ring Q[x]/(x^3), twist it by two
commuting algebra maps and the derivation d/dx, and check the result.
"""

from bihom.constructions import derivation_bhnp, tensor_product
from bihom.families import gen_truncated_poly
from bihom.identities import check_bhnp_full, check_left_bihom_assoc


def show(title, op):
    print(title)
    for i, j, k, v in op.entries():
        print(f"  e{i} . e{j} -> {v} e{k}")


# alpha scales x by -1, beta leaves it alone, D is d/dx
mu, alpha, beta, D = gen_truncated_poly(3, -1, 1)
A = derivation_bhnp(mu, alpha, beta, D)
show("x . y = alpha(x) beta(y):", A.mu)
show("x * y = alpha(x) D(beta(y)):", A.star)

rep = check_bhnp_full(A)
print("BiHom-Novikov-Poisson:", rep.passed)

# the left BiHom-associative condition does not hold here; the witness says where
left = check_left_bihom_assoc(A)
print("left BiHom-associative:", left.passed)
for w in left.witnesses[:3]:
    print("  fails at basis triple", w.indices, "residual", [str(r) for r in w.residual])

# tensor products stay in the class; basis e_i (x) f_j becomes index i*n2 + j
B = derivation_bhnp(*gen_truncated_poly(2, -1, -1))
AB = tensor_product(A, B)
print(f"tensor product: dim {AB.dim}, BiHom-Novikov-Poisson: {check_bhnp_full(AB).passed}")
