"""
When does the commutator bracket give a BiHom-Poisson algebra?
==============================================================

For invertible structure maps the bracket

    [x, y] = x*y - (alpha^-1 beta)(y) * (alpha beta^-1)(x)

turns a BiHom-Novikov-Poisson algebra into a BiHom-Poisson algebra exactly
when the algebra is left BiHom-associative.  Both sides are checked
independently here.
"""

from bihom.constructions import admissibility_test, bracket_pushforward_checks, derivation_bhnp
from bihom.families import gen_nilpotent, gen_truncated_poly
from bihom.linalg import diag

cases = {
    "x Q[x]/(x^3), scales (-1, -1)": gen_nilpotent(2, -1, -1),
    "Q[x]/(x^3), scales (-1, 1)": gen_truncated_poly(3, -1, 1),
    "Q[x]/(x^4), scales (2, 3)": gen_truncated_poly(4, 2, 3),
}
for name, parts in cases.items():
    rep = admissibility_test(derivation_bhnp(*parts))
    print(f"{name}: left BiHom-associative {rep.left_bihom_assoc.passed}, "
          f"bracket is BiHom-Poisson {rep.bihom_poisson.passed}")

# constructions carry the bracket along by explicit formulas
N2 = derivation_bhnp(*gen_nilpotent(2, -1, -1))
for kind, kw in {
    "yau_twist": {"ta": diag(2, 4), "tb": diag(-1, 1)},
    "perturb_thm1": {"a": [0, 1]},
    "perturb_thm2": {"a": [1, 1]},
    "tensor": {"other": N2},
}.items():
    print(f"bracket of {kind} output matches its formula:", bracket_pushforward_checks(N2, kind, **kw).passed)
