"""
Maximal tori and maximal rank
=============================

Diagonal derivations are the solutions of the root system; the torus search
then looks for semisimple derivations commuting with what it has so far.
"""

import random

from superlie import (
    build_root_system,
    change_basis,
    generator_space,
    is_maximal_rank,
    load_bundled,
    maximal_torus,
    weight_decomposition,
)
from superlie.linalg import Matrix

for name in ("n1", "n2", "n4", "charnil8"):
    a = load_bundled(name)
    rs = build_root_system(a)
    t = maximal_torus(a)
    gs = generator_space(a)
    print(f"{name}: rank {rs.rank}, torus dim {t.dim}, generators {gs.k}|{gs.s}, maximal rank {is_maximal_rank(a)}")

n1 = load_bundled("n1")
print("\n".join(build_root_system(n1).equations()))
for m in maximal_torus(n1).in_original_basis():
    print(m.diagonal())

# weight spaces of n2 under its torus
t = maximal_torus(load_bundled("n2"))
for weight, space in weight_decomposition(t):
    print(weight, [t.algebra.labels[i] for i in space.pivots])

# in a scrambled basis the diagonal torus shrinks, and the search recovers it
rng = random.Random(3)
n2 = load_bundled("n2")
pe = Matrix([[1, rng.randint(-2, 2)], [0, 1]])
po = Matrix([[1, 0, 0], [rng.randint(-2, 2), 1, 0], [1, 1, 1]])
moved = change_basis(n2, pe, po, "n2_moved")
print("diagonal torus in the moved basis:", 5 - build_root_system(moved).rank, "| maximal torus:", maximal_torus(moved).dim)
