"""
Series, nilpotency and nilradicals
==================================
"""

from superlie import (
    c_sequences,
    central_series,
    derived_series,
    describe_subspace,
    generator_space,
    is_nilpotent,
    load_bundled,
    nilindex,
    nilradical_solvable,
    square,
)

n4 = load_bundled("n4")
print("central series dims of", n4.name, central_series(n4).dims)
print("nilindex:", nilindex(n4))
gs = generator_space(n4)
print(f"generators: {gs.k} even, {gs.s} odd ->", [n4.labels[i] for i in gs.indices])

# the C-sequences split the lower central series by parity
n2 = load_bundled("n2")
c0, c1 = c_sequences(n2)
print("C(L0) dims", c0.dims, " C(L1) dims", c1.dims)

# solvable but not nilpotent: the derived series dies, the central one stalls
r = load_bundled("ex26")
print(r.name, "nilpotent?", is_nilpotent(r), " derived dims", derived_series(r).dims)
print("square    ", describe_subspace(r, square(r)))
print("nilradical", describe_subspace(r, nilradical_solvable(r)))

r = load_bundled("ex33")
print(r.name, "nilradical", describe_subspace(r, nilradical_solvable(r)))
