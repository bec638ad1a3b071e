"""
Superderivations
================

Even and odd superderivations are the solutions of a homogeneous linear
system, one equation per basis pair and output coordinate.
"""

from superlie import (
    Matrix,
    all_nilpotent_space,
    der_bracket,
    derivation_space,
    inner_derivation,
    is_characteristically_nilpotent,
    is_superderivation,
    jordan_chevalley,
    leibniz_power_check,
    load_bundled,
)

a = load_bundled("ex26")
even, odd = derivation_space(a, 0), derivation_space(a, 1)
print(f"{a.name}: dim Der_0 = {len(even)}, dim Der_1 = {len(odd)}")
for d in odd:
    print(d.map, end="\n\n")

# odd inner maps need the parity twist y -> (-1)^{|x||y|} [y, x]
y1 = a.basis_vector("y1")
print("twisted inner map of y1 is a derivation:", is_superderivation(a, inner_derivation(a, y1), 1))

# brackets of derivations stay derivations; [d, d] = 2 d^2 for odd d
d = odd[0]
print("[d, d] == 2 d^2:", der_bracket(d, d).map == (d.map @ d.map) * 2)
print("binomial rule for d^4:", leibniz_power_check(a, d, 4))

# Jordan-Chevalley parts of a derivation are derivations
n2 = load_bundled("n2")
m = sum((x.map for x in derivation_space(n2, 0)), Matrix.zeros(n2.dim))
s, n = jordan_chevalley(m)
print("semisimple part is a derivation:", is_superderivation(n2, s, 0))

# every superderivation nilpotent
c = load_bundled("charnil8")
print(c.name, "characteristically nilpotent:", is_characteristically_nilpotent(c))
b = load_bundled("noncharnil9")
print(b.name, ":", is_characteristically_nilpotent(b), "| even part:", is_characteristically_nilpotent(b.even_part()))
print("span of Der(charnil8) all nilpotent:", all_nilpotent_space([x.map for x in derivation_space(c, 0) + derivation_space(c, 1)]))
