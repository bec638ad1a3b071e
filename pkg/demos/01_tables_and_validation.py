"""
Reading a multiplication table and checking it
===============================================

A table lists brackets of basis vectors; everything else follows from super
skew-symmetry.  validate() checks grading, skew-symmetry and the graded
Jacobi identity on every basis triple.
"""

from superlie import load_bundled, parse_text, serialize, validate

a = load_bundled("ex26")
print(a)
print(serialize(a))

# the mirror of a mixed bracket flips sign, odd-odd brackets are symmetric
y1, x2, y2 = (a.basis_vector(s) for s in ("y1", "x2", "y2"))
print("[y1, x2] =", a.format_vector(a.bracket(y1, x2)))
print("[y2, y1] =", a.format_vector(a.bracket(y2, y1)))
print("valid:", validate(a).ok)

# a three-dimensional even table that breaks Jacobi
broken = parse_text(
    """algebra broken
even x1 x2 x3
odd
[x1,x2] = x2
[x1,x3] = x3
[x2,x3] = x1
"""
).algebra
report = validate(broken)
print("broken table valid:", report.ok, "violating triples:", report.jacobi_violations)
