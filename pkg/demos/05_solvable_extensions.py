"""
Maximal solvable extensions
===========================
"""

from superlie import (
    NotMaximalRank,
    check_odd_square_collapse,
    load_bundled,
    maximal_solvable_extension,
    model_from_algebra,
    serialize,
    verify_model,
)
from superlie.errors import PreconditionNotMet
from superlie.extension import same_torus_span

ext = maximal_solvable_extension(load_bundled("n1"), "thm55")
print(serialize(ext.algebra))
print("equals the bundled five-dimensional table:", ext.algebra == load_bundled("thm55"))

ext2 = maximal_solvable_extension(load_bundled("n2"))
q01, q02 = ext2.q_split
print(f"n2 extension: dim Q0^1 = {q01.dim}, dim Q0^2 = {q02.dim}")
print("same torus span as ex54:", same_torus_span(ext2, model_from_algebra(load_bundled("ex54"))))
for key, passed, detail in verify_model(ext2).checks:
    print(f"  {'ok ' if passed else 'BAD'} {key} {detail}")

try:
    maximal_solvable_extension(load_bundled("n4"))
except NotMaximalRank as exc:
    print("n4:", exc)

# the four-dimensional counterexample breaks several of the checks
print("ex33 failures:", verify_model(model_from_algebra(load_bundled("ex33"))).failed())

for name in ("n1", "squares4"):
    try:
        print(name, check_odd_square_collapse(load_bundled(name)))
    except PreconditionNotMet as exc:
        print(name, "precondition:", exc)
