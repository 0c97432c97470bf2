"""From typed partitions to signed permutations, tableaux and Schubert polynomials.

Run with ``python3 demos/signed_permutations.py``.
"""

from ogschubert import TypedPartition
from ogschubert.eta import eta_polynomial
from ogschubert.symfunc import VarConfig, family
from ogschubert.weyl import (
    billey_haiman_D,
    kl_tableaux,
    partition_perm,
    perm_partition,
    reduced_words,
    stanley_coefficients,
    stanley_E,
)

lam = TypedPartition((7, 4, 3, 2), 3, 2)
w = partition_perm(lam)
print(f"{lam.to_text()} -> {w.to_text()}  (length {w.length()})")
print("and back:", perm_partition(w, 3).to_text())

# A 0-Grassmannian element has a single unimodal tableau of its own shape.
w0 = partition_perm(TypedPartition((6, 5, 2), 0, 0))
for T in kl_tableaux(w0):
    print(f"tableau {T.to_text()}  m = {T.m}")
cfg = VarConfig.for_degree(13, 0)
print("E_w == P_(6,5,2):", stanley_E(w0, cfg) == family("P", (6, 5, 2), cfg))

# A smaller element, where the reduced words are few enough to list.
mu = TypedPartition((3, 1), 1, 1)
v = partition_perm(mu)
print(f"\n{mu.to_text()} -> {v.to_text()}")
print("reduced words:", ["".join(map(str, x)) for x in reduced_words(v)])
print("Stanley coefficients:", stanley_coefficients(v))
print("D_w == H_lambda:", billey_haiman_D(v, k=1) == eta_polynomial(mu))
