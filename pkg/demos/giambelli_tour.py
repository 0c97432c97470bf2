"""Giambelli polynomials for OG(4, 12), and checking them inside the ring.

Run with ``python3 demos/giambelli_tour.py``.
"""

from ogschubert import TypedPartition
from ogschubert.raising import giambelli_c, giambelli_special, giambelli_tilde
from ogschubert.ring import RingSpec, SchubertExpr, evaluate_special

k, n = 2, 5  # OG(n + 1 - k, 2n + 2) = OG(4, 12)
ring = RingSpec(k, n)

lam = TypedPartition((3, 2, 2), k, 2)
print(f"lambda = {lam.to_text()}")
print("  special form:", giambelli_special(lam).to_tau_string())
print("  tilde form:  ", giambelli_tilde(lam).to_tau_string())
print("  c form:      ", giambelli_c(lam.parts, 2 * k).to_c_string())

# Folding the polynomial through the Pieri rule must give back the class.
value = evaluate_special(giambelli_special(lam), ring)
print("  evaluates to:", value)
assert value == SchubertExpr.basis_element(ring, lam)

# The two types of a partition with a part equal to k.
for typ in (1, 2):
    mu = TypedPartition((2, 1), k, typ)
    print(f"{mu.to_text():>16}: {giambelli_special(mu).to_tau_string()}")
