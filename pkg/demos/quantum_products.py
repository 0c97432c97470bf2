"""Quantum products in QH(OG(2, 8)) and the K = 2 special products.

Run with ``python3 demos/quantum_products.py``.
"""

from ogschubert.ring import RingSpec, SchubertExpr, basis, multiply

ring = RingSpec(2, 3, "quantum")  # OG(2, 8); deg q = n + k = 5
print(f"{len(basis(ring))} Schubert classes in {ring}")

tau = lambda parts, typ=None: SchubertExpr.basis_element(ring, parts, typ)

print("tau_1 * tau_1      =", multiply(tau((1,)), tau((1,))))
print("tau_2 * tau'_2     =", multiply(tau((2,), 1), tau((2,), 2)))
print("tau_3 * tau_(3,1)  =", multiply(tau((3,)), tau((3, 1))))
print("tau_(5,2)^2        =", multiply(tau((5, 2)), tau((5, 2))))

# K = 2: OG(n, 2n + 2) carries two deformation parameters q1 and q2.
for n in (1, 2, 3):
    r = RingSpec(1, n, "quantum")
    one = SchubertExpr.basis_element(r, (1,) * n, 1)
    c1 = SchubertExpr.basis_element(r, (1,), 1)
    print(f"n={n}: tau_1 * tau_(1^{n}) =", multiply(c1, one))
