"""The reproducing kernel and its multiplier, checked against brute force.

The overlap of two orbit vectors has a closed form; on one degree of freedom
it can be compared entry by entry with a dense truncated Fock-space
computation, which also fixes every sign and ordering convention in the
group action.
"""

import numpy as np

from siegeljacobi import fockoracle as fo, jacobi, symplectic as sp
from siegeljacobi.jacobi import CSPoint, JacobiElement

rng = np.random.default_rng(11)

x = CSPoint(z=np.array([0.2 + 0.1j]), W=np.array([[0.1 + 0.2j]]))
y = CSPoint(z=np.array([0.1 - 0.2j]), W=np.array([[0.25 + 0j]]))

print("closed-form kernel:   ", jacobi.kernel(x, y, 1.0))
print("truncated Fock oracle:", fo.oracle_kernel(x, y, 60))
print("difference:           ", abs(jacobi.kernel(x, y, 1.0) - fo.oracle_kernel(x, y, 60)))

print("\n== the orbit map: S(g) D(alpha) e_{z,w} = lambda e_{z1,w1} ==")
g = sp.sp_random(1, 0.3, rng)
alpha, z, w = 0.2 + 0.1j, 0.1 - 0.15j, 0.2 + 0.1j
res, data = fo.mm1_residual(g, alpha, z, w, 100)
print("multiplier lambda:", data.lam)
print("image point:      ", complex(data.z1[0]), complex(data.W1[0, 0]))
print("operator residual:", res)

print("\n== unitarity: |lambda|^2 K(hx, hx) = K(x, x) ==")
hx = CSPoint(z=data.z1, W=data.W1)
x0 = CSPoint(z=np.array([z]), W=np.array([[w]]))
lhs = abs(data.lam) ** 2 * jacobi.kernel(hx, hx, 1.0).real
print(lhs, "=", jacobi.kernel(x0, x0, 1.0).real)

print("\n== cocycle multiplicativity with the central phase ==")
h1 = JacobiElement(g=sp.sp_random(1, 0.3, rng), alpha=np.array([0.1 + 0.2j]), t=0.4)
h2 = JacobiElement(g=sp.sp_random(1, 0.3, rng), alpha=np.array([-0.2 + 0.1j]), t=-0.7)
lam = jacobi.lambda_full(h1, jacobi.act(h2, x), 2) * jacobi.lambda_full(h2, x, 2)
lam12 = jacobi.lambda_full(jacobi.jacobi_compose(h1, h2), x, 2)
print("product:", lam)
print("direct: ", lam12)
