"""Factor symplectic group elements and move between coordinate systems.

A group element is a block pair (a, b).  Two factorizations matter here:
the triangular (Gauss) one, whose coordinate Y = b conj(a)^-1 lives in the
bounded domain, and the polar (Cartan) one, which splits the element into a
hyperbolic part exp([[0, Z], [Zbar, 0]]) and a unitary rotation.
"""

import numpy as np

from siegeljacobi import symplectic as sp

rng = np.random.default_rng(7)

print("== a random 3x3-block element ==")
g = sp.sp_random(3, 0.6, rng)
print("membership residual:", sp.membership_residual(g.a, g.b))

print("\n== Gauss factorization ==")
f = sp.gauss_decompose(g)
re = sp.gauss_reassemble(f)
print("Y symmetric?      ", np.abs(f.y - f.y.T).max())
print("1 - Y Y* > 0?     ", np.linalg.eigvalsh(np.eye(3) - f.y @ f.y.conj().T).min())
print("reassembly error:  ", np.abs(re.a - g.a).max() + np.abs(re.b - g.b).max())

print("\n== Cartan factorization ==")
c = sp.cartan_decompose(g)
re = sp.cartan_synthesize(c.z, c.v)
print("v unitary?         ", np.abs(c.v @ c.v.conj().T - np.eye(3)).max())
print("reassembly error:  ", np.abs(re.a - g.a).max() + np.abs(re.b - g.b).max())

print("\n== generator <-> domain point ==")
z = sp.random_symmetric(2, 0.5, rng)
w = sp.w_of_z(z)
print("round trip error:  ", np.abs(sp.z_of_w(w) - z).max())
print("scalar check: w_of_z(r) = tanh(r):",
      complex(sp.w_of_z(np.array([[0.8]], dtype=complex))[0, 0]), "=", np.tanh(0.8))

print("\n== the action on the domain composes ==")
g1 = sp.sp_random(2, 0.5, rng)
g2 = sp.sp_random(2, 0.5, rng)
w = sp.random_siegel_point(2, 0.4, rng)
step = sp.moebius(g1, sp.moebius(g2, w))
direct = sp.moebius(sp.sp_compose(g1, g2), w)
print("left-action residual:", np.abs(step - direct).max())

print("\n== two-point composition law ==")
w1 = sp.random_siegel_point(2, 0.35, rng)
w2 = sp.random_siegel_point(2, 0.35, rng)
w3, v, detv = sp.ball_compose(w1, w2)
prod = sp.sp_compose(sp.sp_of(w1), sp.sp_of(w2))
print("closed form vs raw product:", np.abs(w3 - sp.gauss_decompose(prod).y).max())
print("|det v| =", abs(detv))
