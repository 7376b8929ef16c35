import math

import numpy as np
import pytest

from siegeljacobi import jacobi, numdiff, symplectic as sp
from siegeljacobi.errors import OutOfDomain
from siegeljacobi.jacobi import CSPoint, JacobiElement


def random_point(n, rng, z_scale=0.4, w_scale=0.4):
    phases = np.exp(2j * np.pi * rng.uniform(size=n))
    z = z_scale * np.sqrt(rng.uniform(size=n)) * phases
    w = sp.random_siegel_point(n, 0.5, rng)
    w = w * (w_scale * math.sqrt(rng.uniform()) / max(np.linalg.norm(w, 2), 1e-12))
    return CSPoint(z=z, W=w)


def random_element(n, rng, scale=0.4):
    alpha = scale * (rng.normal(size=n) + 1j * rng.normal(size=n)) / math.sqrt(2)
    return JacobiElement(
        g=sp.sp_random(n, scale, rng), alpha=alpha, t=float(rng.normal())
    )


def test_compose_with_identity():
    rng = np.random.default_rng(0)
    h = random_element(2, rng)
    e = jacobi.jacobi_identity_element(2)
    out = jacobi.jacobi_compose(h, e)
    assert np.allclose(out.alpha, h.alpha) and abs(out.t - h.t) < 1e-14
    assert np.allclose(out.g.a, h.g.a)


def test_compose_reduces_to_translation_law():
    # both rotation parts trivial: t adds the symplectic area of the alphas
    rng = np.random.default_rng(1)
    a1 = rng.normal(size=2) + 1j * rng.normal(size=2)
    a2 = rng.normal(size=2) + 1j * rng.normal(size=2)
    h1 = JacobiElement(g=sp.sp_identity(2), alpha=a1, t=0.2)
    h2 = JacobiElement(g=sp.sp_identity(2), alpha=a2, t=-0.1)
    out = jacobi.jacobi_compose(h1, h2)
    assert np.allclose(out.alpha, a1 + a2)
    expected_t = 0.1 + np.imag(np.sum(a1 * a2.conj()))
    assert abs(out.t - expected_t) < 1e-14


def test_compose_associativity():
    rng = np.random.default_rng(2)
    for _ in range(100):
        h1, h2, h3 = (random_element(2, rng) for _ in range(3))
        left = jacobi.jacobi_compose(jacobi.jacobi_compose(h1, h2), h3)
        right = jacobi.jacobi_compose(h1, jacobi.jacobi_compose(h2, h3))
        assert np.linalg.norm(left.alpha - right.alpha) < 1e-10
        assert abs(left.t - right.t) < 1e-10
        assert np.linalg.norm(left.g.a - right.g.a) < 1e-10


def test_inverse():
    e = jacobi.jacobi_identity_element(2)
    einv = jacobi.jacobi_inverse(e)
    assert np.allclose(einv.alpha, 0) and einv.t == 0
    # pure translation inverts to the opposite translation
    h = JacobiElement(g=sp.sp_identity(1), alpha=np.array([0.3 + 0.1j]), t=0.0)
    hinv = jacobi.jacobi_inverse(h)
    assert np.allclose(hinv.alpha, [-0.3 - 0.1j]) and hinv.t == 0
    rng = np.random.default_rng(3)
    h = random_element(2, rng)
    prod = jacobi.jacobi_compose(h, jacobi.jacobi_inverse(h))
    assert np.linalg.norm(prod.alpha) < 1e-11
    assert abs(prod.t) < 1e-11
    assert np.linalg.norm(prod.g.a - np.eye(2)) + np.linalg.norm(prod.g.b) < 1e-11


def test_act_identity_and_pure_translation():
    rng = np.random.default_rng(4)
    x = random_point(2, rng)
    e = jacobi.jacobi_identity_element(2)
    out = jacobi.act(e, x)
    assert np.allclose(out.z, x.z) and np.allclose(out.W, x.W)
    alpha = rng.normal(size=2) + 1j * rng.normal(size=2)
    h = JacobiElement(g=sp.sp_identity(2), alpha=alpha, t=0.0)
    out = jacobi.act(h, x)
    assert np.allclose(out.z, x.z + alpha - x.W @ alpha.conj())
    assert np.allclose(out.W, x.W)


def test_act_is_left_action():
    rng = np.random.default_rng(5)
    for _ in range(50):
        h1 = random_element(2, rng, 0.35)
        h2 = random_element(2, rng, 0.35)
        x = random_point(2, rng, 0.35, 0.35)
        two_step = jacobi.act(h1, jacobi.act(h2, x))
        one_step = jacobi.act(jacobi.jacobi_compose(h1, h2), x)
        assert np.linalg.norm(two_step.z - one_step.z) < 1e-10
        assert np.abs(two_step.W - one_step.W).max() < 1e-10


def test_lambda_cocycle_identity_and_collapse():
    rng = np.random.default_rng(6)
    x = random_point(2, rng)
    e = jacobi.jacobi_identity_element(2)
    data = jacobi.lambda_cocycle(e, x, 2)
    assert abs(data.lam - 1.0) < 1e-14
    assert np.allclose(data.z1, x.z) and np.allclose(data.W1, x.W)
    # x = 0, alpha = 0, b = 0: lambda collapses to det(a*)^{-k/2}
    g0 = sp.sp_random(2, 0.0, rng)
    h = JacobiElement(g=g0, alpha=np.zeros(2, dtype=complex), t=0.0)
    origin = CSPoint(z=np.zeros(2, dtype=complex), W=np.zeros((2, 2), dtype=complex))
    data = jacobi.lambda_cocycle(h, origin, 2)
    from siegeljacobi.matfun import detpow

    assert abs(data.lam - detpow(g0.a.conj().T, -1.0)) < 1e-12


def test_lambda_cocycle_multiplicative_and_unitary():
    rng = np.random.default_rng(7)
    for n, k in ((1, 2), (2, 4)):
        for _ in range(50):
            h1 = random_element(n, rng, 0.35)
            h2 = random_element(n, rng, 0.35)
            x = random_point(n, rng, 0.35, 0.35)
            lam12 = jacobi.lambda_full(jacobi.jacobi_compose(h1, h2), x, k)
            lam = jacobi.lambda_full(h1, jacobi.act(h2, x), k) * jacobi.lambda_full(
                h2, x, k
            )
            assert abs(lam - lam12) < 1e-9 * abs(lam12)
            data = jacobi.lambda_cocycle(h1, x, k)
            hx = CSPoint(z=data.z1, W=data.W1)
            kxx = jacobi.kernel(x, x, k).real
            assert (
                abs(abs(data.lam) ** 2 * jacobi.kernel(hx, hx, k).real - kxx)
                < 1e-9 * kxx
            )


def test_lambda_cocycle_image_consistency():
    # the image point equals the translate of the auxiliary vector route
    rng = np.random.default_rng(8)
    h = random_element(2, rng, 0.4)
    x = random_point(2, rng)
    data = jacobi.lambda_cocycle(h, x, 2)
    alt_z1 = data.y - data.W1 @ data.y.conj()
    assert np.linalg.norm(alt_z1 - data.z1) < 1e-11


def test_lambda_cocycle_ez_routes():
    rng = np.random.default_rng(9)
    e = jacobi.jacobi_identity_element(1)
    x = random_point(1, rng)
    assert abs(jacobi.lambda_cocycle_ez(e, x, 2) - 1.0) < 1e-14
    for _ in range(50):
        h = random_element(1, rng, 0.4)
        x = random_point(1, rng)
        lam = jacobi.lambda_cocycle(h, x, 2).lam
        lam_ez = jacobi.lambda_cocycle_ez(h, x, 2)  # checks (W+T)-route inside
        assert abs(lam - lam_ez) < 1e-10 * abs(lam)


def test_kernel_two_point_transformation():
    # unitarity off the diagonal: conj(lam(h,x)) lam(h,y) K(hx, hy) = K(x, y)
    rng = np.random.default_rng(20)
    for _ in range(20):
        h = random_element(2, rng, 0.35)
        x = random_point(2, rng, 0.35, 0.35)
        y = random_point(2, rng, 0.35, 0.35)
        dx = jacobi.lambda_cocycle(h, x, 4)
        dy = jacobi.lambda_cocycle(h, y, 4)
        lhs = (
            np.conj(dx.lam)
            * dy.lam
            * jacobi.kernel(CSPoint(z=dx.z1, W=dx.W1), CSPoint(z=dy.z1, W=dy.W1), 4)
        )
        rhs = jacobi.kernel(x, y, 4)
        assert abs(lhs - rhs) < 1e-10 * abs(rhs)


def test_kernel_values_and_symmetry():
    origin = CSPoint(z=np.zeros(2, dtype=complex), W=np.zeros((2, 2), dtype=complex))
    assert abs(jacobi.kernel(origin, origin, 4.0) - 1.0) < 1e-15
    rng = np.random.default_rng(10)
    x = random_point(2, rng)
    y = random_point(2, rng)
    assert abs(jacobi.kernel(x, y, 4.0) - np.conj(jacobi.kernel(y, x, 4.0))) < 1e-12
    # z components zero: reduces to the group-only kernel of the W parts
    x0 = CSPoint(z=np.zeros(2, dtype=complex), W=x.W)
    y0 = CSPoint(z=np.zeros(2, dtype=complex), W=y.W)
    assert abs(jacobi.kernel(x0, y0, 4.0) - sp.sp_kernel(x.W, y.W, 4.0)) < 1e-13


@pytest.mark.parametrize("n,k", [(1, 2), (1, 4), (2, 2), (2, 4)])
def test_kernel_gram_positive(n, k):
    rng = np.random.default_rng(11)
    pts = [random_point(n, rng) for _ in range(20)]
    gram = np.array([[jacobi.kernel(x, y, k) for y in pts] for x in pts])
    evmin = np.linalg.eigvalsh(0.5 * (gram + gram.conj().T)).min()
    assert evmin >= -1e-9 * np.linalg.norm(gram)


def test_kahler_potential():
    origin = CSPoint(z=np.zeros(2, dtype=complex), W=np.zeros((2, 2), dtype=complex))
    assert jacobi.kahler_potential(origin, 4.0) == 0.0
    rng = np.random.default_rng(12)
    x = random_point(2, rng)
    x0 = CSPoint(z=np.zeros(2, dtype=complex), W=x.W)
    from siegeljacobi.matfun import principal_logdet

    direct = -2.0 * principal_logdet(np.eye(2) - x.W @ x.W.conj()).real
    assert abs(jacobi.kahler_potential(x0, 4.0) - direct) < 1e-13
    logk = np.log(jacobi.kernel(x, x, 4.0))
    assert abs(jacobi.kahler_potential(x, 4.0) - logk.real) < 1e-11
    assert abs(logk.imag) < 1e-11


def test_kahler_form_origin_blocks():
    k = 4.0
    origin = CSPoint(z=np.zeros(2, dtype=complex), W=np.zeros((2, 2), dtype=complex))
    h = jacobi.kahler_form(origin, k)
    assert np.allclose(h[:2, :2], np.eye(2))
    assert np.allclose(h[:2, 2:], 0.0)
    # independent-coordinate weights: k/2 on diagonal pairs, k on mixed pairs
    assert np.allclose(np.diag(h[2:, 2:]), [k / 2, k, k / 2])


def test_kahler_form_n1_closed_coefficients():
    # one-variable closed form: z-block 1/(1-|w|^2), mixed block via
    # alpha0 = (z + zbar w)/(1 - |w|^2), w-block (k/2) m^2 + m |alpha0|^2
    rng = np.random.default_rng(13)
    k = 4.0
    z = complex(0.3 * (rng.normal() + 1j * rng.normal()))
    w = complex(0.4 * np.tanh(rng.normal()) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
    x = CSPoint(z=np.array([z]), W=np.array([[w]]))
    h = jacobi.kahler_form(x, k)
    m = 1.0 / (1 - abs(w) ** 2)
    alpha0 = (z + np.conj(z) * w) * m
    assert abs(h[0, 0] - m) < 1e-12
    assert abs(h[0, 1] - m * alpha0) < 1e-10
    assert abs(h[1, 1] - (k / 2 * m**2 + m * abs(alpha0) ** 2)) < 1e-10


def test_kahler_form_matches_finite_differences():
    rng = np.random.default_rng(14)
    for n in (1, 2):
        for _ in range(3):
            x = random_point(n, rng, 0.4, 0.5)
            closed = jacobi.kahler_form(x, 4.0)
            fd = numdiff.wirtinger_hessian(lambda p: jacobi.kahler_potential(p, 4.0), x)
            assert np.abs(closed - fd).max() < 1e-6
            assert np.linalg.eigvalsh(0.5 * (closed + closed.conj().T)).min() > 0


def test_kahler_form_invariance():
    rng = np.random.default_rng(15)
    x = random_point(2, rng, 0.3, 0.3)
    h = random_element(2, rng, 0.3)
    jac = numdiff.holomorphic_jacobian(lambda p: jacobi.act(h, p), x)
    pulled = jac.T @ jacobi.kahler_form(jacobi.act(h, x), 4.0) @ jac.conj()
    assert np.abs(pulled - jacobi.kahler_form(x, 4.0)).max() < 1e-6


def test_density_values_and_invariance():
    origin = CSPoint(z=np.zeros(1, dtype=complex), W=np.zeros((1, 1), dtype=complex))
    assert jacobi.density(origin) == 1.0
    half = CSPoint(z=np.zeros(1, dtype=complex), W=np.array([[0.5]], dtype=complex))
    assert abs(jacobi.density(half) - 0.75 ** (-3)) < 1e-12
    rng = np.random.default_rng(16)
    x = random_point(2, rng, 0.3, 0.3)
    h = random_element(2, rng, 0.3)
    jac = numdiff.holomorphic_jacobian(lambda p: jacobi.act(h, p), x)
    lhs = jacobi.density(jacobi.act(h, x)) * abs(np.linalg.det(jac)) ** 2
    assert abs(lhs - jacobi.density(x)) < 1e-6 * jacobi.density(x)


def test_measure_constants():
    c = jacobi.measure_constants(1, 6.0)
    assert abs(c.Lambda - (6.0 - 3) / (2 * math.pi**2)) < 1e-14
    assert abs(jacobi.measure_constants(1, 5.0).Lambda - 1 / math.pi**2) < 1e-14
    c2 = jacobi.measure_constants(2, 9.0)
    assert abs(c2.Lambda - math.pi ** (-2) / sp.jn(c2.p, 2)) < 1e-12 * c2.Lambda
    assert abs(c2.p - 1.0) < 1e-14
    with pytest.raises(OutOfDomain):
        jacobi.measure_constants(1, 3.0)


def test_pik_apply():
    rng = np.random.default_rng(17)
    x = random_point(1, rng, 0.3, 0.3)
    e = jacobi.jacobi_identity_element(1)

    def f(pt):
        return 1.0 + complex(pt.z[0]) + complex(pt.W[0, 0])

    assert abs(jacobi.pik_apply(e, 2, f, x) - f(x)) < 1e-14
    h = random_element(1, rng, 0.3)
    hinv = jacobi.jacobi_inverse(h)
    val = jacobi.pik_apply(h, 2, lambda pt: 1.0, x)
    assert abs(val - jacobi.lambda_full(hinv, x, 2)) < 1e-13
    # homomorphism at sampled points
    for _ in range(20):
        h1 = random_element(1, rng, 0.3)
        h2 = random_element(1, rng, 0.3)
        x = random_point(1, rng, 0.3, 0.3)
        lhs = jacobi.pik_apply(h1, 2, lambda p: jacobi.pik_apply(h2, 2, f, p), x)
        rhs = jacobi.pik_apply(jacobi.jacobi_compose(h1, h2), 2, f, x)
        assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))


def test_cs_point_json_roundtrip():
    rng = np.random.default_rng(18)
    x = random_point(2, rng)
    back = CSPoint.from_json(x.to_json())
    assert np.allclose(back.z, x.z) and np.allclose(back.W, x.W)
    h = random_element(2, rng)
    hback = JacobiElement.from_json(h.to_json())
    assert np.allclose(hback.alpha, h.alpha) and hback.t == h.t


def test_coords_roundtrip():
    rng = np.random.default_rng(19)
    x = random_point(3, rng)
    back = jacobi.cs_from_coords(jacobi.cs_coords(x), 3)
    assert np.allclose(back.z, x.z) and np.allclose(back.W, x.W)


def test_cs_point_validation():
    jacobi.cs_point([0.1 + 0.2j], [[0.3]])
    with pytest.raises(OutOfDomain):
        jacobi.cs_point([0.0], [[1.2]])
