from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegeljacobi import diffops as d
from siegeljacobi.diffops import MPoly, PolyDiffOp
from siegeljacobi.errors import VariableMismatch

VARS = ("z", "w")


def poly(powers, c=1):
    return MPoly.monomial(VARS, powers, c)


def ddz(coeff=None):
    coeff = coeff if coeff is not None else MPoly.constant(VARS, 1)
    return PolyDiffOp(VARS, first={"z": coeff})


def test_op_apply_basics():
    dz = ddz()
    assert d.op_apply(dz, poly({"z": 2})).text() == "2*z"
    mult_z = PolyDiffOp(VARS, poly({"z": 1}))
    assert d.op_apply(mult_z, MPoly.constant(VARS, 1)).text() == "z"
    euler = PolyDiffOp(VARS, first={"z": poly({"z": 1})})
    assert d.op_apply(euler, poly({"z": 5})).text() == "5*z^5"


def test_op_apply_variable_mismatch():
    other = MPoly.constant(("u",), 1)
    with pytest.raises(VariableMismatch):
        d.op_apply(ddz(), other)


def test_commutator_basics():
    dz = ddz()
    mult_z = PolyDiffOp(VARS, poly({"z": 1}))
    assert d.op_commutator(dz, mult_z).text() == "1"
    dw = PolyDiffOp(VARS, first={"w": MPoly.constant(VARS, 1)})
    w2dw = PolyDiffOp(VARS, first={"w": poly({"w": 2})})
    assert d.op_commutator(dw, w2dw).text() == "(2*w)*d/dw"


def _random_op(draw_coeff, rng_exps):
    scalar = MPoly(VARS, {e: draw_coeff() for e in rng_exps})
    first = {
        "z": MPoly(VARS, {e: draw_coeff() for e in rng_exps}),
        "w": MPoly(VARS, {e: draw_coeff() for e in rng_exps}),
    }
    return PolyDiffOp(VARS, scalar, first)


small_coeff = st.tuples(
    st.integers(min_value=-3, max_value=3), st.integers(min_value=-3, max_value=3)
).map(lambda t: (Fraction(t[0]), Fraction(t[1])))

exp_pair = st.tuples(
    st.integers(min_value=0, max_value=2), st.integers(min_value=0, max_value=2)
)

op_strategy = st.builds(
    lambda s, fz, fw: PolyDiffOp(VARS, MPoly(VARS, s), {"z": MPoly(VARS, fz), "w": MPoly(VARS, fw)}),
    st.dictionaries(exp_pair, small_coeff, max_size=3),
    st.dictionaries(exp_pair, small_coeff, max_size=3),
    st.dictionaries(exp_pair, small_coeff, max_size=3),
)


@given(op_strategy, op_strategy, op_strategy)
@settings(max_examples=50, deadline=None)
def test_commutator_jacobi_identity(d1, d2, d3):
    total = (
        d.op_commutator(d1, d.op_commutator(d2, d3))
        + d.op_commutator(d2, d.op_commutator(d3, d1))
        + d.op_commutator(d3, d.op_commutator(d1, d2))
    )
    assert total.is_zero()


def test_sp_generators_scalar_collapse():
    g = d.sp_generators_diff(1)
    assert g["Km[1,1]"].text() == "(1)*d/dw_1_1"
    assert g["K0[1,1]"].text() == "1/4*kappa + (w_1_1)*d/dw_1_1"
    assert g["Kp[1,1]"].text() == "1/2*kappa*w_1_1 + (w_1_1^2)*d/dw_1_1"
    comm = d.op_commutator(g["Km[1,1]"], g["Kp[1,1]"])
    two_k0 = g["K0[1,1]"].scale((Fraction(2), Fraction(0)))
    assert (comm - two_k0).is_zero()


def test_jacobi_generators_scalar_relations():
    g = d.jacobi_generators_diff(1)
    one = PolyDiffOp(g["a1"].variables, MPoly.constant(g["a1"].variables, 1))
    assert (d.op_commutator(g["a1"], g["ap1"]) - one).is_zero()
    # [a, Kp] = ap at one degree of freedom
    assert (d.op_commutator(g["a1"], g["Kp[1,1]"]) - g["ap1"]).is_zero()


def test_jacobi_generators_n2_mixed_bracket():
    g = d.jacobi_generators_diff(2)
    # [K0[i,j], ap_k] = (1/2) delta_jk ap_i
    comm = d.op_commutator(g["K0[1,2]"], g["ap2"])
    half_ap1 = g["ap1"].scale((Fraction(1, 2), Fraction(0)))
    assert (comm - half_ap1).is_zero()
    assert d.op_commutator(g["K0[1,2]"], g["ap1"]).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_structure_constants_close(n):
    rep = d.verify_structure_constants(d.jacobi_generators_diff(n), d.jacobi_table(n))
    assert rep["pass"] and rep["sigma"] == 1
    rep_sp = d.verify_structure_constants(d.sp_generators_diff(n), d.sp_table(n))
    assert rep_sp["pass"] and rep_sp["sigma"] == 1


def test_single_partial_convention_fails_beyond_n1():
    rep = d.verify_structure_constants(
        d.jacobi_generators_diff(2, convention="single"), d.jacobi_table(2)
    )
    assert not rep["pass"]


def test_corrupted_generator_is_pinpointed():
    gens = d.jacobi_generators_diff(1)
    bad = dict(gens)
    bad["Kp[1,1]"] = gens["Kp[1,1]"].scale((Fraction(2), Fraction(0)))
    rep = d.verify_structure_constants(bad, d.jacobi_table(1))
    assert not rep["pass"]
    failing_pairs = {frozenset(f["pair"]) for f in rep["failures"]}
    assert all("Kp[1,1]" in pair for pair in failing_pairs)


def test_kappa_appears_linearly_in_scalars_only():
    gens = d.jacobi_generators_diff(2)
    for label, op in gens.items():
        assert op.scalar.degree_in("kappa") <= 1
        for coeff in op.first.values():
            assert coeff.degree_in("kappa") == 0
        if label.startswith(("a", "ap", "Km")):
            assert op.scalar.degree_in("kappa") == 0


def test_commutators_stay_in_span():
    # every bracket of realized generators is a combination of generators
    # plus a constant: check by re-deriving coefficients from the table
    n = 2
    gens = d.jacobi_generators_diff(n)
    table = d.jacobi_table(n)
    variables = gens["a1"].variables
    one = PolyDiffOp(variables, MPoly.constant(variables, 1))
    labels = [l for l in table.labels if l != "1"]
    for i, l1 in enumerate(labels):
        for l2 in labels[i + 1 :]:
            comm = d.op_commutator(gens[l1], gens[l2])
            expected = PolyDiffOp(variables)
            for c, lab in table.bracket(l1, l2):
                target = one if lab == "1" else gens[lab]
                expected = expected + target.scale((Fraction(c), Fraction(0)))
            assert (comm - expected).is_zero()


def test_tables_satisfy_jacobi_identity():
    assert d.jacobi_table(1).check_jacobi()
    assert d.jacobi_table(2).check_jacobi()
    assert d.sp_table(3).check_jacobi()


def test_mpoly_text_and_eval():
    p = poly({"z": 2}) + poly({"w": 1}, Fraction(1, 2)) + MPoly.constant(VARS, (Fraction(0), Fraction(1)))
    assert p.text() == "z^2 + 1/2*w + 1*i"
    val = p.eval({"z": 2.0, "w": 4.0})
    assert abs(val - (4 + 2 + 1j)) < 1e-15
