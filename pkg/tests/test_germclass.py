import random

import pytest

from plansing import linalg
from plansing.germclass import (DegreeError, GermClass, PlanarCoefficients, Reason, SINGULAR_TAGS, Tag,
                                classify, classify_detailed, classify_planar, count_orbits,
                                discriminant_report, fold_curve, local_degree, normal_form,
                                rank_of_linear_part, restricted_hessian, split_off_quadratic,
                                stratum_codim, to_standard_position, valid_signatures)
from plansing.jetalg import (JetError, JetMap, TruncPoly, identity_jet, jet_compose, jet_invert,
                             linear_jet, mpq, partial_derivative)
from plansing.parsing import parse_jet
from plansing.randomjets import random_diffeo, random_normal_form, random_poly


def J(text, n=None, order=4):
    return parse_jet(text, n=n, order=order)


def t1(order=4):
    return TruncPoly.variable(1, order, 0)


def witness_holds(f, sp):
    """left o f o right^{-1} reproduces the reduced jet."""
    return jet_compose(sp.left, jet_compose(f, sp.right_inverse)) == sp.reduced


# --- examples ----------------------------------------------------------------


@pytest.mark.parametrize("text, rank", [("(x, y^2)", 1), ("(x, y)", 2), ("(x^2+y^2, x*y)", 0)])
def test_rank_examples(text, rank):
    assert rank_of_linear_part(J(text)) == rank


def test_standard_position_already_reduced():
    f = J("(x, y^2 + z1^2)")
    sp = to_standard_position(f)
    assert sp.hessian_nullity == 0
    assert linalg.signature(sp.quad_form)[:2] == (2, 0)
    assert witness_holds(f, sp)


def test_standard_position_after_swaps():
    f = J("(x, y^3 + x*y)")
    swap = linear_jet([[0, 1], [1, 0]], 4)
    for g in (jet_compose(swap, f), jet_compose(f, swap), jet_compose(swap, jet_compose(f, swap))):
        sp = to_standard_position(g)
        assert sp.hessian_nullity == 1
        assert witness_holds(g, sp)
        assert classify_planar(sp.residual).tag is Tag.CUSP


def test_standard_position_splits_cross_term():
    f = J("(x, y^3 + x^2*y + z1^2 + z1*y^3)")
    sp = to_standard_position(f)
    assert sp.hessian_nullity == 1
    assert sp.residual == J("(x, y^3 + x^2*y)")
    assert sp.quad_form == [[2]]
    assert witness_holds(f, sp)


def test_split_trivial_fold():
    sp = split_off_quadratic(J("(x, y^2)"))
    assert sp.quad_form == [[2]]
    assert sp.reduced == J("(x, y^2)")


def test_split_completes_the_square():
    f = J("(x, z1^2 + z1*x^2 + y^3 + x*y)")
    sp = split_off_quadratic(f)
    assert sp.residual == J("(x, y^3 + x*y - x^4/4)")
    assert sp.quad_form == [[2]]
    z1, x = (TruncPoly.variable(3, 4, i) for i in (0, 1))
    assert sp.right_inverse[0] == z1 - x ** 2 / 2
    assert jet_compose(f, sp.right_inverse) == sp.reduced


def test_split_antidiagonal():
    sp = split_off_quadratic(J("(x, z1*z2 + y^3 + x^2*y)"))
    assert sp.residual == J("(x, y^3 + x^2*y)")
    assert linalg.signature(sp.quad_form)[:2] == (1, 1)


def test_split_rejects_nullity_two():
    with pytest.raises(JetError):
        split_off_quadratic(J("(x, y^3 + z1^3)"))


@pytest.mark.parametrize("text, tag", [
    ("(x, y^3+x*y)", Tag.CUSP),
    ("(x, y^3+x^2*y)", Tag.LIPS),
    ("(x, y^4+x*y^2+x*y)", Tag.SWALLOWTAIL),
    ("(x, y^3)", Tag.UNCLASSIFIED),
])
def test_classify_planar_examples(text, tag):
    assert classify_planar(J(text)).tag is tag


def test_lips_q_form():
    k = classify_planar(J("(x, y^3+x^2*y)")).coefficients
    assert k.q_form == 3


def test_classify_planar_requires_standard_position():
    with pytest.raises(JetError):
        classify_planar(J("(y, x)"))


@pytest.mark.parametrize("text, expected", [
    ("(x, y^2+z1^2-z2^2)", GermClass(Tag.FOLD, 1)),
    ("(x, y^3-x^2*y+z1^2)", GermClass(Tag.BEAK_TO_BEAK, 1)),
    ("(x+y, x-y)", GermClass(Tag.REGULAR)),
    ("(x^2, y^2)", GermClass(Tag.UNCLASSIFIED, unclassified_reason=Reason.RANK_ZERO)),
    ("(x, y^3+z1^3)", GermClass(Tag.UNCLASSIFIED, unclassified_reason=Reason.HESSIAN_NULLITY)),
    ("(x, y^3+3*x*y^2+3*x^2*y)", GermClass(Tag.UNCLASSIFIED, unclassified_reason=Reason.Q_FORM_ZERO)),
    ("(x, y^4+x^2*y)", GermClass(Tag.UNCLASSIFIED, unclassified_reason=Reason.OUTSIDE_TABLE)),
])
def test_classify_examples(text, expected):
    assert classify(J(text)) == expected


@pytest.mark.parametrize("tag, n, sig, text", [
    (Tag.SWALLOWTAIL, 0, 0, "(x, y^4+x*y)"),
    (Tag.FOLD, 1, 2, "(x, y^2+z1^2)"),
    (Tag.LIPS, 2, 0, "(x, y^3+x^2*y+z1^2-z2^2)"),
])
def test_normal_form_examples(tag, n, sig, text):
    assert normal_form(tag, n, sig, 4) == J(text, n=n)


def test_normal_form_rejects_bad_signature():
    with pytest.raises(JetError):
        normal_form(Tag.FOLD, 1, 1)
    with pytest.raises(JetError):
        normal_form(Tag.CUSP, 2, 3)


@pytest.mark.parametrize("n, tag, count", [(0, Tag.FOLD, 1), (2, Tag.FOLD, 2), (5, Tag.CUSP, 3),
                                           (0, Tag.REGULAR, 1)])
def test_count_orbits(n, tag, count):
    assert count_orbits(n, tag) == count


@pytest.mark.parametrize("tag, n", [(t, n) for t in SINGULAR_TAGS for n in range(6)])
def test_orbit_count_matches_signature_list(tag, n):
    assert count_orbits(n, tag) == len(valid_signatures(tag, n))


@pytest.mark.parametrize("tag, n, codim", [(Tag.FOLD, 0, 1), (Tag.SWALLOWTAIL, 0, 3), (Tag.CUSP, 3, 5),
                                           (Tag.REGULAR, 4, 0), (Tag.LIPS, 1, 4)])
def test_stratum_codim(tag, n, codim):
    assert stratum_codim(tag, n) == codim


@pytest.mark.parametrize("text, source, target", [
    ("(x, y^2)", 0, 0),
    ("(x, y^2+x^2)", 0, "x2"),
    ("(x, y^2+x*y)", "-x/2", "-x2/4"),
])
def test_fold_curve_examples(text, source, target):
    t = t1()
    values = {0: TruncPoly.zero(1, 4), "x2": t ** 2, "-x/2": -t / 2, "-x2/4": -(t ** 2) / 4}
    fc = fold_curve(J(text))
    assert fc.source_graph == values[source]
    assert fc.target_graph == values[target]
    assert fc.direction == (1, 0)


def test_fold_curve_rejects_cusp():
    with pytest.raises(JetError):
        fold_curve(J("(x, y^3+x*y)"))


@pytest.mark.parametrize("text, degrees", [
    ("(x, y^2)", {0}),
    ("(x, y^3+x^2*y)", {1, -1}),
    ("(x, y^4+x*y)", {0}),
    ("(x, y^3+x*y)", {1, -1}),
    ("(x, y^3-x^2*y)", {1, -1}),
    ("(x, y)", {1}),
])
def test_local_degree_examples(text, degrees):
    assert local_degree(J(text)) in degrees


def test_local_degree_rank_zero_is_an_error():
    with pytest.raises(DegreeError):
        local_degree(J("(x^2, y^2)"))


def test_discriminant_cusp():
    rep = discriminant_report(J("(x, y^3+x*y)"))
    t = t1()
    assert rep["image"] == (-3 * t ** 2, -2 * t ** 3)


def test_discriminant_swallowtail():
    rep = discriminant_report(J("(x, y^4+x*y)"))
    t = t1()
    assert rep["image"] == (-4 * t ** 3, -3 * t ** 4)


def test_discriminant_lips_is_a_point():
    rep = discriminant_report(J("(x, y^3+x^2*y)"))
    assert rep["kind"] == "point"
    assert rep["image"] == (0, 0)


def test_discriminant_beak_lines():
    rep = discriminant_report(J("(x, y^3-x^2*y)"))
    assert rep["kind"] == "node"
    # singular set 3y^2 - x^2 = 0: lines x = +-sqrt(3) y
    dirs = sorted(str(b["direction"][0]) for b in rep["branches"])
    assert dirs == ["-sqrt(12)", "sqrt(12)"] or dirs == ["-sqrt(3)", "sqrt(3)"]
    for b in rep["branches"]:
        u, v = b["direction"]
        uu, vv = u * u, v * v
        assert (3 * vv + -1 * uu).rational() == 0


def test_discriminant_rejects_unclassified():
    with pytest.raises(JetError):
        discriminant_report(J("(x, y^3)"))


# --- properties ---------------------------------------------------------------


def conjugate(f, rng, scale=3):
    phi = random_diffeo(rng, 2, f.order, scale)
    psi = random_diffeo(rng, f.source_dim, f.order, scale)
    return jet_compose(phi, jet_compose(f, jet_invert(psi)))


def test_left_right_invariance():
    rng = random.Random(5)
    for _ in range(60):
        tag, n, sig, f = random_normal_form(rng, n_max=3)
        g = conjugate(f, rng)
        assert classify(g) == GermClass(tag, sig), (tag, n, sig, g)


@pytest.mark.parametrize("tag, n", [(t, n) for t in SINGULAR_TAGS for n in range(5)])
def test_round_trip(tag, n):
    for sig in valid_signatures(tag, n):
        assert classify(normal_form(tag, n, sig, 4)) == GermClass(tag, sig)


def _random_rank_one(rng, n, order):
    """Rank-1 jet (l(x), f2) with random higher terms; often hits the strata."""
    m = n + 2
    f = random_normal_form(rng, n_max=n)[3] if rng.random() < 0.7 else None
    if f is None or f.source_dim != m:
        f = JetMap([TruncPoly.variable(m, order, n), random_poly(rng, m, order, 2, 2, 0.3)])
    f = JetMap([c.truncate(order) for c in f], m, order)
    extra = JetMap([random_poly(rng, m, order, 5, 2, 0.3), random_poly(rng, m, order, 5, 2, 0.3)])
    return f + extra


def test_four_jet_determinacy():
    rng = random.Random(17)
    for _ in range(200):
        n = rng.randint(0, 2)
        f = _random_rank_one(rng, n, 6)
        assert classify(f) == classify(f.truncate(4))


def test_witness_identity():
    rng = random.Random(23)
    for _ in range(80):
        _, n, _, f = random_normal_form(rng, n_max=2)
        g = conjugate(f, rng)
        sp = to_standard_position(g)
        assert witness_holds(g, sp)
        assert jet_compose(sp.right_inverse, sp.right) == identity_jet(g.source_dim, 4)


def test_fold_curve_postcondition():
    rng = random.Random(31)
    done = 0
    while done < 100:
        f = JetMap([TruncPoly.variable(2, 5, 0) + random_poly(rng, 2, 5, 2),
                    random_poly(rng, 2, 5, 2)])
        if classify(f).tag is not Tag.FOLD:
            continue
        sp = to_standard_position(f)
        fc = fold_curve(f)
        t = t1(5)
        dy = partial_derivative(sp.unsplit[1], 1)
        along = dy.substitute([t, fc.source_graph])
        assert along.truncate(4).is_zero()
        assert not fc.target_graph.coeff((0,)) and not fc.target_graph.coeff((1,))
        done += 1


def test_degree_consistency():
    rng = random.Random(41)
    for _ in range(60):
        tag = rng.choice(SINGULAR_TAGS)
        f = conjugate(normal_form(tag, 0, valid_signatures(tag, 0)[0], 4), rng, scale=2)
        deg = local_degree(f)
        assert (deg == 0) == (tag in (Tag.FOLD, Tag.SWALLOWTAIL))


def test_nullity_flag_matches_direct_rank():
    rng = random.Random(43)
    for _ in range(150):
        n = rng.randint(0, 2)
        m = n + 2
        f = JetMap([TruncPoly.variable(m, 4, n), random_poly(rng, m, 4, 2, 1, 0.25)])
        cls, _ = classify_detailed(f)
        kernel = [i for i in range(m) if i != n]
        nullity = len(kernel) - linalg.rank(restricted_hessian(f[1], kernel))
        assert (cls.unclassified_reason is Reason.HESSIAN_NULLITY) == (nullity >= 2)


def test_q_form_sign_invariant_under_planar_changes():
    """Lips and beak keep their q sign under changes that preserve standard position."""
    rng = random.Random(47)
    x, y = (TruncPoly.variable(2, 4, i) for i in range(2))
    for _ in range(100):
        base = J(rng.choice(["(x, y^3+x^2*y)", "(x, y^3-x^2*y)", "(x, 2*y^3+x*y^2+x^2*y)"]))
        sign = classify_planar(base).coefficients.q_form > 0
        # source change keeping x, target change keeping X up to the first axis
        h = random_poly(rng, 2, 4, 2, 2)
        u = rng.choice([1, -1, 2, mpq(1, 2)])
        psi = JetMap([x, u * y + rng.randint(-2, 2) * x + h])
        g = jet_compose(base, psi)
        k = rng.choice([1, -1, 3])
        phi = JetMap([x, k * y + random_poly(rng, 2, 4, 2, 2) * 0 + rng.randint(-2, 2) * x ** 2])
        g = jet_compose(phi, g)
        cls = classify(g)
        assert cls.tag in (Tag.LIPS, Tag.BEAK_TO_BEAK)
        assert (cls.tag is Tag.LIPS) == sign


def test_planar_coefficients_q_form():
    k = PlanarCoefficients.of(J("(x, 2*y^3 + 5*x*y^2 - x^2*y)")[1])
    assert (k.b3, k.d1, k.d2) == (2, 5, -1)
    assert k.q_form == 3 * 2 * -1 - 25
