from fractions import Fraction

import pytest

from k3mirror.discriminant import in_kernel_star
from k3mirror.lattices import Isometry, is_isometry
from k3mirror.linalg import identity, mat_mul
from k3mirror.modular import (
    S1BAR,
    S2BAR,
    TBAR,
    FracLinear,
    F_map,
    R_map,
    SOMatrix,
    compose,
    fm_partner_count,
    fricke,
    gamma0_plus_generators,
    monodromy_generators,
    monodromy_index,
    table1_stabilizers,
    translation,
    u_plus_mn,
    verify_degree12,
)

U6 = u_plus_mn(6)
GENS = monodromy_generators(6)


def test_generators_plus6():
    t, w, g3 = gamma0_plus_generators(6, "plus6")
    assert (t.m, t.scale) == (((1, 1), (0, 1)), 1)
    # (0,-1;6,0) under the first-nonzero-entry-positive convention
    assert (w.m, w.scale) == (((0, 1), (-6, 0)), 6)
    assert (g3.m, g3.scale) == (((5, 2), (12, 5)), 1)
    for g in (t, w, g3):
        assert g.m[0][0] * g.m[1][1] - g.m[0][1] * g.m[1][0] == g.scale


def test_generators_plus():
    t, w, g3 = gamma0_plus_generators(6, "plus")
    assert (g3.m, g3.scale) == (((3, 1), (6, 3)), 3)
    assert (w.m, w.scale) == (((0, 1), (-6, 0)), 6)
    assert w == fricke(6)


def test_generators_other_n():
    gens = gamma0_plus_generators(15, "plus")
    assert len(gens) == 2
    assert gens[1] == fricke(15) and gens[1].scale == 15
    # non-squarefree level keeps the square part the matrix cannot absorb
    w4 = fricke(4)
    assert (w4.m, w4.scale) == (((0, 1), (-4, 0)), 4)


def test_generators_bad_variant():
    with pytest.raises(ValueError):
        gamma0_plus_generators(6, "minus")


def test_compose_examples():
    s1 = fricke(6)
    assert compose(s1, s1) == FracLinear.identity()
    t = translation()
    assert compose(t, t) == FracLinear(((1, 2), (0, 1)))
    s2 = table1_stabilizers()["S2"]
    ss = compose(s2, s1)
    # S2 S1 is the Atkin-Lehner representative (3,1;6,3)/sqrt(3); its square,
    # not the product itself, is the integer matrix (5,2;12,5)
    assert (ss.m, ss.scale) == (((3, 1), (6, 3)), 3)
    assert compose(ss, ss) == FracLinear(((5, 2), (12, 5)))


def test_fraclinear_normalization():
    g = FracLinear(((-6, 0), (0, -6)), 36)
    assert (g.m, g.scale) == (((1, 0), (0, 1)), 1)
    with pytest.raises(ValueError):
        FracLinear(((1, 0), (0, 1)), 2)   # det 1 != 2


def test_fraclinear_normal_form_properties(rng):
    gens = list(gamma0_plus_generators(6, "plus"))
    for _ in range(500):
        g = rng.choice(gens)
        for _ in range(rng.randint(0, 5)):
            g = compose(g, rng.choice(gens))
        (a, b), (c, d) = g.m
        assert a * d - b * c == g.scale
        first = next(x for row in g.m for x in row if x != 0)
        assert first > 0
        # minimality: no square factor of the scale divides the whole matrix
        for f in range(2, g.scale):
            if (f * f <= g.scale and g.scale % (f * f) == 0
                    and all(x % f == 0 for row in g.m for x in row)):
                raise AssertionError(f"scale not minimal for {g}")


def test_compose_is_associative(rng):
    gens = list(gamma0_plus_generators(6, "plus"))
    for _ in range(300):
        g, h, k = (rng.choice(gens) for _ in range(3))
        assert compose(compose(g, h), k) == compose(g, compose(h, k))


def test_r_map_frozen_values():
    stab = table1_stabilizers()
    assert R_map(stab["T"], 6).matrix == ((1, 0, 0), (1, 1, 0), (6, 12, 1))
    assert R_map(stab["S1"], 6).matrix == ((0, 0, 1), (0, -1, 0), (1, 0, 0))
    assert R_map(stab["S2"], 6).matrix == ((2, 12, 3), (-1, -5, -1), (3, 12, 2))


def test_table_matrices():
    assert GENS["T"].matrix == TBAR == ((1, 0, 0), (1, 1, 0), (6, 12, 1))
    assert GENS["S1"].matrix == S1BAR == ((0, 0, -1), (0, 1, 0), (-1, 0, 0))
    assert GENS["S2"].matrix == S2BAR == ((-2, -12, -3), (1, 5, 1), (-3, -12, -2))
    assert GENS["T"].determinant == 1
    assert GENS["S1"].determinant == -1
    assert GENS["S2"].determinant == -1
    s1sq = GENS["S1"] @ GENS["S1"]
    assert s1sq.matrix == identity(3)


def test_table_requires_n6():
    with pytest.raises(ValueError):
        monodromy_generators(5)


def test_f_map():
    assert F_map(GENS["S1"]).matrix == R_map(table1_stabilizers()["S1"], 6).matrix
    assert F_map(GENS["T"]).matrix == tuple(tuple(Fraction(x) for x in r) for r in TBAR)
    neg = -Isometry.identity(U6)
    assert F_map(neg).matrix == tuple(tuple(Fraction(x) for x in r) for r in identity(3))


def test_f_map_lands_in_special_orthogonal(rng):
    gens = [GENS["T"], GENS["S1"], GENS["S2"], -Isometry.identity(U6)]
    for _ in range(100):
        g = rng.choice(gens)
        for _ in range(rng.randint(0, 3)):
            g = g @ rng.choice(gens)
        assert F_map(g).determinant == 1


def test_f_map_kernel_is_plus_minus_identity(rng):
    gens = [GENS["T"], GENS["S1"], GENS["S2"], -Isometry.identity(U6)]
    ident = tuple(tuple(Fraction(x) for x in r) for r in identity(3))
    for _ in range(200):
        g = rng.choice(gens)
        for _ in range(rng.randint(0, 4)):
            g = g @ rng.choice(gens)
        if F_map(g).matrix == ident:
            assert g.matrix in (identity(3), tuple(tuple(-x for x in r) for r in identity(3)))


def test_fm_partner_count():
    assert fm_partner_count(12) == 2
    assert fm_partner_count(2) == 1
    assert fm_partner_count(60) == 4
    with pytest.raises(ValueError):
        fm_partner_count(7)
    with pytest.raises(ValueError):
        fm_partner_count(0)
    with pytest.raises(ValueError):
        fm_partner_count(-4)


def test_monodromy_index():
    assert monodromy_index(6) == 2
    assert monodromy_index(2) == 1
    assert monodromy_index(30) == 4
    assert monodromy_index(1) == 1


def test_index_equals_partner_count_desk_scale():
    for n in range(2, 201):
        assert monodromy_index(n) == fm_partner_count(2 * n)


def test_r_is_antihomomorphism(rng):
    gens = list(gamma0_plus_generators(6, "plus"))
    for _ in range(1000):
        g = rng.choice(gens)
        h = rng.choice(gens)
        for _ in range(rng.randint(0, 3)):
            h = compose(h, rng.choice(gens))
        lhs = R_map(compose(g, h), 6).matrix
        rhs = mat_mul(R_map(h, 6).matrix, R_map(g, 6).matrix)
        assert lhs == rhs


def test_r_image_preserves_form_with_unit_positive_det(rng):
    gens = list(gamma0_plus_generators(6, "plus"))
    for _ in range(300):
        g = rng.choice(gens)
        for _ in range(rng.randint(0, 4)):
            g = compose(g, rng.choice(gens))
        img = R_map(g, 6)
        assert img.determinant == 1
        assert is_isometry(U6, tuple(tuple(int(x) for x in row) for row in img.matrix))


def test_kernel_membership_conjugation_invariant(rng):
    s1s2_sq = (GENS["S1"] @ GENS["S2"]) @ (GENS["S1"] @ GENS["S2"])
    kernel = [GENS["T"], GENS["S1"], s1s2_sq]
    others = [GENS["S2"], -Isometry.identity(U6)]
    for _ in range(200):
        k = rng.choice(kernel)
        g = rng.choice(kernel + others)
        conj = k @ g @ k.inverse()
        assert in_kernel_star(U6, conj) == in_kernel_star(U6, g)


def test_so_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        SOMatrix(U6, ((1, 0, 0), (0, 2, 0), (0, 0, 1)))


def test_verify_degree12_report():
    report = verify_degree12(6)
    assert report.passed
    ids = [c.check_id for c in report.checks]
    assert ids == ["table-matrices", "discriminant-action", "composite-square",
                   "kernel-generators", "orientation", "glue-dichotomy"]
    by_id = {c.check_id: c for c in report.checks}
    assert by_id["discriminant-action"].details["scalars"] == {"T": 1, "S1": 1, "S2": 5}
    assert by_id["composite-square"].details["S2S1_squared"]["m"] == [["5", "2"], ["12", "5"]]
    obj = report.to_obj()
    assert obj["passed"] and len(obj["checks"]) == 6


def test_verify_requires_n6():
    with pytest.raises(ValueError):
        verify_degree12(4)
