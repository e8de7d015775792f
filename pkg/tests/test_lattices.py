import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from k3mirror.lattices import (
    IntLattice,
    Isometry,
    bilinear,
    direct_sum,
    hyperbolic_extension,
    is_isometry,
    lattice_from_obj,
    lattice_to_obj,
    make_standard,
    orientation_sign_positive,
    root_reflection,
    signature,
)
from k3mirror.modular import monodromy_generators

U6 = make_standard("U_plus_Mn", 6)
GENS = monodromy_generators(6)


def eigen_signature(lat):
    """Independent float oracle for signatures."""
    eig = np.linalg.eigvalsh(np.array(lat.gram, dtype=float))
    return int((eig > 0).sum()), int((eig < 0).sum())


def test_u_plus_mn_gram_reference_form():
    assert U6.gram == ((0, 0, -1), (0, 12, 0), (-1, 0, 0))
    assert make_standard("U_plus_Mn", 1).gram == ((0, 0, -1), (0, 2, 0), (-1, 0, 0))


def test_rank_one_grams():
    assert make_standard("two_n", 1).gram == ((2,),)
    assert make_standard("minus_two_n", 6).gram == ((-12,),)


@pytest.mark.parametrize("name,n,expected", [
    ("U", None, (1, 1)),
    ("E8minus", None, (0, 8)),
    ("K3", None, (3, 19)),
    ("Mukai", None, (4, 20)),
    ("U_plus_Mn", 6, (2, 1)),
    ("two_n", 5, (1, 0)),
    # rational diagonalization of <-12> + U + E8(-1)^2, rank 19
    ("Mcheck_n", 6, (1, 18)),
])
def test_signatures(name, n, expected):
    lat = make_standard(name, n)
    assert signature(lat) == expected
    assert eigen_signature(lat) == expected
    assert lat.is_even


def test_standard_determinants():
    assert make_standard("U").determinant == -1
    assert make_standard("E8minus").determinant == 1
    assert abs(make_standard("K3").determinant) == 1
    assert abs(make_standard("Mukai").determinant) == 1
    assert U6.determinant == -12


def test_hyperbolic_convention_is_uniform():
    # every copy of U pairs the isotropic basis vectors to -1
    assert make_standard("U").gram == ((0, -1), (-1, 0))
    mukai = make_standard("Mukai")
    assert mukai.gram[0][1] == -1 and mukai.gram[0][0] == 0
    k3 = make_standard("K3")
    assert k3.gram[16][17] == -1  # first U block after the two E8 blocks


def test_bilinear_examples():
    u = make_standard("U")
    assert bilinear(u, (1, 0), (0, 1)) == -1
    twelve = make_standard("two_n", 6)
    assert bilinear(twelve, (1,), (1,)) == 12
    e_minus_f = (1, 0, -1)
    assert bilinear(U6, e_minus_f, e_minus_f) == 2


def test_bilinear_dimension_mismatch():
    with pytest.raises(ValueError):
        bilinear(U6, (1, 0), (0, 1, 0))


def test_direct_sum():
    u = make_standard("U")
    s = direct_sum(u, make_standard("two_n", 6))
    assert s.rank == 3
    assert direct_sum(u, u).determinant == 1
    # block determinant: det(U) * det(<12>) = (-1) * 12
    assert s.determinant == -12
    assert abs(s.determinant) == 12


def test_is_isometry_examples():
    assert is_isometry(U6, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    s1 = GENS["S1"].matrix
    # multiply out M^T Sigma M by hand as an independent check
    sigma = U6.gram
    prod = [[sum(s1[k][i] * sum(sigma[k][l] * s1[l][j] for l in range(3))
                 for k in range(3)) for j in range(3)] for i in range(3)]
    assert tuple(tuple(r) for r in prod) == sigma
    assert is_isometry(U6, s1)
    assert not is_isometry(U6, ((1, 0, 0), (0, 2, 0), (0, 0, 1)))


def test_orientation_examples():
    neg_u = Isometry(U6, ((-1, 0, 0), (0, 1, 0), (0, 0, -1)))
    assert orientation_sign_positive(U6, neg_u) == -1
    assert orientation_sign_positive(U6, GENS["S1"]) == 1
    assert orientation_sign_positive(U6, -Isometry.identity(U6)) == 1


def test_orientation_requires_witness():
    e8 = make_standard("E8minus")
    with pytest.raises(ValueError):
        orientation_sign_positive(e8, Isometry.identity(e8))


def test_orientation_multiplicative(rng):
    gens = [GENS["T"], GENS["S1"], GENS["S2"], -Isometry.identity(U6)]
    for _ in range(1000):
        g = rng.choice(gens)
        h = rng.choice(gens)
        for _ in range(rng.randint(0, 3)):
            g = g @ rng.choice(gens)
        assert (orientation_sign_positive(U6, g @ h)
                == orientation_sign_positive(U6, g) * orientation_sign_positive(U6, h))


def test_isometry_words_have_unit_det_and_isometric_inverse(rng):
    gens = [GENS["T"], GENS["S1"], GENS["S2"], -Isometry.identity(U6)]
    for _ in range(300):
        g = rng.choice(gens)
        for _ in range(rng.randint(0, 4)):
            g = g @ rng.choice(gens)
        assert g.determinant in (1, -1)
        assert is_isometry(U6, g.inverse().matrix)


@given(st.lists(st.integers(-50, 50), min_size=3, max_size=3),
       st.lists(st.integers(-50, 50), min_size=3, max_size=3),
       st.lists(st.integers(-50, 50), min_size=3, max_size=3))
def test_bilinear_symmetric_biadditive(x, y, z):
    x, y, z = tuple(x), tuple(y), tuple(z)
    assert bilinear(U6, x, y) == bilinear(U6, y, x)
    xz = tuple(a + b for a, b in zip(x, z))
    assert bilinear(U6, xz, y) == bilinear(U6, x, y) + bilinear(U6, z, y)


def test_isometry_constructor_rejects_non_isometry():
    with pytest.raises(ValueError):
        Isometry(U6, ((1, 0, 0), (0, 2, 0), (0, 0, 1)))


def test_make_standard_errors():
    with pytest.raises(ValueError):
        make_standard("nonsense")
    with pytest.raises(ValueError):
        make_standard("two_n", 0)
    with pytest.raises(ValueError):
        make_standard("U_plus_Mn")


def test_degenerate_gram_rejected():
    with pytest.raises(ValueError):
        IntLattice(((0,),))
    with pytest.raises(ValueError):
        IntLattice(((1, 2), (2, 4)))


def test_positive_basis_validated():
    with pytest.raises(ValueError):
        # not maximal: signature (2,1) needs two positive vectors
        IntLattice(((0, 0, -1), (0, 12, 0), (-1, 0, 0)), positive_basis=((0, 1, 0),))
    with pytest.raises(ValueError):
        # e + f has square -2
        IntLattice(((0, -1), (-1, 0)), positive_basis=((1, 1),))


def test_orientation_on_rank24_positive_four_space():
    mukai = make_standard("Mukai")
    assert len(mukai.positive_basis) == 4
    assert orientation_sign_positive(mukai, -Isometry.identity(mukai)) == 1
    flip = tuple(tuple((-1 if i == j and i < 2 else (1 if i == j else 0))
                       for j in range(24)) for i in range(24))
    swap = [[0] * 24 for _ in range(24)]
    swap[0][1] = swap[1][0] = 1
    for i in range(2, 24):
        swap[i][i] = 1
    assert orientation_sign_positive(mukai, Isometry(mukai, flip)) == -1
    assert orientation_sign_positive(mukai, Isometry(mukai, tuple(map(tuple, swap)))) == -1


def test_root_reflection_is_involution():
    lat = make_standard("E8minus")
    root = (1, 0, 0, 0, 0, 0, 0, 0)
    r = root_reflection(lat, root)
    assert (r @ r).matrix == Isometry.identity(lat).matrix
    assert r.apply(root) == tuple(-x for x in root)


def test_hyperbolic_extension_matches_u_plus_mn():
    built = hyperbolic_extension(make_standard("two_n", 6))
    assert built.gram == U6.gram
    assert built.positive_basis == ((1, 0, -1), (0, 1, 0))


def test_serialization_roundtrip():
    obj = lattice_to_obj(U6)
    assert obj["rank"] == 3
    assert obj["gram"] == ["0", "0", "-1", "0", "12", "0", "-1", "0", "0"]
    back = lattice_from_obj(obj)
    assert back.gram == U6.gram and back.label == U6.label


def test_bilinear_rational_inputs():
    val = bilinear(U6, (Fraction(1, 2), 0, 0), (0, 0, Fraction(1, 3)))
    assert val == Fraction(-1, 6)
