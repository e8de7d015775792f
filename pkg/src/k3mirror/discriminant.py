"""Discriminant groups A_L = L*/L with their Q/2Z quadratic forms, the kernel
subgroup of isometries acting trivially on A_L, brute-force isometry counts
for cyclic discriminants, and finite-index overlattice gluing.

Conventions: for an even lattice the discriminant quadratic form is
q(x) = (x,x) taken mod 2Z with representatives in [0,2); the pairing
b(x,y) = (x,y) mod Z with representatives in [0,1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import ZZ, Matrix as _SymMatrix
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from .lattices import IntLattice, Isometry, bilinear, direct_sum, make_standard, signature
from .linalg import (
    Mat,
    Vec,
    block_diag,
    freeze_mat,
    identity,
    inverse,
    is_integral,
    mat_mul,
    mat_vec,
)


def _snf_with_left_transform(gram: Mat):
    """Return (factors, left, right) with left*gram*right diagonal positive,
    factors in ascending divisibility order."""
    m = DomainMatrix.from_Matrix(_SymMatrix([list(r) for r in gram])).convert_to(ZZ)
    snf, left, right = smith_normal_decomp(m)
    d = [int(snf.to_Matrix()[i, i]) for i in range(len(gram))]
    lmat = [[int(x) for x in row] for row in left.to_Matrix().tolist()]
    rmat = [[int(x) for x in row] for row in right.to_Matrix().tolist()]
    for i, di in enumerate(d):
        if di < 0:
            d[i] = -di
            lmat[i] = [-x for x in lmat[i]]
    return tuple(d), freeze_mat(lmat), freeze_mat(rmat)


@dataclass(frozen=True)
class DiscriminantGroup:
    """A_L = L*/L presented by invariant factors d_1 | d_2 | ... (each > 1).

    ``generator_lifts`` are rational vectors in L-coordinates whose classes
    generate the cyclic factors; ``qvals`` are q(g_i) in [0,2) and ``bvals``
    the pairings b(g_i, g_j) in [0,1).
    """

    lattice: IntLattice
    invariant_factors: tuple[int, ...]
    generator_lifts: tuple[Vec, ...]
    qvals: tuple[Fraction, ...]
    bvals: Mat
    left_transform: Mat          # U with U * gram * V diagonal; used for class coords
    all_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def class_of(self, x: Vec) -> tuple[int, ...]:
        """Coordinates of the class of x in the cyclic factors (x must lie in L*)."""
        gx = mat_vec(self.lattice.gram, tuple(Fraction(c) for c in x))
        if not is_integral(gx):
            raise ValueError("vector is not in the dual lattice")
        m = tuple(int(c) for c in gx)
        coords = mat_vec(self.left_transform, m)
        return tuple(int(c) % d for c, d in zip(coords, self.all_factors) if d > 1)


@lru_cache(maxsize=None)
def discriminant_group(lat: IntLattice) -> DiscriminantGroup:
    """Compute A_L via the Smith normal form of the Gram matrix."""
    d, left, right = _snf_with_left_transform(lat.gram)
    lifts = []
    for i, di in enumerate(d):
        if di > 1:
            lifts.append(tuple(Fraction(right[r][i], di) for r in range(lat.rank)))
    lifts = tuple(lifts)
    qvals = tuple(Fraction(bilinear(lat, v, v)) % 2 for v in lifts)
    bvals = freeze_mat([[Fraction(bilinear(lat, u, v)) % 1 for v in lifts] for u in lifts])
    factors = tuple(di for di in d if di > 1)
    group = DiscriminantGroup(lat, factors, lifts, qvals, bvals, left, d)
    assert group.order == abs(lat.determinant)
    return group


def induced_disc_action(lat: IntLattice, g: Isometry | Mat) -> Mat:
    """Matrix of the action of g on A_L in the invariant-factor coordinates.

    Column j holds the class of g applied to the j-th generator lift; entries
    in row i are reduced mod the i-th invariant factor.
    """
    mat = g.matrix if isinstance(g, Isometry) else freeze_mat(g)
    if not isinstance(g, Isometry):
        Isometry(lat, mat)  # validates
    group = discriminant_group(lat)
    cols = [group.class_of(mat_vec(mat, lift)) for lift in group.generator_lifts]
    k = len(group.invariant_factors)
    return freeze_mat([[cols[j][i] for j in range(k)] for i in range(k)])


def in_kernel_star(lat: IntLattice, g: Isometry | Mat) -> bool:
    """True iff g acts as the identity on the discriminant group."""
    group = discriminant_group(lat)
    action = induced_disc_action(lat, g)
    k = len(group.invariant_factors)
    return all(action[i][j] == (1 if i == j else 0) % group.invariant_factors[i]
               for i in range(k) for j in range(k))


def cyclic_disc_isometry_count(n: int) -> int:
    """|O(A)| for the discriminant form of <2n>, by brute force.

    Counts units a mod 2n with a^2 = 1 mod 4n, i.e. the multipliers that
    preserve q(v/2n) = 1/2n mod 2.  Equals 2^(number of primes of n) for
    n >= 2 and 1 for n = 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 1
    return sum(1 for a in range(1, 2 * n)
               if gcd(a, 2 * n) == 1 and (a * a - 1) % (4 * n) == 0)


@dataclass(frozen=True)
class GlueData:
    """A finite-index even overlattice of an orthogonal sum N + K.

    ``over_basis`` expresses the overlattice basis in N+K coordinates
    (columns are basis vectors; its determinant is +-1/index).
    """

    left: IntLattice
    right: IntLattice
    sub: IntLattice
    sub_basis: Mat
    over_basis: Mat
    over_basis_inv: Mat
    overlattice: IntLattice
    glue_vector: Vec
    index: int


def construct_mirror_embedding(n: int) -> GlueData:
    """Glue (U + <2n>) orthogonally to (U + <-2n> + U + E8(-1)^2) into an even
    unimodular lattice of signature (4,20).

    The overlattice is generated over N + K by the isotropic glue vector
    (v + w)/2n, where v spans <2n> in N and w spans <-2n> in K.
    """
    if n < 1:
        raise ValueError("n must be positive")
    left = make_standard("U_plus_Mn", n)                   # basis (e, v, f)
    right = direct_sum(make_standard("U"),
                       make_standard("Mcheck_n", n),
                       label=f"U+Mcheck:{n}")              # basis (e', f', w, ...)
    sub = direct_sum(left, right, label=f"glue-sub:{n}")
    rank = sub.rank
    v_index, w_index = 1, left.rank + 2
    glue = tuple(Fraction(1, 2 * n) if i in (v_index, w_index) else Fraction(0)
                 for i in range(rank))
    cols = [list(col) for col in zip(*identity(rank))]
    cols[w_index] = list(glue)
    over_basis = freeze_mat([tuple(cols[j][i] for j in range(rank)) for i in range(rank)])
    over_inv = inverse(over_basis)
    over_gram = mat_mul(tuple(zip(*over_basis)), mat_mul(sub.gram, over_basis))
    if not is_integral(over_gram):
        raise ArithmeticError("glue vector does not produce an integral overlattice")
    over_gram = tuple(tuple(int(x) for x in row) for row in over_gram)
    overlattice = IntLattice(over_gram, label=f"glued:{n}")
    if not overlattice.is_even or abs(overlattice.determinant) != 1:
        raise ArithmeticError("overlattice is not even unimodular")
    if signature(overlattice) != (4, 20):
        raise ArithmeticError("overlattice has the wrong signature")
    return GlueData(left=left, right=right, sub=sub, sub_basis=identity(rank),
                    over_basis=over_basis, over_basis_inv=over_inv,
                    overlattice=overlattice, glue_vector=glue, index=2 * n)


def disc_group_to_obj(group: DiscriminantGroup) -> dict:
    return {
        "invariant_factors": list(group.invariant_factors),
        "qvals": [str(q) for q in group.qvals],
    }


def glue_to_obj(gd: GlueData) -> dict:
    """Rational matrices with "p/q" entries."""
    return {
        "index": gd.index,
        "glue_vector": [str(Fraction(x)) for x in gd.glue_vector],
        "over_basis": [[str(Fraction(x)) for x in row] for row in gd.over_basis],
    }


def glue_extends(gd: GlueData, g_left: Isometry, g_right: Isometry) -> Isometry | None:
    """Extend the pair (g_left, g_right) across the glue, or refuse.

    Returns the induced isometry of the overlattice when every overlattice
    basis vector maps back into the overlattice (integral coordinates), and
    None otherwise.  Refusal is the normal outcome for pairs whose
    discriminant actions do not match under the glue.
    """
    if g_left.lattice != gd.left or g_right.lattice != gd.right:
        raise ValueError("isometries do not match the glued summands")
    blocks = block_diag(g_left.matrix, g_right.matrix)
    conj = mat_mul(gd.over_basis_inv, mat_mul(blocks, gd.over_basis))
    if not is_integral(conj):
        return None
    return Isometry(gd.overlattice, tuple(tuple(int(x) for x in row) for row in conj))
