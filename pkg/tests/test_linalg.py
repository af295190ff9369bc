import random

import pytest

from persplit.errors import DimensionMismatch, FieldMismatch, InputError
from persplit.linalg import (Matrix, Subspace, image_of, kernel, preimage,
                             quotient_map, rref)
from persplit.scalars import FIELD_QI, Gaussian, Rat

from oracle_helpers import frac_matrix


# --- reduced row echelon form ---------------------------------------------

def test_rref_rank_one_collapse():
    assert rref(frac_matrix([[2, 4], [1, 2]])) == frac_matrix([[1, 2]])


def test_rref_identity_fixed():
    ident = Matrix.identity(3)
    assert rref(ident) == ident


def test_rref_swap_oracle():
    assert rref(frac_matrix([[0, 1], [1, 0]])) == Matrix.identity(2)


def test_rref_unique_for_row_space():
    rng = random.Random(4)
    for _ in range(25):
        rows = [[Rat(rng.randint(-5, 5)) for _ in range(4)] for _ in range(3)]
        m = Matrix.from_rows(rows, 4)
        # random invertible row mix must not change the canonical form
        mix = frac_matrix([[1, 1, 0], [0, 1, 0], [2, 0, 1]])
        assert rref(mix @ m) == rref(m)


# --- kernel / image --------------------------------------------------------

def test_kernel_zero_map_is_full():
    assert kernel(Matrix.zero(2, 3)) == Subspace.full(3)


def test_kernel_identity_is_zero():
    assert kernel(Matrix.identity(4)) == Subspace.zero(4)


def test_kernel_line_oracle():
    got = kernel(frac_matrix([[1, 1, 0]]))
    assert got == Subspace.span([[1, -1, 0], [0, 0, 1]], 3)
    assert got.dim == 2


def test_image_dimension_is_rank():
    m = frac_matrix([[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    img = image_of(m, Subspace.full(3))
    assert img.dim == m.rank() == 2


# --- subspace lattice ------------------------------------------------------

def test_intersect_axes_is_zero():
    x = Subspace.span([[1, 0]], 2)
    y = Subspace.span([[0, 1]], 2)
    assert x.intersect(y) == Subspace.zero(2)


def test_preimage_of_identity_is_same_subspace():
    s = Subspace.span([[1, 2, 0], [0, 0, 1]], 3)
    assert preimage(Matrix.identity(3), s) == s


def test_modularity_on_seeded_pairs():
    rng = random.Random(11)
    for _ in range(500):
        a = Subspace.span([[Rat(rng.randint(-3, 3)) for _ in range(6)]
                           for _ in range(rng.randint(0, 4))], 6)
        b = Subspace.span([[Rat(rng.randint(-3, 3)) for _ in range(6)]
                           for _ in range(rng.randint(0, 4))], 6)
        assert a.sum(b).dim + a.intersect(b).dim == a.dim + b.dim
        assert a.sum(b) == b.sum(a)  # identical canonical bases


def test_containment_and_membership():
    a = Subspace.span([[1, 0, 0], [0, 1, 0]], 3)
    b = Subspace.span([[1, 1, 0]], 3)
    assert a.contains(b)
    assert not b.contains(a)
    assert a.contains_vector([2, -3, 0])
    assert not a.contains_vector([0, 0, 1])


def test_dimension_and_field_mismatches_raise():
    a = Subspace.full(2)
    b = Subspace.full(3)
    with pytest.raises(DimensionMismatch):
        a.sum(b)
    c = Subspace.full(2, FIELD_QI)
    with pytest.raises(FieldMismatch):
        a.sum(c)


# --- quotients -------------------------------------------------------------

def test_quotient_map_projects_and_lifts():
    a = Subspace.full(3)
    b = Subspace.span([[1, 0, 0]], 3)
    q = quotient_map(a, b)
    assert q.dim == 2
    # section is a genuine right inverse
    for coords in ([1, 0], [0, 1], [2, -5]):
        assert tuple(q.project_vector(q.lift_vector(coords))) == tuple(coords)
    # b dies in the quotient
    assert not any(q.project_vector([1, 0, 0]))


def test_quotient_map_requires_containment():
    a = Subspace.span([[1, 0]], 2)
    b = Subspace.span([[0, 1]], 2)
    with pytest.raises(InputError):
        quotient_map(a, b)


# --- complex field ---------------------------------------------------------

def test_conjugation_distributes_over_lattice():
    i = Gaussian(0, 1)
    a = Subspace.span([[1, i]], 2, FIELD_QI)
    b = Subspace.span([[1, -i]], 2, FIELD_QI)
    assert a.conjugate().conjugate() == a
    assert a.sum(b).conjugate() == a.conjugate().sum(b.conjugate())
    assert a.intersect(b).conjugate() == a.conjugate().intersect(b.conjugate())


def test_complexify_preserves_dimension():
    s = Subspace.span([[1, 2, 3], [0, 1, 1]], 3)
    c = s.complexify()
    assert c.dim == s.dim and c.field == FIELD_QI


def test_inverse_exact():
    m = frac_matrix([[1, 2], [3, 5]])
    assert m @ m.inverse() == Matrix.identity(2)
    with pytest.raises(InputError):
        frac_matrix([[1, 2], [2, 4]]).inverse()
