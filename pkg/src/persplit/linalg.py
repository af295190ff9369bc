"""Dense exact matrices over Q or Q(i) and the subspace lattice.

Subspaces are stored by their reduced row-echelon basis, which is the
canonical form: two subspaces are equal iff their bases are identical.
All operations are pure; values are immutable after construction.
"""

from __future__ import annotations

from ._core import rref_rows
from .errors import DimensionMismatch, FieldMismatch, InputError
from .scalars import FIELD_Q, FIELD_QI, Gaussian, as_field, field_one, field_zero


class Matrix:
    """Immutable dense matrix; rows of exact field elements."""

    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, rows, cols, data, field=FIELD_Q, *, _raw=False):
        if _raw:
            entries = data
        else:
            entries = tuple(tuple(as_field(x, field) for x in row) for row in data)
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise DimensionMismatch(f"expected {rows}x{cols} entries")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", entries)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, data, cols=None, field=FIELD_Q):
        data = list(data)
        if cols is None:
            if not data:
                raise InputError("cannot infer width of an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data, field)

    @classmethod
    def zero(cls, rows, cols, field=FIELD_Q):
        z = field_zero(field)
        return cls(rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)),
                   field, _raw=True)

    @classmethod
    def identity(cls, n, field=FIELD_Q):
        z, o = field_zero(field), field_one(field)
        return cls(n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)),
                   field, _raw=True)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.field, self.data) == \
               (other.rows, other.cols, other.field, other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.field, self.data))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field})"

    def __add__(self, other):
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols,
                      tuple(tuple(a + b for a, b in zip(ra, rb))
                            for ra, rb in zip(self.data, other.data)),
                      self.field, _raw=True)

    def __sub__(self, other):
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols,
                      tuple(tuple(a - b for a, b in zip(ra, rb))
                            for ra, rb in zip(self.data, other.data)),
                      self.field, _raw=True)

    def __neg__(self):
        return Matrix(self.rows, self.cols,
                      tuple(tuple(-a for a in row) for row in self.data),
                      self.field, _raw=True)

    def scale(self, c):
        c = as_field(c, self.field)
        return Matrix(self.rows, self.cols,
                      tuple(tuple(c * a for a in row) for row in self.data),
                      self.field, _raw=True)

    def __matmul__(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} @ {other.field}")
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        zero = field_zero(self.field)
        ot = other.transpose().data
        out = tuple(
            tuple(sum((a * b for a, b in zip(row, col) if a and b), zero) for col in ot)
            for row in self.data
        )
        return Matrix(self.rows, other.cols, out, self.field, _raw=True)

    def transpose(self):
        return Matrix(self.cols, self.rows, tuple(zip(*self.data)) if self.data else
                      tuple(() for _ in range(self.cols)), self.field, _raw=True)

    def apply(self, vector):
        """Apply to a coordinate tuple (column-vector convention)."""
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} for {self.cols} columns")
        zero = field_zero(self.field)
        vec = tuple(as_field(x, self.field) for x in vector)
        return tuple(sum((a * x for a, x in zip(row, vec) if a and x), zero)
                     for row in self.data)

    def row(self, i):
        return self.data[i]

    def stack(self, other):
        if self.cols != other.cols or self.field != other.field:
            raise DimensionMismatch("stack shape mismatch")
        return Matrix(self.rows + other.rows, self.cols, self.data + other.data,
                      self.field, _raw=True)

    def rref(self):
        reduced, pivots = rref_rows(self.data, self.cols)
        return Matrix(len(reduced), self.cols, tuple(reduced), self.field, _raw=True), tuple(pivots)

    def rank(self):
        return self.rref()[0].rows

    def is_zero(self):
        return not any(any(row) for row in self.data)

    def inverse(self):
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        ident = Matrix.identity(n, self.field)
        aug = tuple(self.data[i] + ident.data[i] for i in range(n))
        reduced, pivots = rref_rows(aug, 2 * n)
        if len(reduced) < n or tuple(pivots) != tuple(range(n)):
            raise InputError("matrix is singular")
        return Matrix(n, n, tuple(row[n:] for row in reduced), self.field, _raw=True)

    def complexify(self):
        if self.field == FIELD_QI:
            return self
        return Matrix(self.rows, self.cols,
                      tuple(tuple(Gaussian(a) for a in row) for row in self.data),
                      FIELD_QI, _raw=True)

    def conjugate(self):
        if self.field == FIELD_Q:
            return self
        return Matrix(self.rows, self.cols,
                      tuple(tuple(a.conj() for a in row) for row in self.data),
                      FIELD_QI, _raw=True)

    def _check_same_shape(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")


def rref(m: Matrix) -> Matrix:
    """The unique reduced row-echelon form of ``m`` with zero rows removed."""
    return m.rref()[0]


class Subspace:
    """A subspace of a coordinate space, canonically spanned.

    ``basis`` is the RREF matrix of any spanning set; equality of
    subspaces is equality of these bases.
    """

    __slots__ = ("ambient_dim", "basis", "field")

    def __init__(self, ambient_dim, basis: Matrix, field=None, *, _canonical=False):
        field = field or basis.field
        if basis.cols != ambient_dim:
            raise DimensionMismatch(f"basis width {basis.cols} != ambient {ambient_dim}")
        if basis.field != field:
            raise FieldMismatch(f"{basis.field} basis in {field} subspace")
        if not _canonical:
            basis = rref(basis)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, rows, ambient_dim, field=FIELD_Q):
        rows = list(rows)
        mat = Matrix(len(rows), ambient_dim, rows, field)
        return cls(ambient_dim, mat, field)

    @classmethod
    def zero(cls, ambient_dim, field=FIELD_Q):
        return cls(ambient_dim, Matrix.zero(0, ambient_dim, field), field, _canonical=True)

    @classmethod
    def full(cls, ambient_dim, field=FIELD_Q):
        return cls(ambient_dim, Matrix.identity(ambient_dim, field), field, _canonical=True)

    @property
    def dim(self):
        return self.basis.rows

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim, self.field, self.basis.data) == \
               (other.ambient_dim, other.field, other.basis.data)

    def __hash__(self):
        return hash((self.ambient_dim, self.field, self.basis.data))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim} over {self.field})"

    def is_zero(self):
        return self.dim == 0

    def is_full(self):
        return self.dim == self.ambient_dim

    def contains_vector(self, vector):
        vec = [as_field(x, self.field) for x in vector]
        if len(vec) != self.ambient_dim:
            raise DimensionMismatch("vector/ambient mismatch")
        reduced = reduce_against(self.basis, vec)
        return not any(reduced)

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.contains_vector(row) for row in other.basis.data)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace(self.ambient_dim, self.basis.stack(other.basis), self.field)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim, self.field)
        # Solve x·A = y·B: kernel of [Aᵗ | −Bᵗ], keep the x-part times A.
        a, b = self.basis, other.basis
        combined = _hstack(a.transpose(), -b.transpose())
        ker = kernel(combined)
        rows = [ker_row[: a.rows] for ker_row in ker.basis.data]
        coeff = Matrix(len(rows), a.rows, tuple(rows), self.field, _raw=True)
        return Subspace(self.ambient_dim, coeff @ a, self.field)

    def annihilator(self) -> "Subspace":
        """Functionals vanishing on this subspace: {f : B·f = 0}."""
        return kernel(self.basis)

    def complexify(self) -> "Subspace":
        if self.field == FIELD_QI:
            return self
        return Subspace(self.ambient_dim, self.basis.complexify(), FIELD_QI, _canonical=True)

    def conjugate(self) -> "Subspace":
        if self.field == FIELD_Q:
            return self
        return Subspace(self.ambient_dim, self.basis.conjugate(), FIELD_QI)

    def _check_compatible(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient {self.ambient_dim} vs {other.ambient_dim}")
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")


def _hstack(a: Matrix, b: Matrix) -> Matrix:
    if a.rows != b.rows or a.field != b.field:
        raise DimensionMismatch("hstack shape mismatch")
    return Matrix(a.rows, a.cols + b.cols,
                  tuple(ra + rb for ra, rb in zip(a.data, b.data)), a.field, _raw=True)


def reduce_against(basis: Matrix, vector):
    """Reduce a coordinate vector modulo an RREF basis; zero iff contained."""
    vec = list(vector)
    for row in basis.data:
        pivot = next(j for j, x in enumerate(row) if x)
        if vec[pivot]:
            c = vec[pivot]
            for j in range(pivot, len(vec)):
                vec[j] = vec[j] - c * row[j]
    return vec


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m·v = 0}, canonical."""
    reduced, pivots = m.rref()
    n = m.cols
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    zero, one = field_zero(m.field), field_one(m.field)
    rows = []
    for j in free:
        vec = [zero] * n
        vec[j] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced.data[r][j]
        rows.append(tuple(vec))
    basis = Matrix(len(rows), n, tuple(rows), m.field, _raw=True)
    return Subspace(n, basis, m.field)


def image(m: Matrix) -> Subspace:
    """Column space of ``m`` (as a subspace of the target)."""
    return Subspace(m.rows, m.transpose(), m.field)


def image_of(m: Matrix, s: Subspace) -> Subspace:
    """Image m(S) in the target space."""
    if m.cols != s.ambient_dim:
        raise DimensionMismatch(f"map source {m.cols} vs subspace ambient {s.ambient_dim}")
    if m.field != s.field:
        raise FieldMismatch(f"{m.field} vs {s.field}")
    return Subspace(m.rows, s.basis @ m.transpose(), m.field)


def preimage(m: Matrix, s: Subspace) -> Subspace:
    """{v : m·v ∈ S}."""
    if m.rows != s.ambient_dim:
        raise DimensionMismatch(f"map target {m.rows} vs subspace ambient {s.ambient_dim}")
    if m.field != s.field:
        raise FieldMismatch(f"{m.field} vs {s.field}")
    if s.is_full():
        return Subspace.full(m.cols, m.field)
    ann = s.annihilator()  # rows f with f·s = 0 for all s in S
    return kernel(ann.basis @ m)


class QuotientMap:
    """A surjection A → A/B with a recorded basis of the quotient.

    ``projection`` sends ambient coordinates to quotient coordinates
    (columns convention); ``section`` rows are the chosen representatives,
    so projection∘section = identity on quotient coordinates.
    """

    __slots__ = ("source", "kernel_space", "projection", "section")

    def __init__(self, source, kernel_space, projection, section):
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "kernel_space", kernel_space)
        object.__setattr__(self, "projection", projection)
        object.__setattr__(self, "section", section)

    def __setattr__(self, name, value):
        raise AttributeError("QuotientMap is immutable")

    @property
    def dim(self):
        return self.projection.rows

    def project_vector(self, vector):
        return self.projection.apply(vector)

    def project_subspace(self, s: Subspace) -> Subspace:
        return image_of(self.projection, s)

    def lift_vector(self, coords):
        """Representative in the ambient space of quotient coordinates."""
        return self.section.transpose().apply(coords)


def quotient_map(a: Subspace, b: Subspace) -> QuotientMap:
    """Quotient a/b for b ⊆ a, with deterministic representatives."""
    a._check_compatible(b)
    if not a.contains(b):
        raise InputError("quotient_map requires b ⊆ a")
    n, field = a.ambient_dim, a.field
    # Extend b's basis by rows of a, then by unit vectors, to a full basis.
    comp_rows = []
    current = b
    for row in a.basis.data:
        if not current.contains_vector(row):
            comp_rows.append(row)
            current = current.sum(Subspace.span([row], n, field))
    extra_rows = []
    zero, one = field_zero(field), field_one(field)
    for j in range(n):
        if current.is_full():
            break
        unit = tuple(one if k == j else zero for k in range(n))
        if not current.contains_vector(unit):
            extra_rows.append(unit)
            current = current.sum(Subspace.span([unit], n, field))
    full = Matrix(n, n, b.basis.data + tuple(comp_rows) + tuple(extra_rows), field, _raw=True)
    # Coordinates of a column vector v in the row basis: x = (fullᵗ)⁻¹ v.
    coords = full.transpose().inverse()
    q = len(comp_rows)
    proj_rows = coords.data[b.dim: b.dim + q]
    projection = Matrix(q, n, proj_rows, field, _raw=True)
    section = Matrix(q, n, tuple(comp_rows), field, _raw=True)
    return QuotientMap(a, b, projection, section)
