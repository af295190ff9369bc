"""Graded spaces, graded maps, increasing filtrations and their graded
pieces, plus the monodromy weight filtration of a nilpotent operator.

Degrees are absolute integers; a filtration is stored sparsely by its
jump positions and clamps to the zero/full subspace outside them.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import InputError, VerificationFailure
from .linalg import Matrix, QuotientMap, Subspace, image_of, kernel, quotient_map
from .scalars import FIELD_Q


class GradedSpace:
    """Finitely supported collection of coordinate spaces, one per degree."""

    __slots__ = ("dims", "labels")

    def __init__(self, dims, labels=None):
        dims = {int(d): int(n) for d, n in dims.items() if n}
        if any(n < 0 for n in dims.values()):
            raise InputError("negative dimension")
        labels = {int(d): tuple(ls) for d, ls in (labels or {}).items()}
        for d, ls in labels.items():
            if d in dims and len(ls) != dims[d]:
                raise InputError(f"degree {d}: {len(ls)} labels for dimension {dims[d]}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("GradedSpace is immutable")

    def dim(self, d):
        return self.dims.get(d, 0)

    @property
    def degrees(self):
        return sorted(self.dims)

    def total_dim(self):
        return sum(self.dims.values())

    def __eq__(self, other):
        if not isinstance(other, GradedSpace):
            return NotImplemented
        return self.dims == other.dims

    def __repr__(self):
        return f"GradedSpace({self.dims})"


class GradedMap:
    """Degree-homogeneous map of graded spaces; missing blocks are zero."""

    __slots__ = ("shift", "blocks", "source", "target")

    def __init__(self, shift, blocks, source: GradedSpace, target: GradedSpace | None = None):
        target = target if target is not None else source
        blocks = {int(d): m for d, m in blocks.items() if not m.is_zero()}
        for d, m in blocks.items():
            if (m.rows, m.cols) != (target.dim(d + shift), source.dim(d)):
                raise InputError(
                    f"block at degree {d}: shape {m.rows}x{m.cols}, "
                    f"expected {target.dim(d + shift)}x{source.dim(d)}")
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)

    def __setattr__(self, name, value):
        raise AttributeError("GradedMap is immutable")

    def block(self, d) -> Matrix:
        blk = self.blocks.get(d)
        if blk is None:
            return Matrix.zero(self.target.dim(d + self.shift), self.source.dim(d))
        return blk

    def power_block(self, d, s) -> Matrix:
        """The block of the s-fold composite starting at degree ``d``."""
        if s < 0:
            raise InputError("negative power")
        if self.source is not self.target and self.source != self.target and s > 1:
            raise InputError("powers require an endomorphism")
        out = Matrix.identity(self.source.dim(d))
        deg = d
        for _ in range(s):
            out = self.block(deg) @ out
            deg += self.shift
        return out

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self ∘ other."""
        degs = set(other.blocks) | {d - other.shift for d in self.blocks}
        blocks = {d: self.block(d + other.shift) @ other.block(d) for d in degs}
        return GradedMap(self.shift + other.shift, blocks, other.source, self.target)

    def is_zero(self):
        return not self.blocks

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (self.shift, self.blocks) == (other.shift, other.blocks)

    def __repr__(self):
        return f"GradedMap(shift {self.shift}, blocks at {sorted(self.blocks)})"


class Filtration:
    """Increasing filtration of a graded space, stored by jumps.

    ``steps[(d, i)]`` is W_{≤i} of degree d; queries clamp to the zero
    subspace below the lowest jump and to the highest stored step above.
    """

    __slots__ = ("space", "steps", "field")

    def __init__(self, space: GradedSpace, steps, field=FIELD_Q):
        norm = {}
        for (d, i), sub in steps.items():
            d, i = int(d), int(i)
            if sub.ambient_dim != space.dim(d):
                raise InputError(f"step ({d},{i}): ambient {sub.ambient_dim} != dim {space.dim(d)}")
            norm[(d, i)] = sub
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "steps", norm)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Filtration is immutable")

    def jumps(self, d):
        return sorted(i for (dd, i) in self.steps if dd == d)

    def at(self, d, i) -> Subspace:
        n = self.space.dim(d)
        stored = self.jumps(d)
        if not stored:
            # No steps recorded for this degree: degenerate full at all i ≥ 0
            # only if the degree is absent; a present degree must have steps.
            if n == 0:
                return Subspace.zero(0, self.field)
            raise InputError(f"no filtration steps recorded for degree {d}")
        below = [j for j in stored if j <= i]
        if not below:
            return Subspace.zero(n, self.field)
        return self.steps[(d, max(below))]

    def __eq__(self, other):
        if not isinstance(other, Filtration):
            return NotImplemented
        return self.space == other.space and self.steps == other.steps


@dataclass(frozen=True)
class FiltrationReport:
    valid: bool
    errors: tuple
    i_min: dict
    i_max: dict
    amplitude: int
    graded_dims: dict

    def __str__(self):
        if not self.valid:
            return "invalid filtration: " + "; ".join(self.errors)
        return (f"valid filtration, amplitude r = {self.amplitude}, "
                f"graded dims {self.graded_dims}")


def validate_filtration(space: GradedSpace, filtr: Filtration) -> FiltrationReport:
    """Monotone/exhaustive/bounded check plus amplitude bookkeeping."""
    errors = []
    i_min, i_max, graded_dims = {}, {}, {}
    for d in space.degrees:
        n = space.dim(d)
        stored = filtr.jumps(d)
        if not stored:
            errors.append(f"degree {d}: no filtration steps")
            continue
        prev = Subspace.zero(n, filtr.field)
        prev_i = None
        for i in stored:
            cur = filtr.steps[(d, i)]
            if not cur.contains(prev):
                errors.append(f"non-monotone at (d={d}, i={i})")
                break
            if cur.dim > prev.dim:
                graded_dims[(d, i)] = cur.dim - prev.dim
            prev, prev_i = cur, i
        top = filtr.steps[(d, stored[-1])]
        if not top.is_full():
            errors.append(f"degree {d}: filtration is not exhaustive "
                          f"(top step has dim {top.dim} < {n})")
        jump_is = [i for (dd, i) in graded_dims if dd == d]
        if jump_is:
            i_min[d], i_max[d] = min(jump_is), max(jump_is)
    amplitude = max((abs(i) for (_, i) in graded_dims), default=0)
    return FiltrationReport(not errors, tuple(errors), i_min, i_max, amplitude, graded_dims)


def check_strict_compatibility(filtr: Filtration, eta: GradedMap):
    """η(W_{≤i}V^d) ⊆ W_{≤i+2}V^{d+2} for all (d, i); witness on failure."""
    if eta.shift != 2:
        raise InputError(f"operator must have degree 2, got {eta.shift}")
    space = filtr.space
    for d in space.degrees:
        if space.dim(d + 2) == 0 and eta.block(d).is_zero():
            continue
        for i in filtr.jumps(d):
            src = filtr.at(d, i)
            if src.is_zero():
                continue
            img = image_of(eta.block(d), src)
            tgt = filtr.at(d + 2, i + 2) if space.dim(d + 2) else Subspace.zero(0, filtr.field)
            if not tgt.contains(img):
                witness = next(row for row in src.basis.data
                               if not tgt.contains_vector(eta.block(d).apply(row)))
                return False, (d, i, witness)
    return True, None


class GradedPieces:
    """Quotients Gr_i V^d with recorded bases and the induced operator blocks."""

    __slots__ = ("space", "filtration", "eta", "quotients", "report")

    def __init__(self, space, filtration, eta, quotients, report):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "filtration", filtration)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "quotients", quotients)
        object.__setattr__(self, "report", report)

    def __setattr__(self, name, value):
        raise AttributeError("GradedPieces is immutable")

    @property
    def slots(self):
        return sorted(self.quotients)

    def quotient(self, d, i) -> QuotientMap | None:
        return self.quotients.get((d, i))

    def dim(self, d, i):
        q = self.quotients.get((d, i))
        return q.dim if q else 0

    def e_block(self, d, i) -> Matrix:
        """Induced block Gr_i V^d → Gr_{i+2} V^{d+2}."""
        src = self.quotients.get((d, i))
        tgt_dim = self.dim(d + 2, i + 2)
        if src is None:
            return Matrix.zero(tgt_dim, 0)
        if tgt_dim == 0:
            return Matrix.zero(0, src.dim)
        tgt = self.quotients[(d + 2, i + 2)]
        cols = [tgt.project_vector(self.eta.block(d).apply(rep))
                for rep in src.section.data]
        return Matrix(tgt_dim, src.dim, tuple(zip(*cols)) if cols else (), FIELD_Q,
                      _raw=True) if cols else Matrix.zero(tgt_dim, 0)

    def e_power_block(self, d, i, s) -> Matrix:
        out = Matrix.identity(self.dim(d, i))
        dd, ii = d, i
        for _ in range(s):
            out = self.e_block(dd, ii) @ out
            dd, ii = dd + 2, ii + 2
        return out


def graded_pieces(space: GradedSpace, filtr: Filtration, eta: GradedMap) -> GradedPieces:
    report = validate_filtration(space, filtr)
    if not report.valid:
        raise VerificationFailure("; ".join(report.errors))
    ok, witness = check_strict_compatibility(filtr, eta)
    if not ok:
        d, i, vec = witness
        raise VerificationFailure(
            f"operator not compatible with filtration at (d={d}, i={i}); witness {vec}")
    quotients = {}
    for (d, i) in report.graded_dims:
        quotients[(d, i)] = quotient_map(filtr.at(d, i), filtr.at(d, i - 1))
    return GradedPieces(space, filtr, eta, quotients, report)


def nilpotency_order(n_mat: Matrix):
    """Least k with N^k = 0, or None if N is not nilpotent within dim steps."""
    if n_mat.rows != n_mat.cols:
        raise InputError("nilpotency requires a square matrix")
    power = Matrix.identity(n_mat.rows, n_mat.field)
    for k in range(n_mat.rows + 1):
        if power.is_zero():
            return k
        power = n_mat @ power
    if power.is_zero():
        return n_mat.rows + 1
    return None


def weight_filtration(n_mat: Matrix, center: int = 0) -> dict:
    """Monodromy weight filtration of a nilpotent endomorphism.

    Returns the map i → W_{≤i} (a Subspace) for i in the supported
    range, shifted so the filtration is centered at ``center``.  The
    output is the unique increasing filtration with N·W_{≤i} ⊆ W_{≤i−2}
    and N^j: Gr_{center+j} ≅ Gr_{center−j}; it is computed by the
    kernel/image convolution
        W_j = Σ_{k ≥ max(0,−j)} Ker N^{j+k+1} ∩ Im N^k.
    """
    order = nilpotency_order(n_mat)
    if order is None:
        raise InputError("operator is not nilpotent")
    dim = n_mat.rows
    field = n_mat.field
    kmax = order  # N^order = 0
    kernels = {}
    images = {}
    power = Matrix.identity(dim, field)
    for k in range(kmax + 2):
        kernels[k] = kernel(power)
        images[k] = Subspace(dim, power.transpose(), field)
        power = n_mat @ power
    top = kmax - 1  # highest j with W_j possibly ≠ V is below; amplitude is order−1
    steps = {}
    for j in range(-top - 1, top + 1):
        acc = Subspace.zero(dim, field)
        for k in range(max(0, -j), kmax + 1):
            exp = j + k + 1
            if exp < 0:
                continue
            ker_part = kernels[min(exp, kmax)] if exp <= kmax else Subspace.full(dim, field)
            term = ker_part.intersect(images[min(k, kmax + 1)])
            acc = acc.sum(term)
        steps[center + j] = acc
    return steps
