"""Exact dense linear algebra over cyclotomic numbers.

Matrices are immutable with all entries embedded into one shared cyclotomic
order.  Subspaces are stored as canonical reduced-row-echelon bases, so two
equal subspaces always have identical basis tuples.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .cyclo import CycloNumber


def as_cyclo(value) -> CycloNumber:
    if isinstance(value, CycloNumber):
        return value
    if isinstance(value, (int, Fraction)):
        return CycloNumber.from_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a cyclotomic number")


class Matrix:
    __slots__ = ("rows", "cols", "entries", "order")

    def __init__(self, rows: int, cols: int, entries) -> None:
        flat = [as_cyclo(e) for e in entries]
        if len(flat) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
        order = 1
        for e in flat:
            order = lcm(order, e.order)
        flat = [e.embed(order) for e in flat]
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(flat))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diagonal(cls, values) -> "Matrix":
        values = list(values)
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, key):
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list[list[CycloNumber]]:
        return [list(self.row(i)) for i in range(self.rows)]

    # --- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols,
                      [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols,
                      [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        zero = CycloNumber.zero(lcm(self.order, other.order))
        out = []
        for i in range(self.rows):
            lrow = self.row(i)
            for j in range(other.cols):
                acc = zero
                for k, a in enumerate(lrow):
                    if not a.is_zero():
                        b = other.entries[k * other.cols + j]
                        if not b.is_zero():
                            acc = acc + a * b
                out.append(acc)
        return Matrix(self.rows, other.cols, out)

    def scale(self, scalar) -> "Matrix":
        scalar = as_cyclo(scalar)
        return Matrix(self.rows, self.cols, [scalar * a for a in self.entries])

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def apply(self, vector) -> tuple:
        """Matrix times column vector (a tuple of cyclotomic numbers)."""
        vec = [as_cyclo(v) for v in vector]
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        zero = CycloNumber.zero(self.order)
        out = []
        for i in range(self.rows):
            acc = zero
            for a, v in zip(self.row(i), vec):
                if not a.is_zero() and not v.is_zero():
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def trace(self) -> CycloNumber:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        acc = CycloNumber.zero(self.order)
        for i in range(self.rows):
            acc = acc + self[i, i]
        return acc

    # --- elimination ------------------------------------------------------

    def _echelon(self, track_sign: bool = False):
        """Row-reduce a copy; returns (rows, pivot_cols, sign_flips)."""
        work = self.row_list()
        pivots = []
        swaps = 0
        r = 0
        for col in range(self.cols):
            pivot = next((i for i in range(r, self.rows) if not work[i][col].is_zero()), None)
            if pivot is None:
                continue
            if pivot != r:
                work[r], work[pivot] = work[pivot], work[r]
                swaps += 1
            inv = work[r][col].inverse()
            work[r] = [v * inv for v in work[r]]
            for i in range(self.rows):
                if i != r and not work[i][col].is_zero():
                    f = work[i][col]
                    work[i] = [v - f * w for v, w in zip(work[i], work[r])]
            pivots.append(col)
            r += 1
            if r == self.rows:
                break
        return work, pivots, swaps

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        work, pivots, _ = self._echelon()
        return Matrix.from_rows(work), tuple(pivots)

    def rank(self) -> int:
        return len(self._echelon()[1])

    def det(self) -> CycloNumber:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        work = self.row_list()
        det = CycloNumber.one(self.order)
        for col in range(self.cols):
            pivot = next((i for i in range(col, self.rows) if not work[i][col].is_zero()), None)
            if pivot is None:
                return CycloNumber.zero(self.order)
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                det = -det
            det = det * work[col][col]
            inv = work[col][col].inverse()
            for i in range(col + 1, self.rows):
                if not work[i][col].is_zero():
                    f = work[i][col] * inv
                    work[i] = [v - f * w for v, w in zip(work[i], work[col])]
        return det

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        ident = Matrix.identity(n)
        work = [list(self.row(i)) + list(ident.row(i)) for i in range(n)]
        aug = Matrix.from_rows(work)
        reduced, pivots = aug.rref()
        if list(pivots) != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix.from_rows([list(reduced.row(i))[n:] for i in range(n)])

    def kernel(self) -> "Subspace":
        """Canonical basis of the right null space."""
        work, pivots, _ = self._echelon()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        zero = CycloNumber.zero(self.order)
        one = CycloNumber.one(self.order)
        for fc in free:
            vec = [zero] * self.cols
            vec[fc] = one
            for r, pc in enumerate(pivots):
                vec[pc] = -work[r][fc]
            basis.append(vec)
        return Subspace.from_vectors(self.cols, basis)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def scalar_multiple_of(self, other: "Matrix"):
        """The scalar c with self == c*other, or None (projective comparison)."""
        if (self.rows, self.cols) != (other.rows, other.cols):
            return None
        ratio = None
        for a, b in zip(self.entries, other.entries):
            if b.is_zero():
                if not a.is_zero():
                    return None
            elif ratio is None:
                ratio = a / b
        if ratio is None:
            return None if not self.is_zero() else CycloNumber.one()
        for a, b in zip(self.entries, other.entries):
            if not b.is_zero() and a != ratio * b:
                return None
        return ratio

    # --- comparisons / io ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            all(a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries)))

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [e.to_json() for e in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> "Matrix":
        return cls(int(data["rows"]), int(data["cols"]),
                   [CycloNumber.from_json(e) for e in data["entries"]])

    def __repr__(self):
        body = "; ".join(" ".join(repr(e) for e in self.row(i)) for i in range(self.rows))
        return f"Matrix[{body}]"


def vec_is_zero(vector) -> bool:
    return all(v.is_zero() for v in vector)


class Subspace:
    """A linear subspace of F^n held as a canonical RREF basis (rows)."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis) -> None:
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", tuple(tuple(row) for row in basis))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors) -> "Subspace":
        vecs = [[as_cyclo(v) for v in vec] for vec in vectors]
        for vec in vecs:
            if len(vec) != ambient_dim:
                raise ValueError("vector length differs from ambient dimension")
        if not vecs:
            return cls(ambient_dim, [])
        reduced, pivots = Matrix.from_rows(vecs).rref()
        rows = [reduced.row(i) for i in range(len(pivots))]
        return cls(ambient_dim, rows)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        ident = Matrix.identity(ambient_dim)
        return cls(ambient_dim, [ident.row(i) for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, vector) -> bool:
        vec = [as_cyclo(v) for v in vector]
        if len(vec) != self.ambient_dim:
            raise ValueError("vector length differs from ambient dimension")
        for row in self.basis:
            pivot_col = next(j for j, v in enumerate(row) if not v.is_zero())
            c = vec[pivot_col]
            if not c.is_zero():
                vec = [v - c * w for v, w in zip(vec, row)]
        return vec_is_zero(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.from_vectors(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        p, q = self.dim, other.dim
        # columns: basis of self, then negated basis of other; kernel rows glue them
        cols = []
        for i in range(self.ambient_dim):
            cols.append([self.basis[r][i] for r in range(p)] +
                        [-other.basis[r][i] for r in range(q)])
        combos = Matrix.from_rows(cols).kernel()
        vectors = []
        zero = CycloNumber.zero()
        for combo in combos.basis:
            vec = [zero] * self.ambient_dim
            for r in range(p):
                c = combo[r]
                if not c.is_zero():
                    vec = [v + c * w for v, w in zip(vec, self.basis[r])]
            vectors.append(vec)
        return Subspace.from_vectors(self.ambient_dim, vectors)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return all(tuple(a) == tuple(b) for a, b in zip(self.basis, other.basis))

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim,
                "basis": [[v.to_json() for v in row] for row in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> "Subspace":
        vectors = [[CycloNumber.from_json(v) for v in row] for row in data["basis"]]
        return cls.from_vectors(int(data["ambient_dim"]), vectors)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"
