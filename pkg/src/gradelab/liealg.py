"""The special linear Lie algebra sl(n,C) as an exact structure-constant algebra.

Basis order: E_ij for i != j (row-major over the off-diagonal positions),
followed by H_k = E_kk - E_(k+1)(k+1) for k = 1..n-1.  Structure constants
are computed once per n and cached.
"""
from __future__ import annotations

import re

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import CycloNumber
from .linalg import Matrix, as_cyclo

# sparse bracket table entry: {target_index: coefficient}
SparseVec = dict


class LieAlgebra:
    """sl(n,C) with a fixed ordered basis and cached structure constants."""

    __slots__ = ("n", "dim", "basis", "basis_names", "_table", "_offdiag_index")

    def __init__(self, n: int) -> None:
        if n < 2:
            raise ValueError("n must be at least 2")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dim", n * n - 1)
        names = []
        basis = []
        offdiag = {}
        for i in range(n):
            for j in range(n):
                if i != j:
                    offdiag[(i, j)] = len(basis)
                    names.append(f"E{i + 1}{j + 1}")
                    basis.append(Matrix(n, n, [1 if (r, c) == (i, j) else 0
                                               for r in range(n) for c in range(n)]))
        for k in range(n - 1):
            names.append(f"H{k + 1}")
            basis.append(Matrix(n, n, [(1 if r == k else -1 if r == k + 1 else 0)
                                       if r == c else 0
                                       for r in range(n) for c in range(n)]))
        object.__setattr__(self, "basis", tuple(basis))
        object.__setattr__(self, "basis_names", tuple(names))
        object.__setattr__(self, "_offdiag_index", offdiag)
        table = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                prod = basis[i] * basis[j] - basis[j] * basis[i]
                entry = self.from_matrix(prod)
                sparse = {k: c for k, c in enumerate(entry) if not c.is_zero()}
                if sparse:
                    table[(i, j)] = sparse
        object.__setattr__(self, "_table", table)

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    def structure_constant(self, i: int, j: int) -> SparseVec:
        """Sparse coordinates of [b_i, b_j]."""
        if i == j:
            return {}
        if i < j:
            return self._table.get((i, j), {})
        flipped = self._table.get((j, i), {})
        return {k: -c for k, c in flipped.items()}

    def bracket_coords(self, x, y) -> tuple:
        """Bracket of two coordinate vectors, as a coordinate vector."""
        acc: dict[int, CycloNumber] = {}
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if yj.is_zero():
                    continue
                entry = self.structure_constant(i, j)
                if not entry:
                    continue
                coeff = xi * yj
                for k, c in entry.items():
                    cur = acc.get(k)
                    acc[k] = c * coeff if cur is None else cur + c * coeff
        zero = CycloNumber.zero()
        return tuple(acc.get(k, zero) for k in range(self.dim))

    def from_matrix(self, m: Matrix) -> tuple:
        """Coordinates of a traceless n x n matrix in the fixed basis."""
        if (m.rows, m.cols) != (self.n, self.n):
            raise ValueError("matrix has the wrong shape")
        if not m.trace().is_zero():
            raise ValueError("matrix is not traceless")
        coords = []
        for i in range(self.n):
            for j in range(self.n):
                if i != j:
                    coords.append(m[i, j])
        # diagonal d decomposes over H_k with coefficients a_k = d_1 + ... + d_k
        partial = CycloNumber.zero(m.order)
        for k in range(self.n - 1):
            partial = partial + m[k, k]
            coords.append(partial)
        return tuple(coords)

    def to_matrix(self, coords) -> Matrix:
        coords = [as_cyclo(c) for c in coords]
        if len(coords) != self.dim:
            raise ValueError("coordinate length mismatch")
        acc = Matrix.zeros(self.n, self.n)
        for c, b in zip(coords, self.basis):
            if not c.is_zero():
                acc = acc + b.scale(c)
        return acc

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, tuple(as_cyclo(c) for c in coords))

    def basis_element(self, index: int) -> "AlgebraElement":
        coords = [0] * self.dim
        coords[index] = 1
        return self.element(coords)

    def named_element(self, name: str) -> "AlgebraElement":
        """Parse basis names like "E12" or "H1"."""
        try:
            index = self.basis_names.index(name)
        except ValueError:
            raise ValueError(f"unknown basis element {name!r} for sl({self.n})") from None
        return self.basis_element(index)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and other.n == self.n

    def __hash__(self):
        return hash(("sl", self.n))

    def __repr__(self):
        return f"sl({self.n})"


@lru_cache(maxsize=None)
def special_linear(n: int) -> LieAlgebra:
    return LieAlgebra(n)


@dataclass(frozen=True)
class AlgebraElement:
    algebra: LieAlgebra
    coords: tuple

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra,
                              tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra,
                              tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def scale(self, scalar) -> "AlgebraElement":
        scalar = as_cyclo(scalar)
        return AlgebraElement(self.algebra, tuple(scalar * a for a in self.coords))

    def bracket(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra,
                              self.algebra.bracket_coords(self.coords, other.coords))

    def to_matrix(self) -> Matrix:
        return self.algebra.to_matrix(self.coords)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def _check(self, other):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise ValueError("elements of different algebras")

    def __repr__(self):
        terms = [f"{c!r}*{n}" for c, n in zip(self.coords, self.algebra.basis_names)
                 if not c.is_zero()]
        return " + ".join(terms) if terms else "0"


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x.bracket(y)


def jacobi_table_holds(dim: int, table) -> bool:
    """Exhaustive Jacobi check for an arbitrary antisymmetric bracket table.

    `table(i, j)` must return the sparse coordinates of [b_i, b_j].  Checks
    [[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j] = 0 over all i<j<k
    (triples with a repeated index vanish by antisymmetry).
    """
    def double(first: SparseVec, outer: int) -> SparseVec:
        acc: dict[int, CycloNumber] = {}
        for m, c in first.items():
            inner = table(m, outer)
            for k, d in inner.items():
                cur = acc.get(k)
                val = c * d if cur is None else cur + c * d
                acc[k] = val
        return acc

    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                total: dict[int, CycloNumber] = {}
                for part in (double(table(i, j), k),
                             double(table(j, k), i),
                             double(table(k, i), j)):
                    for m, c in part.items():
                        cur = total.get(m)
                        total[m] = c if cur is None else cur + c
                if any(not c.is_zero() for c in total.values()):
                    return False
    return True


def jacobi_check(algebra: LieAlgebra) -> bool:
    """Verify the Jacobi identity for the algebra's own structure constants."""
    return jacobi_table_holds(algebra.dim, algebra.structure_constant)


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<num>\d+)(?:/(?P<den>\d+))?\s*\*?\s*)?"
    r"(?P<name>[EH]\d+)\s*")


def parse_element(text: str, algebra: LieAlgebra | None = None) -> AlgebraElement:
    """Parse a named-basis expression such as "E12", "H1" or "E21+E12".

    Terms are signed, optionally scaled basis names ("2*E13", "1/2 H1").
    """
    if algebra is None:
        algebra = special_linear(3)
    index = {name: k for k, name in enumerate(algebra.basis_names)}
    coords = [as_cyclo(0) for _ in range(algebra.dim)]
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or (not first and m.group("sign") is None):
            raise ValueError(f"cannot parse element expression at: {text[pos:]!r}")
        name = m.group("name")
        if name not in index:
            raise ValueError(f"unknown basis name {name!r}; "
                             f"expected one of {', '.join(algebra.basis_names)}")
        num = int(m.group("num")) if m.group("num") else 1
        den = int(m.group("den")) if m.group("den") else 1
        scalar = as_cyclo(Fraction(num, den))
        if m.group("sign") == "-":
            scalar = -scalar
        coords[index[name]] = coords[index[name]] + scalar
        pos = m.end()
        first = False
    if first:
        raise ValueError("empty element expression")
    return AlgebraElement(algebra, tuple(coords))
