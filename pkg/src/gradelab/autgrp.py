"""Inner and outer automorphisms of sl(n,C) with exact linear actions.

An automorphism stores a projective representative matrix A (no determinant
normalization, so everything stays inside small cyclotomic fields) together
with its induced (n^2-1) x (n^2-1) action matrix on the fixed basis.  Two
automorphisms are equal iff their action matrices are equal; the scalar
ambiguity of A cancels in the action.

Inner:  Ad_A X = A^-1 X A.      Outer:  Out_A X = -(A^-1 X A)^T.

Composition tracks representatives exactly:
  compose(f, g) applies g first; its representative is
  rep_g * rep_f            when g is inner,
  rep_g * rep_f^(-T)       when g is outer,
and the kind is inner iff the two kinds agree.  (Derived by expanding the
definitions; verified in the tests.)
"""
from __future__ import annotations

from .cyclo import CycloNumber, zeta
from .linalg import Matrix, Subspace
from .liealg import LieAlgebra, special_linear

INNER = "inner"
OUTER = "outer"

DEFAULT_ORDER_CAP = 96


class Automorphism:
    __slots__ = ("algebra", "kind", "rep", "action")

    def __init__(self, algebra: LieAlgebra, kind: str, rep: Matrix, action: Matrix | None = None):
        if kind not in (INNER, OUTER):
            raise ValueError(f"kind must be {INNER!r} or {OUTER!r}")
        if (rep.rows, rep.cols) != (algebra.n, algebra.n):
            raise ValueError("representative has the wrong shape")
        if action is None:
            action = _action_matrix(algebra, kind, rep)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "action", action)

    def __setattr__(self, name, value):
        raise AttributeError("Automorphism is immutable")

    def apply_coords(self, coords) -> tuple:
        return self.action.apply(coords)

    def apply_matrix(self, m: Matrix) -> Matrix:
        conj = self.rep.inverse() * m * self.rep
        return (-conj.transpose()) if self.kind == OUTER else conj

    def is_identity(self) -> bool:
        return self.action == Matrix.identity(self.algebra.dim)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.algebra.n == other.algebra.n and self.action == other.action

    def __hash__(self):
        return hash((self.algebra.n, self.action))

    def to_json(self) -> dict:
        return {"kind": self.kind, "rep": self.rep.to_json()}

    @classmethod
    def from_json(cls, data: dict, n: int | None = None) -> "Automorphism":
        rep = Matrix.from_json(data["rep"])
        algebra = special_linear(n if n is not None else rep.rows)
        return cls(algebra, data["kind"], rep)

    def __repr__(self):
        tag = "Ad" if self.kind == INNER else "Out"
        return f"{tag}({self.rep!r})"


def _action_matrix(algebra: LieAlgebra, kind: str, rep: Matrix) -> Matrix:
    rep_inv = rep.inverse()
    cols = []
    for b in algebra.basis:
        image = rep_inv * b * rep
        if kind == OUTER:
            image = -image.transpose()
        cols.append(algebra.from_matrix(image))
    dim = algebra.dim
    return Matrix(dim, dim, [cols[j][i] for i in range(dim) for j in range(dim)])


def make_ad(a: Matrix, algebra: LieAlgebra | None = None) -> Automorphism:
    algebra = algebra or special_linear(a.rows)
    return Automorphism(algebra, INNER, a)


def make_out(a: Matrix, algebra: LieAlgebra | None = None) -> Automorphism:
    algebra = algebra or special_linear(a.rows)
    return Automorphism(algebra, OUTER, a)


def identity_automorphism(n: int = 3) -> Automorphism:
    return make_ad(Matrix.identity(n))


def compose(f: Automorphism, g: Automorphism) -> Automorphism:
    """The automorphism "apply g, then f"."""
    if f.algebra.n != g.algebra.n:
        raise ValueError("automorphisms of different algebras")
    if g.kind == INNER:
        rep = g.rep * f.rep
    else:
        rep = g.rep * f.rep.transpose().inverse()
    kind = INNER if f.kind == g.kind else OUTER
    return Automorphism(f.algebra, kind, rep, action=f.action * g.action)


def inverse(f: Automorphism) -> Automorphism:
    if f.kind == INNER:
        rep = f.rep.inverse()
    else:
        rep = f.rep.transpose()
    return Automorphism(f.algebra, f.kind, rep, action=f.action.inverse())


def conjugate(h: Automorphism, g: Automorphism) -> Automorphism:
    """h^-1 . g . h (apply h, then g, then h^-1)."""
    return compose(inverse(h), compose(g, h))


def order(f: Automorphism, cap: int = DEFAULT_ORDER_CAP) -> int | None:
    """Multiplicative order of f, or None if it exceeds cap."""
    ident = Matrix.identity(f.algebra.dim)
    power = f.action
    for k in range(1, cap + 1):
        if power == ident:
            return k
        power = power * f.action
    return None


class InfiniteOrderError(ValueError):
    pass


def eigenspaces(f: Automorphism, cap: int = DEFAULT_ORDER_CAP) -> list[tuple[CycloNumber, Subspace]]:
    """Exact eigenpairs of a finite-order automorphism.

    Eigenvalues of an order-m automorphism are m-th roots of unity; each is
    tried and nonzero kernels are kept.  The spaces always sum to the whole
    algebra because the action is diagonalizable (finite order).
    """
    m = order(f, cap)
    if m is None:
        raise InfiniteOrderError(
            f"order exceeds cap {cap}; pass finite-order separating generators")
    dim = f.algebra.dim
    ident = Matrix.identity(dim)
    found = []
    total = 0
    for k in range(m):
        lam = zeta(m, k)
        kern = (f.action - ident.scale(lam)).kernel()
        if kern.dim:
            found.append((lam, kern))
            total += kern.dim
    if total != dim:
        raise ArithmeticError("eigenspaces do not fill the algebra")
    return found


class ClosureCapError(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"group closure exceeded cap of {cap} elements")
        self.cap = cap


def automorphism_closure(generators, cap: int = 10000) -> list[Automorphism]:
    """All products of the given automorphisms (a finite group), BFS order."""
    gens = list(generators)
    if not gens:
        return []
    seen: dict = {}
    start = identity_automorphism(gens[0].algebra.n)
    seen[start] = start
    frontier = [start]
    while frontier:
        nxt = []
        for elem in frontier:
            for g in gens:
                cand = compose(g, elem)
                if cand not in seen:
                    if len(seen) >= cap:
                        raise ClosureCapError(cap)
                    seen[cand] = cand
                    nxt.append(cand)
        frontier = nxt
    return list(seen)


# --- the named 3x3 matrices used throughout the catalog ---------------------

def clock_matrix() -> Matrix:
    """diag(1, w, w^2) with w a primitive cube root of unity."""
    w = zeta(3)
    return Matrix.diagonal([1, w, w * w])


def shift_matrix() -> Matrix:
    """Cyclic shift: e1 -> e3 -> e2 -> e1 (rows (0,1,0),(0,0,1),(1,0,0))."""
    return Matrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def cycle_matrix() -> Matrix:
    """Order-3 permutation matrix (same array as the shift)."""
    return Matrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def swap_matrix() -> Matrix:
    """Transposition of the last two coordinates."""
    return Matrix.from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]])


def quarter_phase_matrix() -> Matrix:
    """diag(1, i, i)."""
    i = zeta(4)
    return Matrix.diagonal([1, i, i])


def third_phase_matrix() -> Matrix:
    """diag(1, 1, w) with w a primitive cube root of unity."""
    return Matrix.diagonal([1, 1, zeta(3)])


def sylvester_matrix() -> Matrix:
    """The (unnormalized) Fourier matrix (w^(jk)); conjugates clock to shift."""
    w = zeta(3)
    return Matrix.from_rows([[w ** ((j * k) % 3) for k in range(3)] for j in range(3)])


NAMED_AUTOMORPHISMS = {
    "AdP": lambda: make_ad(clock_matrix()),
    "AdQ": lambda: make_ad(shift_matrix()),
    "AdB1": lambda: make_ad(cycle_matrix()),
    "AdB2": lambda: make_ad(swap_matrix()),
    "AdH": lambda: make_ad(quarter_phase_matrix()),
    "AdD": lambda: make_ad(third_phase_matrix()),
    "AdS": lambda: make_ad(sylvester_matrix()),
    "OutI": lambda: make_out(Matrix.identity(3)),
}


def named_automorphism(name: str) -> Automorphism:
    try:
        factory = NAMED_AUTOMORPHISMS[name]
    except KeyError:
        known = ", ".join(sorted(NAMED_AUTOMORPHISMS))
        raise ValueError(f"unknown automorphism {name!r}; known: {known}") from None
    return factory()
