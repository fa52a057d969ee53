"""Binary graded contractions: equation generation, solving, symmetry orbits.

Scaling each homogeneous block of a labeled grading by a parameter
eps_{ij} = eps_{ji} in {0,1} preserves the Jacobi identity iff the
parameters satisfy quadratic relations.  These are derived here from first
principles: for each basis triple the contracted Jacobi residual is
m1*T1 + m2*T2 + m3*T3 with T1+T2+T3 = 0, where each m is a product of two
eps variables, so exact rank analysis of the T vectors determines which
monomial relations are forced.  Over {0,1} every forced relation collapses
to an equality chain between monomials (a weighted relation a*m1 + b*m2 =
(a+b)*m3 with nonzero weights has only the constant binary solutions).

The independent ground truth is `jacobi_oracle`, a direct Jacobi check on
the contracted structure constants; the test suite verifies the generated
system against it exhaustively over the constrained variables.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

import numpy as np

from .cyclo import CycloNumber
from .linalg import Matrix, Subspace, vec_is_zero
from .liealg import jacobi_table_holds
from .gradings import Grading, format_label
from .normalizers import Permutation, PermutationGroup

DEFAULT_NODE_CAP = 2_000_000
NODE_CAP_ENV = "GRADELAB_NODE_CAP"


def pair_key(a, b):
    """Canonical unordered pair of labels."""
    return (a, b) if a <= b else (b, a)


def format_pair(pair) -> str:
    return f"{{{format_label(pair[0])},{format_label(pair[1])}}}"


class EpsilonAssignment:
    """A symmetric {0,1} valuation of all unordered label pairs."""

    __slots__ = ("values",)

    def __init__(self, values: dict):
        normalized = {}
        for (a, b), bit in values.items():
            if bit not in (0, 1):
                raise ValueError("epsilon values must be 0 or 1")
            normalized[pair_key(a, b)] = bit
        object.__setattr__(self, "values", normalized)

    def __setattr__(self, name, value):
        raise AttributeError("EpsilonAssignment is immutable")

    @classmethod
    def constant(cls, labels, bit: int) -> "EpsilonAssignment":
        labels = list(labels)
        return cls({pair_key(a, b): bit
                    for i, a in enumerate(labels) for b in labels[i:]})

    def of(self, a, b) -> int:
        return self.values[pair_key(a, b)]

    def __getitem__(self, pair) -> int:
        return self.values[pair_key(*pair)]

    def __eq__(self, other):
        if not isinstance(other, EpsilonAssignment):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    def to_json(self) -> list:
        return [[list(a), list(b), bit]
                for (a, b), bit in sorted(self.values.items())]

    def __repr__(self):
        ones = sum(self.values.values())
        return f"EpsilonAssignment({ones} of {len(self.values)} pairs on)"


@dataclass(frozen=True)
class Equation:
    """All listed monomials take a common value (or, if rhs_zero, value 0).

    A monomial is a pair (u, v) of variable indices, u <= v, standing for
    the product eps_u * eps_v.  Provenance records one basis triple that
    forced the relation and the pivot coordinates certifying the rank of
    its residual vectors.
    """

    monomials: tuple
    rhs_zero: bool
    triple: tuple
    pivot_coords: tuple
    rank: int

    def __str__(self):
        body = " = ".join(f"m({u},{v})" for u, v in self.monomials)
        return body + (" = 0" if self.rhs_zero else "")


class ContractionSystem:
    """The quadratic relations of a labeled grading over named pair variables."""

    __slots__ = ("grading", "variables", "var_index", "equations",
                 "active", "free", "_combo_tables")

    def __init__(self, grading: Grading, variables, equations, combo_tables):
        object.__setattr__(self, "grading", grading)
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(self, "var_index",
                           {p: i for i, p in enumerate(variables)})
        object.__setattr__(self, "equations", tuple(equations))
        in_eq = set()
        for eq in equations:
            for u, v in eq.monomials:
                in_eq.add(u)
                in_eq.add(v)
        object.__setattr__(self, "active", tuple(sorted(in_eq)))
        object.__setattr__(self, "free",
                           tuple(i for i in range(len(self.variables))
                                 if i not in in_eq))
        object.__setattr__(self, "_combo_tables", combo_tables)

    def __setattr__(self, name, value):
        raise AttributeError("ContractionSystem is immutable")

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    def mask_to_assignment(self, mask: int) -> EpsilonAssignment:
        return EpsilonAssignment({p: (mask >> i) & 1
                                  for i, p in enumerate(self.variables)})

    def assignment_to_mask(self, eps: EpsilonAssignment) -> int:
        mask = 0
        for i, p in enumerate(self.variables):
            mask |= eps[p] << i
        return mask

    def to_json(self) -> dict:
        return {
            "variables": [[list(a), list(b)] for a, b in self.variables],
            "free_variables": list(self.free),
            "equations": [{
                "monomials": [list(m) for m in eq.monomials],
                "rhs_zero": eq.rhs_zero,
                "triple": list(eq.triple),
                "pivot_coords": list(eq.pivot_coords),
                "rank": eq.rank,
            } for eq in self.equations],
        }

    def __repr__(self):
        return (f"ContractionSystem({self.num_variables} variables, "
                f"{len(self.equations)} equations, {len(self.free)} free)")


@dataclass(frozen=True)
class _ComboTable:
    """Per-triple oracle data: monomial factor variables and allowed codes.

    factor_vars holds three (u, v) pairs or None for a term whose T vector
    vanishes; allowed is an 8-bit mask over codes m1 | m2<<1 | m3<<2 of the
    binary combinations with zero residual.
    """

    triple: tuple
    factor_vars: tuple
    allowed: int


def _adapted_basis(g: Grading):
    """Flattened part bases: coordinate vectors, their part index, and names."""
    vectors, parts, names = [], [], []
    for i, part in enumerate(g.parts):
        for r, v in enumerate(part.basis):
            vectors.append(v)
            parts.append(i)
            suffix = f".{r}" if part.dim > 1 else ""
            names.append(f"L{format_label(g.labels[i])}{suffix}")
    return vectors, parts, names


def generate_equations(g: Grading) -> ContractionSystem:
    """Derive the monomial relations forced by Jacobi on the contracted bracket."""
    if g.labels is None:
        raise ValueError("grading must be labeled to generate contraction equations")
    algebra = g.algebra
    group = g.group
    labels = list(g.labels)
    realized = set(labels)
    variables = sorted(pair_key(a, b)
                       for i, a in enumerate(labels) for b in labels[i:])
    var_index = {p: i for i, p in enumerate(variables)}

    vectors, part_of, names = _adapted_basis(g)
    dim = algebra.dim

    def term(li, lj, lk, t_vec):
        """Monomial of eps_{ij} eps_{i+j,k}, or None if its T vector is void."""
        total = group.add(li, lj)
        if total not in realized:
            if not vec_is_zero(t_vec):
                raise ArithmeticError(
                    "bracket lands outside the realized labels; grading is invalid")
            return None
        if vec_is_zero(t_vec):
            return None
        u = var_index[pair_key(li, lj)]
        v = var_index[pair_key(total, lk)]
        return (u, v) if u <= v else (v, u)

    seen = {}
    equations = []
    combo_tables = []
    for a, b, c in itertools.combinations(range(len(vectors)), 3):
        xa, xb, xc = vectors[a], vectors[b], vectors[c]
        la, lb, lc = (labels[part_of[a]], labels[part_of[b]], labels[part_of[c]])
        t1 = algebra.bracket_coords(algebra.bracket_coords(xa, xb), xc)
        t2 = algebra.bracket_coords(algebra.bracket_coords(xb, xc), xa)
        t3 = algebra.bracket_coords(algebra.bracket_coords(xc, xa), xb)
        terms = [(term(la, lb, lc, t1), t1),
                 (term(lb, lc, la, t2), t2),
                 (term(lc, la, lb, t3), t3)]

        combo_tables.append(_ComboTable(
            triple=(names[a], names[b], names[c]),
            factor_vars=tuple(mono for mono, _ in terms),
            allowed=_allowed_mask(t1, t2, t3, dim)))

        merged: dict = {}
        for mono, t_vec in terms:
            if mono is None:
                continue
            if mono in merged:
                merged[mono] = [x + y for x, y in zip(merged[mono], t_vec)]
            else:
                merged[mono] = list(t_vec)
        coeffs = {mono: vec for mono, vec in merged.items() if not vec_is_zero(vec)}
        if len(coeffs) <= 1:
            # an isolated nonzero coefficient is impossible since T1+T2+T3 = 0
            if coeffs:
                raise ArithmeticError("Jacobi residual with a single surviving term")
            continue
        monomials = tuple(sorted(coeffs))
        rank, pivots = _rank_with_pivots(list(coeffs.values()), dim)
        key = monomials
        if key not in seen:
            eq = Equation(monomials=monomials, rhs_zero=False,
                          triple=(names[a], names[b], names[c]),
                          pivot_coords=pivots, rank=rank)
            seen[key] = eq
            equations.append(eq)
    return ContractionSystem(g, variables, equations, tuple(combo_tables))


def _allowed_mask(t1, t2, t3, dim: int) -> int:
    mask = 0
    for code in range(8):
        m1, m2, m3 = code & 1, (code >> 1) & 1, (code >> 2) & 1
        residual = [m1 * t1[r] + m2 * t2[r] + m3 * t3[r] for r in range(dim)]
        if vec_is_zero(residual):
            mask |= 1 << code
    return mask


def _rank_with_pivots(rows, dim: int):
    """Rank of the span of coefficient vectors and the pivot coordinates."""
    work = [list(r) for r in rows]
    pivots = []
    row = 0
    for col in range(dim):
        pivot = next((r for r in range(row, len(work))
                      if not work[r][col].is_zero()), None)
        if pivot is None:
            continue
        work[row], work[pivot] = work[pivot], work[row]
        inv = work[row][col].inverse()
        work[row] = [v * inv for v in work[row]]
        for r in range(len(work)):
            if r != row and not work[r][col].is_zero():
                f = work[r][col]
                work[r] = [v - f * w for v, w in zip(work[r], work[row])]
        pivots.append(col)
        row += 1
        if row == len(work):
            break
    return row, tuple(pivots)


# --- the contracted algebra and its Jacobi oracle ----------------------------

class ContractedStructure:
    """Structure constants of the grading-adapted basis with scaled blocks."""

    __slots__ = ("dim", "basis_names", "_table")

    def __init__(self, dim: int, basis_names, table: dict):
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "basis_names", tuple(basis_names))
        object.__setattr__(self, "_table", table)

    def __setattr__(self, name, value):
        raise AttributeError("ContractedStructure is immutable")

    def table(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self._table.get((i, j), {})
        flipped = self._table.get((j, i), {})
        return {k: -c for k, c in flipped.items()}


@lru_cache(maxsize=8)
def _uncontracted_adapted(g: Grading):
    """Brackets of the adapted basis in its own coordinates, plus part labels."""
    vectors, part_of, names = _adapted_basis(g)
    dim = g.algebra.dim
    basis_matrix = Matrix(dim, dim,
                          [vectors[r][c] for r in range(dim) for c in range(dim)])
    to_adapted = basis_matrix.inverse().transpose()
    table = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            br = g.algebra.bracket_coords(vectors[i], vectors[j])
            coords = to_adapted.apply(br)
            entry = {k: c for k, c in enumerate(coords) if not c.is_zero()}
            table[(i, j)] = entry
    return vectors, part_of, tuple(names), table


def contracted_structure(g: Grading, eps: EpsilonAssignment) -> ContractedStructure:
    """Structure constants with each block (i,j) scaled by eps of its labels."""
    if g.labels is None:
        raise ValueError("grading must be labeled to contract it")
    _, part_of, names, table = _uncontracted_adapted(g)
    scaled = {}
    for (i, j), entry in table.items():
        bit = eps.of(g.labels[part_of[i]], g.labels[part_of[j]])
        if bit:
            scaled[(i, j)] = entry
        else:
            scaled[(i, j)] = {}
    return ContractedStructure(g.algebra.dim, names, scaled)


def jacobi_oracle(candidate: ContractedStructure) -> bool:
    """Ground truth: does the scaled bracket satisfy the Jacobi identity."""
    return jacobi_table_holds(candidate.dim, candidate.table)


# --- exhaustive binary sweeps (numpy) ----------------------------------------

def _bit_columns(masks: np.ndarray, index: int) -> np.ndarray:
    return (masks >> np.uint64(index)) & np.uint64(1)


def sweep_equations(system: ContractionSystem, chunk_bits: int = 20) -> np.ndarray:
    """All assignments of the active variables satisfying every equation.

    Enumerates 2^len(active) assignments by brute force; returns the sorted
    masks (bits positioned at the variable indices, free bits zero).
    """
    active = system.active
    n = len(active)
    if n > 30:
        raise ValueError(f"brute-force sweep over 2^{n} assignments refused")
    keep = []
    total = 1 << n
    chunk = 1 << min(chunk_bits, n)
    for start in range(0, total, chunk):
        compact = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        ok = np.ones(compact.shape, dtype=bool)
        cols = {v: _bit_columns(compact, pos).astype(bool)
                for pos, v in enumerate(active)}
        for eq in system.equations:
            vals = [cols[u] & cols[v] for u, v in eq.monomials]
            if eq.rhs_zero:
                for val in vals:
                    ok &= ~val
            else:
                first = vals[0]
                for val in vals[1:]:
                    ok &= first == val
            if not ok.any():
                break
        keep.append(compact[ok])
    compact_masks = np.concatenate(keep) if keep else np.zeros(0, dtype=np.uint64)
    return _spread_bits(np.sort(compact_masks), active)


def sweep_oracle(system: ContractionSystem, pin: int = 1,
                 chunk_bits: int = 20) -> np.ndarray:
    """All active assignments passing the per-triple residual tables.

    Independent route: uses only exact residual evaluations of the Jacobi
    T vectors, never the generated equations.  Variables outside the active
    set are pinned to `pin`; pinned-variable irrelevance is a structural
    fact (their blocks bracket to zero) asserted in the test suite.
    """
    active = system.active
    n = len(active)
    if n > 30:
        raise ValueError(f"brute-force sweep over 2^{n} assignments refused")
    position = {v: pos for pos, v in enumerate(active)}
    tables = []
    for ct in system._combo_tables:
        if ct.allowed == 0xFF:
            continue
        factor_positions = []
        for mono in ct.factor_vars:
            if mono is None:
                factor_positions.append(None)
                continue
            u, v = mono
            factor_positions.append((position.get(u), position.get(v)))
        tables.append((factor_positions, ct.allowed))
    keep = []
    total = 1 << n
    chunk = 1 << min(chunk_bits, n)
    pin_bool = bool(pin)
    for start in range(0, total, chunk):
        compact = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        ok = np.ones(compact.shape, dtype=bool)
        col_cache: dict = {}

        def col(pos):
            if pos not in col_cache:
                col_cache[pos] = _bit_columns(compact, pos).astype(bool)
            return col_cache[pos]

        def factor(pos):
            if pos is None:
                return np.full(compact.shape, pin_bool, dtype=bool)
            return col(pos)

        for factor_positions, allowed in tables:
            code = np.zeros(compact.shape, dtype=np.uint8)
            for slot, mono in enumerate(factor_positions):
                if mono is None:
                    continue  # void term: its monomial never enters the residual
                pu, pv = mono
                code |= (factor(pu) & factor(pv)).astype(np.uint8) << np.uint8(slot)
            table_bits = np.array([(allowed >> c) & 1 for c in range(8)],
                                  dtype=bool)
            ok &= table_bits[code]
            if not ok.any():
                break
        keep.append(compact[ok])
    compact_masks = np.concatenate(keep) if keep else np.zeros(0, dtype=np.uint64)
    return _spread_bits(np.sort(compact_masks), active)


def _spread_bits(compact: np.ndarray, positions) -> np.ndarray:
    """Move bit p of each compact mask to bit positions[p]."""
    out = np.zeros(compact.shape, dtype=np.uint64)
    for pos, target in enumerate(positions):
        out |= ((compact >> np.uint64(pos)) & np.uint64(1)) << np.uint64(target)
    return out


# --- the backtracking solver --------------------------------------------------

class NodeCapExceeded(RuntimeError):
    def __init__(self, cap: int, nodes: int, solutions_so_far: int):
        super().__init__(
            f"solver exceeded the node cap ({nodes} >= {cap}); "
            f"{solutions_so_far} solutions found before stopping")
        self.cap = cap
        self.nodes = nodes
        self.solutions_so_far = solutions_so_far


class SolutionSet:
    """The complete binary solution set, factored over unconstrained pairs.

    Stores one mask per solution of the constrained (active) variables; the
    free variables never occur in an equation, so the full set is the
    product of the stored masks with every free-bit pattern.  Iteration and
    membership honor the full product set.
    """

    __slots__ = ("system", "active_masks")

    def __init__(self, system: ContractionSystem, active_masks: np.ndarray):
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "active_masks", active_masks)

    def __setattr__(self, name, value):
        raise AttributeError("SolutionSet is immutable")

    @property
    def active_count(self) -> int:
        return int(self.active_masks.shape[0])

    def __len__(self) -> int:
        return self.active_count << len(self.system.free)

    def contains_mask(self, mask: int) -> bool:
        free_bits = 0
        for f in self.system.free:
            free_bits |= 1 << f
        active_part = np.uint64(mask & ~free_bits)
        idx = np.searchsorted(self.active_masks, active_part)
        return bool(idx < self.active_masks.shape[0]
                    and self.active_masks[idx] == active_part)

    def __contains__(self, eps: EpsilonAssignment) -> bool:
        return self.contains_mask(self.system.assignment_to_mask(eps))

    def masks(self, limit: int | None = None):
        """Full solution masks (active pattern + free-cube pattern), lazily."""
        free = self.system.free
        count = 0
        for base in self.active_masks:
            base = int(base)
            for bits in range(1 << len(free)):
                mask = base
                for pos, f in enumerate(free):
                    mask |= ((bits >> pos) & 1) << f
                yield mask
                count += 1
                if limit is not None and count >= limit:
                    return

    def assignments(self, limit: int | None = None):
        for mask in self.masks(limit):
            yield self.system.mask_to_assignment(mask)

    def __iter__(self):
        return self.assignments()

    def to_json(self, expand_limit: int = 0) -> dict:
        data = {
            "variables": [[list(a), list(b)] for a, b in self.system.variables],
            "free_variables": list(self.system.free),
            "active_solution_masks": [int(m) for m in self.active_masks],
            "total_solutions": len(self),
        }
        if expand_limit:
            data["solutions"] = [a.to_json()
                                 for a in self.assignments(expand_limit)]
        return data

    def __repr__(self):
        return (f"SolutionSet({self.active_count} constrained patterns x "
                f"2^{len(self.system.free)} free = {len(self)})")


def solve_binary(system: ContractionSystem,
                 node_cap: int | None = None,
                 jobs: int = 1) -> SolutionSet:
    """Enumerate every binary solution by DFS with unit propagation.

    Branches on the constrained variables only (most-constrained-first,
    index as tie-break); free variables are carried symbolically by the
    returned SolutionSet.  Raises NodeCapExceeded past the node budget
    (argument, else the GRADELAB_NODE_CAP environment variable, else a
    built-in default).  With jobs > 1 the search tree is split at its top
    into fixed-prefix branches solved concurrently; the result is identical
    for every jobs value, and the node budget then applies per branch.
    """
    if node_cap is None:
        env = os.environ.get(NODE_CAP_ENV)
        node_cap = int(env) if env else DEFAULT_NODE_CAP
    if jobs < 1:
        raise ValueError("jobs must be at least 1")

    active = list(system.active)
    var_slot = {v: s for s, v in enumerate(active)}
    n = len(active)

    # monomials join equality components; a component is satisfied when all
    # its member monomials evaluate to one common value
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    zero_monos = set()
    for eq in system.equations:
        for mono in eq.monomials:
            parent.setdefault(mono, mono)
        if eq.rhs_zero:
            zero_monos.update(eq.monomials)
        first = eq.monomials[0]
        for mono in eq.monomials[1:]:
            union(first, mono)

    components: dict = {}
    for mono in parent:
        components.setdefault(find(mono), []).append(mono)
    comp_list = list(components.values())
    comp_of_mono = {}
    for ci, monos in enumerate(comp_list):
        for mono in monos:
            comp_of_mono[mono] = ci
    forced_zero = [False] * len(comp_list)
    for mono in zero_monos:
        forced_zero[comp_of_mono[mono]] = True

    monos_of_var: list = [[] for _ in range(n)]
    for mono in parent:
        u, v = mono
        monos_of_var[var_slot[u]].append(mono)
        if v != u:
            monos_of_var[var_slot[v]].append(mono)

    occurrence = [len(m) for m in monos_of_var]
    branch_order = sorted(range(n), key=lambda s: (-occurrence[s], s))

    def enumerate_subtree(seed):
        """All solutions whose leading branch slots carry the seed bits."""
        values = [-1] * n           # per active slot
        comp_values = [0 if z else -1 for z in forced_zero]
        solutions: list = []
        nodes = 0

        def mono_value(mono):
            u, v = mono
            a = values[var_slot[u]]
            if a == 0:
                return 0
            b = values[var_slot[v]]
            if b == 0:
                return 0
            if a == 1 and b == 1:
                return 1
            return -1

        def propagate(trail, comp_trail, queue) -> bool:
            while queue:
                slot = queue.pop()
                for mono in monos_of_var[slot]:
                    ci = comp_of_mono[mono]
                    val = mono_value(mono)
                    cur = comp_values[ci]
                    if val != -1:
                        if cur == -1:
                            comp_values[ci] = val
                            comp_trail.append(ci)
                            cur = val
                        elif cur != val:
                            return False
                    if cur == 1:
                        # every factor of every member monomial must be 1
                        for member in comp_list[ci]:
                            for var in member:
                                s = var_slot[var]
                                if values[s] == 0:
                                    return False
                                if values[s] == -1:
                                    values[s] = 1
                                    trail.append(s)
                                    queue.append(s)
                    elif cur == 0:
                        # a member with one factor already 1 forces the other to 0
                        for member in comp_list[ci]:
                            u, v = member
                            su, sv = var_slot[u], var_slot[v]
                            if values[su] == 1 and values[sv] == 1:
                                return False
                            if values[su] == 1 and values[sv] == -1:
                                values[sv] = 0
                                trail.append(sv)
                                queue.append(sv)
                            elif values[sv] == 1 and values[su] == -1:
                                values[su] = 0
                                trail.append(su)
                                queue.append(su)
            return True

        def assign(slot, bit, trail, comp_trail) -> bool:
            if values[slot] != -1:
                return values[slot] == bit
            values[slot] = bit
            trail.append(slot)
            return propagate(trail, comp_trail, [slot])

        def undo(trail, comp_trail):
            for slot in trail:
                values[slot] = -1
            for ci in comp_trail:
                comp_values[ci] = -1

        def dfs():
            nonlocal nodes
            nodes += 1
            if nodes > node_cap:
                raise NodeCapExceeded(node_cap, nodes, len(solutions))
            slot = next((s for s in branch_order if values[s] == -1), None)
            if slot is None:
                mask = 0
                for s, v in enumerate(active):
                    if values[s] == 1:
                        mask |= 1 << v
                solutions.append(mask)
                return
            for bit in (0, 1):
                trail: list = []
                comp_trail: list = []
                if assign(slot, bit, trail, comp_trail):
                    dfs()
                undo(trail, comp_trail)

        trail: list = []
        comp_trail: list = []
        ok = True
        for slot, bit in seed:
            if not assign(slot, bit, trail, comp_trail):
                ok = False
                break
        if ok:
            dfs()
        return solutions

    if jobs == 1 or n == 0:
        solutions = enumerate_subtree(())
    else:
        split = min((jobs - 1).bit_length(), n)
        prefixes = [tuple(zip(branch_order[:split], _bits(code, split)))
                    for code in range(1 << split)]
        import concurrent.futures
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            solutions = []
            for chunk in pool.map(enumerate_subtree, prefixes):
                solutions.extend(chunk)
    masks = np.array(sorted(solutions), dtype=np.uint64)
    return SolutionSet(system, masks)


def _bits(code: int, width: int) -> tuple:
    return tuple((code >> i) & 1 for i in range(width))


# --- normalizer symmetry on solution sets -------------------------------------

def pair_variable_permutation(perm: Permutation, system: ContractionSystem) -> list:
    """How a part permutation pushes the pair variables around.

    Entry k is the index of the variable that position k maps to, i.e. the
    pushforward sends bit k of a solution mask to bit result[k].
    """
    g = system.grading
    if perm.degree != g.num_parts:
        raise ValueError("permutation degree does not match the grading")
    label_map = {g.labels[i]: g.labels[perm(i)] for i in range(g.num_parts)}
    result = []
    for a, b in system.variables:
        image = pair_key(label_map[a], label_map[b])
        result.append(system.var_index[image])
    return result


def apply_variable_permutation(masks: np.ndarray, varperm) -> np.ndarray:
    """Push an array of solution masks forward along a variable permutation."""
    out = np.zeros(masks.shape, dtype=np.uint64)
    for src, dst in enumerate(varperm):
        out |= ((masks >> np.uint64(src)) & np.uint64(1)) << np.uint64(dst)
    return out


def is_invariant(solutions: SolutionSet, quotient: PermutationGroup) -> bool:
    """Exact check that every pushforward maps the solution set onto itself.

    Free bits are permuted among themselves (symmetries preserve the zero
    blocks), so invariance of the factored set reduces to invariance of the
    constrained patterns; this is checked for every group element.
    """
    system = solutions.system
    base = solutions.active_masks
    active_set = set(int(m) for m in base)
    free_set = set(system.free)
    for perm in quotient.elements:
        varperm = pair_variable_permutation(perm, system)
        for f in system.free:
            if varperm[f] not in free_set:
                return False
        moved = apply_variable_permutation(base, varperm)
        if set(int(m) for m in moved) != active_set:
            return False
    return True


@dataclass(frozen=True)
class Orbit:
    representative: int   # lexicographically least solution mask in the orbit
    size: int


def symmetry_orbits(solutions: SolutionSet, quotient: PermutationGroup,
                    include_free: bool = True,
                    materialize_cap: int = 1 << 22) -> list:
    """Partition the solution set into orbits of the quotient action.

    Returns Orbit records sorted by representative mask.  With include_free
    the whole product set is materialized (sets beyond materialize_cap are
    refused to keep memory bounded); without it the orbits are those of the
    constrained patterns alone, i.e. solutions with every unconstrained
    pair switched off, a subset closed under the action.
    """
    system = solutions.system
    if include_free:
        total = len(solutions)
        if total > materialize_cap:
            raise ValueError(
                f"solution set of size {total} exceeds the materialization cap "
                f"{materialize_cap}; pass include_free=False")
        all_masks = np.fromiter(solutions.masks(), dtype=np.uint64, count=total)
        all_masks = np.sort(all_masks)
    else:
        all_masks = solutions.active_masks
    varperms = [pair_variable_permutation(p, system) for p in quotient.elements]

    # iterated minimum over images: label each solution with the least mask
    # reachable from it, propagating until stable
    labels = all_masks.copy()
    changed = True
    while changed:
        changed = False
        for vp in varperms:
            moved = apply_variable_permutation(all_masks, vp)
            idx = np.searchsorted(all_masks, moved)
            if np.any(idx >= all_masks.shape[0]) or \
                    np.any(all_masks[np.minimum(idx, all_masks.shape[0] - 1)] != moved):
                raise ValueError("solution set is not invariant under the quotient")
            lower = np.minimum(labels, labels[idx])
            if not np.array_equal(lower, labels):
                labels = lower
                changed = True
            # propagate backwards as well so labels flow both directions
            back = labels.copy()
            np.minimum.at(back, idx, labels)
            if not np.array_equal(back, labels):
                labels = back
                changed = True
    reps, counts = np.unique(labels, return_counts=True)
    return [Orbit(int(r), int(c)) for r, c in zip(reps, counts)]
