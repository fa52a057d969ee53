"""Golden verification suite: every published claim, recomputed and checked.

Each check is independent and returns a CheckResult; run_all executes the
requested subset in order and reports one pass/fail line per item.  Shared
intermediate objects (catalog gradings, quotient groups, equation systems)
are computed once per process through a lazy workbench.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import contractions as con
from .autgrp import (automorphism_closure, compose, identity_automorphism,
                     make_ad, make_out, named_automorphism)
from .cyclo import CycloNumber, root_of_unity, zeta
from .gradings import (AbelianGroup, catalog, common_eigenspaces,
                       mad_group_spec, search_labeling, verify_grading,
                       verify_labeling, _expected_parts)
from .liealg import special_linear
from .linalg import Matrix, Subspace, as_cyclo
from .normalizers import (Permutation, catalog_normalizer_generators,
                          induced_permutation, inner_subquotient,
                          linearize_on_labels, quotient_group)

SEED = 0x6C3A


@dataclass(frozen=True)
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{self.number}] {verdict}  {self.title}: {self.detail} ({self.seconds:.1f}s)"


class _Workbench:
    """Lazily computed shared state for the checks."""

    def __init__(self):
        self._quotients = {}
        self._inner = {}
        self._systems = {}
        self._solutions = {}

    def quotient(self, name):
        if name not in self._quotients:
            entry = catalog(name)
            self._quotients[name] = quotient_group(
                entry.spec, entry.grading, catalog_normalizer_generators(name))
        return self._quotients[name]

    def inner(self, name):
        if name not in self._inner:
            entry = catalog(name)
            self._inner[name] = inner_subquotient(
                entry.spec, entry.grading, catalog_normalizer_generators(name))
        return self._inner[name]

    def system(self, name):
        if name not in self._systems:
            self._systems[name] = con.generate_equations(catalog(name).grading)
        return self._systems[name]

    def solutions(self, name):
        if name not in self._solutions:
            self._solutions[name] = con.solve_binary(self.system(name))
        return self._solutions[name]


def check_1(bench: _Workbench) -> CheckResult:
    """Common eigenspaces of each generating set equal the published parts."""
    t0 = time.time()
    details = []
    for name in ("g1", "g2", "g3", "g4"):
        entry = catalog(name)
        fresh = common_eigenspaces(entry.spec.separating_generators)
        expected = _expected_parts(name)
        if set(fresh.parts) != set(expected):
            return CheckResult(1, "fine grading reproduction", False,
                               f"{name}: eigenspace decomposition differs "
                               f"from the published parts", time.time() - t0)
        if tuple(entry.grading.parts) != tuple(expected):
            return CheckResult(1, "fine grading reproduction", False,
                               f"{name}: catalog parts out of published order",
                               time.time() - t0)
        details.append(f"{name} dims {list(entry.grading.part_dims)}")
    g1 = catalog("g1").grading
    if sorted(g1.part_dims, reverse=True) != [2, 1, 1, 1, 1, 1, 1]:
        return CheckResult(1, "fine grading reproduction", False,
                           "g1 does not have dims {2,1^6}", time.time() - t0)
    return CheckResult(1, "fine grading reproduction", True,
                       "; ".join(details), time.time() - t0)


def check_2(bench: _Workbench) -> CheckResult:
    """Grading axiom and labelings, including the two searched ones."""
    t0 = time.time()
    for name in ("g1", "g2", "g3", "g4"):
        cert = verify_grading(catalog(name).grading)
        if not cert.ok:
            return CheckResult(2, "grading axiom and labelings", False,
                               f"{name}: {cert.violation}", time.time() - t0)
    published_groups = {"g2": (2, 2, 2), "g3": (8,), "g4": (3, 3)}
    for name, orders in published_groups.items():
        g = catalog(name).grading
        if g.group.cyclic_orders != orders:
            return CheckResult(2, "grading axiom and labelings", False,
                               f"{name}: catalog group is {g.group}, expected "
                               f"{orders}", time.time() - t0)
        if not verify_labeling(g, g.group, g.labels):
            return CheckResult(2, "grading axiom and labelings", False,
                               f"{name}: published labels fail additivity",
                               time.time() - t0)
    g1 = catalog("g1").grading
    found = []
    for orders in ((3, 3), (7,)):
        group = AbelianGroup(orders)
        labels = search_labeling(g1, group)
        if labels is None or not verify_labeling(g1, group, labels):
            return CheckResult(2, "grading axiom and labelings", False,
                               f"g1: no valid labeling over {group}",
                               time.time() - t0)
        found.append(str(group))
    return CheckResult(2, "grading axiom and labelings", True,
                       "verified g1-g4; published labels for g2,g3,g4; "
                       f"g1 labeled over {found[0]} and {found[1]}",
                       time.time() - t0)


def check_3(bench: _Workbench) -> CheckResult:
    """MAD-group cardinalities for the two finite groups."""
    t0 = time.time()
    pauli = automorphism_closure([named_automorphism("AdP"),
                                  named_automorphism("AdQ")])
    if len(pauli) != 9:
        return CheckResult(3, "MAD-group cardinalities", False,
                           f"closure of {{AdP, AdQ}} has {len(pauli)} "
                           "elements, expected 9", time.time() - t0)
    g2 = mad_group_spec("g2")
    close = automorphism_closure(g2.separating_generators)
    if len(close) != 8:
        return CheckResult(3, "MAD-group cardinalities", False,
                           f"closure of the g2 generators has {len(close)} "
                           "elements, expected 8", time.time() - t0)
    if set(close) != set(g2.elements):
        return CheckResult(3, "MAD-group cardinalities", False,
                           "g2 closure disagrees with the stored element list",
                           time.time() - t0)
    return CheckResult(3, "MAD-group cardinalities", True,
                       "|<AdP,AdQ>| = 9; |G2| = 8", time.time() - t0)


def check_4(bench: _Workbench) -> CheckResult:
    """Normalizer quotient orders against the published golden values."""
    t0 = time.time()
    golden = {"g1": 12, "g2": 18, "g3": 4, "g4": 48}
    computed = {name: bench.quotient(name).order for name in golden}
    failures = []
    for name, want in golden.items():
        if computed[name] != want:
            q = bench.quotient(name)
            profile = q.element_order_profile()
            extra = ""
            bad_order = max(profile)
            if want % bad_order:
                witness = next(p for p in q.elements if p.order() == bad_order)
                extra = (f"; an element of order {bad_order} exists "
                         f"({witness.cycle_notation()}), and {bad_order} does "
                         f"not divide {want}, so {want} is impossible")
            failures.append(
                f"{name}: computed {computed[name]} != published {want} "
                f"(element-order profile {dict(sorted(profile.items()))}{extra})")
    q3 = bench.quotient("g3")
    if not all(p.order() in (1, 2) for p in q3.elements):
        failures.append("g3: an element of order > 2 exists")
    if failures:
        return CheckResult(4, "normalizer quotient orders", False,
                           "; ".join(failures), time.time() - t0)
    return CheckResult(4, "normalizer quotient orders", True,
                       f"orders {computed}", time.time() - t0)


def check_5(bench: _Workbench) -> CheckResult:
    """Inner subquotients: order 6 on g1; SL(2,Z3) on g4."""
    t0 = time.time()
    i1 = bench.inner("g1")
    if i1.order != 6:
        return CheckResult(5, "inner subquotients", False,
                           f"g1 inner subquotient has order {i1.order}, "
                           "expected 6", time.time() - t0)
    g1 = catalog("g1").grading
    images = [induced_permutation(named_automorphism(n), g1)
              for n in ("AdB1", "AdB2")]
    generated = _permutation_closure(images, g1.num_parts)
    if generated != set(i1.elements):
        return CheckResult(5, "inner subquotients", False,
                           "g1 inner subquotient is not generated by the "
                           "images of AdB1, AdB2", time.time() - t0)
    i4 = bench.inner("g4")
    if i4.order != 24:
        return CheckResult(5, "inner subquotients", False,
                           f"g4 inner subquotient has order {i4.order}, "
                           "expected 24", time.time() - t0)
    g4 = catalog("g4").grading
    mats = set()
    for p in i4.elements:
        m = linearize_on_labels(p, g4)
        if m is None:
            return CheckResult(5, "inner subquotients", False,
                               f"{p.cycle_notation()} does not act linearly "
                               "on the labels", time.time() - t0)
        mats.add(m)
    sl2 = {((a, b), (c, d))
           for a, b, c, d in itertools.product(range(3), repeat=4)
           if (a * d - b * c) % 3 == 1}
    if mats != sl2:
        return CheckResult(5, "inner subquotients", False,
                           f"linearized image has {len(mats)} matrices, "
                           f"expected the {len(sl2)} of determinant 1",
                           time.time() - t0)
    return CheckResult(5, "inner subquotients", True,
                       "g1 inner = <AdB1, AdB2> of order 6; g4 inner "
                       "linearizes onto all 24 determinant-1 matrices over Z3",
                       time.time() - t0)


def _permutation_closure(gens, degree):
    seen = {Permutation.identity(degree)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = q.compose(p)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return seen


def check_6(bench: _Workbench) -> CheckResult:
    """Constraints on induced permutations."""
    t0 = time.time()
    for name in ("g1", "g2"):
        g = catalog(name).grading
        two_dim = [i for i, d in enumerate(g.part_dims) if d == 2]
        if len(two_dim) != 1:
            return CheckResult(6, "permutation constraints", False,
                               f"{name}: expected exactly one 2-dim part",
                               time.time() - t0)
        fixed = two_dim[0]
        for p in bench.quotient(name).elements:
            if p(fixed) != fixed:
                return CheckResult(6, "permutation constraints", False,
                                   f"{name}: {p.cycle_notation()} moves the "
                                   "2-dim part", time.time() - t0)
    checked_pairs = 0
    for name in ("g1", "g2", "g3", "g4"):
        g = catalog(name).grading
        gens = catalog_normalizer_generators(name)
        for f, h in itertools.product(gens, repeat=2):
            lhs = induced_permutation(compose(f, h), g)
            rhs = induced_permutation(f, g).compose(induced_permutation(h, g))
            if lhs != rhs:
                return CheckResult(6, "permutation constraints", False,
                                   f"{name}: induced permutation is not "
                                   "functorial on a generator pair",
                                   time.time() - t0)
            checked_pairs += 1
    for name in ("g1", "g2", "g3", "g4"):
        entry = catalog(name)
        members = entry.spec.elements or entry.spec.probes
        for h in members:
            p = induced_permutation(h, entry.grading)
            if not p.is_identity():
                return CheckResult(6, "permutation constraints", False,
                                   f"{name}: a group element permutes its own "
                                   f"grading ({p.cycle_notation()})",
                                   time.time() - t0)
    return CheckResult(6, "permutation constraints", True,
                       "2-dim parts fixed on g1, g2; functoriality on "
                       f"{checked_pairs} generator pairs; group elements act "
                       "trivially on their own parts", time.time() - t0)


def check_7(bench: _Workbench) -> CheckResult:
    """Equation solutions equal the Jacobi-oracle-filtered assignments."""
    t0 = time.time()
    rng = random.Random(SEED)
    details = []
    for name in ("g2", "g4"):
        system = bench.system(name)
        n_active = len(system.active)
        if n_active > 24:
            return CheckResult(7, "contraction oracle equivalence", False,
                               f"{name}: {n_active} constrained variables, "
                               "too many to sweep", time.time() - t0)
        by_equations = con.sweep_equations(system)
        by_oracle = con.sweep_oracle(system, pin=1)
        by_oracle_0 = con.sweep_oracle(system, pin=0)
        if not np.array_equal(by_oracle, by_oracle_0):
            return CheckResult(7, "contraction oracle equivalence", False,
                               f"{name}: pinned value of an unconstrained "
                               "pair changed the oracle sweep", time.time() - t0)
        if not np.array_equal(by_equations, by_oracle):
            sym = np.setxor1d(by_equations, by_oracle)
            return CheckResult(7, "contraction oracle equivalence", False,
                               f"{name}: routes disagree on {sym.shape[0]} "
                               "assignments", time.time() - t0)
        solved = bench.solutions(name)
        if not np.array_equal(solved.active_masks, by_equations):
            return CheckResult(7, "contraction oracle equivalence", False,
                               f"{name}: backtracking solver disagrees with "
                               "the exhaustive sweep", time.time() - t0)
        grading = catalog(name).grading
        spot = 0
        for _ in range(200):
            mask = rng.getrandbits(system.num_variables)
            eps = system.mask_to_assignment(mask)
            direct = con.jacobi_oracle(con.contracted_structure(grading, eps))
            if direct != solved.contains_mask(mask):
                return CheckResult(7, "contraction oracle equivalence", False,
                                   f"{name}: direct Jacobi check disagrees on "
                                   f"mask {mask}", time.time() - t0)
            spot += 1
        details.append(f"{name}: 2^{n_active} assignments swept, "
                       f"{by_equations.shape[0]} solutions, {spot} direct "
                       "Jacobi spot checks")
    return CheckResult(7, "contraction oracle equivalence", True,
                       "; ".join(details), time.time() - t0)


def check_8(bench: _Workbench) -> CheckResult:
    """Solution sets are invariant under the quotient action."""
    t0 = time.time()
    rng = random.Random(SEED + 8)
    details = []
    for name in ("g1", "g2", "g3", "g4"):
        system = bench.system(name)
        solved = bench.solutions(name)
        q = bench.quotient(name)
        if not con.is_invariant(solved, q):
            return CheckResult(8, "solution symmetry invariance", False,
                               f"{name}: a pushforward leaves the solution set",
                               time.time() - t0)
        varperms = [con.pair_variable_permutation(p, system)
                    for p in q.elements]
        free_bits = list(system.free)
        for _ in range(50):
            base = int(solved.active_masks[rng.randrange(
                solved.active_masks.shape[0])])
            for f in free_bits:
                base |= rng.randint(0, 1) << f
            for vp in varperms:
                image = 0
                for src, dst in enumerate(vp):
                    image |= ((base >> src) & 1) << dst
                if not solved.contains_mask(image):
                    return CheckResult(8, "solution symmetry invariance", False,
                                       f"{name}: pushforward of solution "
                                       f"{base} is not a solution",
                                       time.time() - t0)
        include_free = len(solved) <= (1 << 22)
        orbits = con.symmetry_orbits(solved, q, include_free=include_free)
        total = sum(o.size for o in orbits)
        want = len(solved) if include_free else solved.active_count
        if total != want:
            return CheckResult(8, "solution symmetry invariance", False,
                               f"{name}: orbit sizes sum to {total}, "
                               f"not {want}", time.time() - t0)
        bad = [o for o in orbits if q.order % o.size]
        if bad:
            return CheckResult(8, "solution symmetry invariance", False,
                               f"{name}: orbit size {bad[0].size} does not "
                               f"divide {q.order}", time.time() - t0)
        scope = "all" if include_free else "constrained-pattern"
        details.append(f"{name}: {len(orbits)} orbits of {total} {scope} "
                       "solutions")
    return CheckResult(8, "solution symmetry invariance", True,
                       "; ".join(details), time.time() - t0)


def check_9(bench: _Workbench) -> CheckResult:
    """Substrate properties: scalars, linear algebra, automorphism action."""
    t0 = time.time()
    rng = random.Random(SEED + 9)
    orders = (1, 3, 4, 5, 6, 8, 12)

    def rand_cyclo():
        n = rng.choice(orders)
        x = CycloNumber.zero(n)
        for _ in range(rng.randint(1, 3)):
            k = rng.randrange(max(1, n))
            x = x + zeta(n, k) * Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        return x

    for _ in range(300):
        a, b, c = rand_cyclo(), rand_cyclo(), rand_cyclo()
        if (a + b) * c != a * c + b * c or a * b != b * a or \
                (a * b) * c != a * (b * c):
            return CheckResult(9, "substrate properties", False,
                               "a cyclotomic field axiom failed",
                               time.time() - t0)
    for _ in range(200):
        a = rand_cyclo()
        if a.is_zero():
            continue
        if a * a.inverse() != CycloNumber.one(a.order):
            return CheckResult(9, "substrate properties", False,
                               "inverse round trip failed", time.time() - t0)
    for _ in range(300):
        a, b = rand_cyclo(), rand_cyclo()
        for lhs, rhs in ((complex(a * b), complex(a) * complex(b)),
                         (complex(a + b), complex(a) + complex(b))):
            if abs(lhs - rhs) > 1e-9:
                return CheckResult(9, "substrate properties", False,
                                   f"numeric embedding off by {abs(lhs - rhs)}",
                                   time.time() - t0)

    def rand_subspace():
        k = rng.randint(1, 5)
        vecs = [[Fraction(rng.randint(-3, 3)) for _ in range(8)]
                for _ in range(k)]
        return Subspace.from_vectors(8, [[as_cyclo(v) for v in row]
                                        for row in vecs])

    for _ in range(100):
        u, w = rand_subspace(), rand_subspace()
        if u.dim + w.dim != u.add(w).dim + u.intersect(w).dim:
            return CheckResult(9, "substrate properties", False,
                               "dimension formula failed", time.time() - t0)

    algebra = special_linear(3)
    pool = [named_automorphism(n) for n in
            ("AdP", "AdQ", "AdB1", "AdB2", "AdH", "AdS", "AdD", "OutI")]
    while len(pool) < 14:
        entries = [[Fraction(rng.randint(-2, 2)) for _ in range(3)]
                   for _ in range(3)]
        m = Matrix(3, 3, [as_cyclo(v) for row in entries for v in row])
        if m.det().is_zero():
            continue
        pool.append(make_ad(m) if rng.random() < 0.5 else make_out(m))
    for _ in range(1000):
        f = rng.choice(pool)
        x = tuple(as_cyclo(Fraction(rng.randint(-3, 3))) for _ in range(8))
        y = tuple(as_cyclo(Fraction(rng.randint(-3, 3))) for _ in range(8))
        lhs = f.apply_coords(algebra.bracket_coords(x, y))
        rhs = algebra.bracket_coords(f.apply_coords(x), f.apply_coords(y))
        if tuple(lhs) != tuple(rhs):
            return CheckResult(9, "substrate properties", False,
                               "action does not respect the bracket",
                               time.time() - t0)
    return CheckResult(9, "substrate properties", True,
                       "field axioms, numeric embedding (1e-9), dimension "
                       "formula, bracket equivariance on 1000 samples",
                       time.time() - t0)


CHECKS = {1: check_1, 2: check_2, 3: check_3, 4: check_4, 5: check_5,
          6: check_6, 7: check_7, 8: check_8, 9: check_9}


def run_check(number: int, bench: _Workbench | None = None) -> CheckResult:
    if number not in CHECKS:
        raise ValueError(f"no check numbered {number}")
    return CHECKS[number](bench if bench is not None else _Workbench())


def run_all(numbers=None, report=None) -> list:
    bench = _Workbench()
    results = []
    for number in sorted(numbers or CHECKS):
        result = run_check(number, bench)
        results.append(result)
        if report is not None:
            report(result.line())
    return results
