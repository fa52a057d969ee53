"""Graded contraction systems: generation, solving, symmetry reduction."""
import random

import numpy as np
import pytest

from gradelab.contractions import (EpsilonAssignment, NodeCapExceeded,
                                   SolutionSet, apply_variable_permutation,
                                   contracted_structure, generate_equations,
                                   is_invariant, jacobi_oracle, pair_key,
                                   pair_variable_permutation, solve_binary,
                                   sweep_equations, sweep_oracle,
                                   symmetry_orbits)
from gradelab.gradings import AbelianGroup, Grading, catalog
from gradelab.liealg import special_linear
from gradelab.linalg import Subspace
from gradelab.normalizers import quotient_group, catalog_normalizer_generators

rng = random.Random(61909)

_systems: dict = {}
_solutions: dict = {}
_quotients: dict = {}


def system(name):
    if name not in _systems:
        _systems[name] = generate_equations(catalog(name).grading)
    return _systems[name]


def solutions(name):
    if name not in _solutions:
        _solutions[name] = solve_binary(system(name))
    return _solutions[name]


def quotient(name):
    if name not in _quotients:
        entry = catalog(name)
        _quotients[name] = quotient_group(
            entry.spec, entry.grading, catalog_normalizer_generators(name))
    return _quotients[name]


def test_pair_key_is_order_free():
    assert pair_key((0, 1), (2, 2)) == pair_key((2, 2), (0, 1))
    assert pair_key((1,), (1,)) == ((1,), (1,))


def test_epsilon_assignment_is_symmetric_and_binary():
    eps = EpsilonAssignment({((0,), (1,)): 1, ((1,), (1,)): 0})
    assert eps.of((0,), (1,)) == 1
    assert eps.of((1,), (0,)) == 1
    assert eps[(1,), (1,)] == 0
    with pytest.raises(ValueError):
        EpsilonAssignment({((0,), (1,)): 2})
    ones = EpsilonAssignment.constant([(0,), (1,)], 1)
    assert len(ones.values) == 3


def test_variable_and_equation_counts():
    expected = {"g1": (28, 15, 13, 23), "g2": (28, 21, 7, 28),
                "g3": (36, 21, 15, 37), "g4": (36, 24, 12, 48)}
    for name, (n_vars, n_active, n_free, n_eqs) in expected.items():
        s = system(name)
        assert s.num_variables == n_vars, name
        assert len(s.active) == n_active, name
        assert len(s.free) == n_free, name
        assert len(s.equations) == n_eqs, name


def test_every_equation_is_an_equality_chain():
    for name in ("g1", "g2", "g3", "g4"):
        for eq in system(name).equations:
            assert not eq.rhs_zero
            assert len(eq.monomials) >= 2
            assert eq.rank >= 1
            text = str(eq)
            assert " = " in text and not text.endswith("0")


def test_variables_are_unordered_label_pairs_with_nonzero_bracket():
    s = system("g4")
    labels = set(catalog("g4").labels)
    for a, b in s.variables:
        assert a in labels and b in labels
        assert pair_key(a, b) == (a, b)
    assert len(set(s.variables)) == s.num_variables


def test_mask_assignment_round_trip():
    s = system("g2")
    for _ in range(50):
        mask = rng.getrandbits(s.num_variables)
        assert s.assignment_to_mask(s.mask_to_assignment(mask)) == mask


def test_solution_counts_match_the_exhaustive_sweeps():
    expected = {"g1": 255, "g2": 779, "g3": 2091, "g4": 6784}
    for name, count in expected.items():
        solved = solutions(name)
        assert solved.active_count == count, name
        assert len(solved) == count << len(system(name).free), name


def test_solver_agrees_with_equation_sweep():
    for name in ("g1", "g2"):
        swept = sweep_equations(system(name))
        assert np.array_equal(solutions(name).active_masks, swept), name


def test_oracle_sweep_agrees_and_ignores_free_pins():
    for name in ("g1", "g3"):
        s = system(name)
        pinned_1 = sweep_oracle(s, pin=1)
        pinned_0 = sweep_oracle(s, pin=0)
        assert np.array_equal(pinned_1, pinned_0), name
        assert np.array_equal(pinned_1, sweep_equations(s)), name


def test_direct_jacobi_spot_checks():
    grading = catalog("g2").grading
    s, solved = system("g2"), solutions("g2")
    for _ in range(30):
        mask = rng.getrandbits(s.num_variables)
        eps = s.mask_to_assignment(mask)
        direct = jacobi_oracle(contracted_structure(grading, eps))
        assert direct == solved.contains_mask(mask)


def test_all_ones_recovers_the_original_bracket():
    for name in ("g1", "g4"):
        s = system(name)
        ones = EpsilonAssignment.constant(catalog(name).labels, 1)
        assert solutions(name).contains_mask(s.assignment_to_mask(ones)), name
    assert solutions("g1").contains_mask(0)  # the fully Abelian contraction


def test_trivial_grading_has_one_free_variable():
    sl3 = special_linear(3)
    z1 = AbelianGroup((1,))
    trivial = Grading(sl3, [Subspace.full(8)], z1, [(0,)])
    s = generate_equations(trivial)
    assert s.num_variables == 1
    assert s.equations == ()
    assert s.free == (0,)
    assert len(solve_binary(s)) == 2


def test_membership_and_iteration_are_consistent():
    solved = solutions("g2")
    listed = list(solved.masks(limit=300))
    assert len(listed) == 300
    assert all(solved.contains_mask(m) for m in listed)
    for eps in solved.assignments(limit=5):
        assert eps in solved


def test_node_cap_aborts_the_search():
    with pytest.raises(NodeCapExceeded) as info:
        solve_binary(system("g4"), node_cap=50)
    assert info.value.cap == 50
    assert info.value.nodes >= 50


def test_parallel_solving_is_deterministic():
    base = solutions("g2").active_masks
    for jobs in (2, 3):
        again = solve_binary(system("g2"), jobs=jobs)
        assert np.array_equal(again.active_masks, base), jobs


def test_quotient_action_permutes_variables():
    s = system("g4")
    for p in quotient("g4").elements:
        vp = pair_variable_permutation(p, s)
        assert sorted(vp) == list(range(s.num_variables))
        free = set(s.free)
        assert {vp[i] for i in free} == free


def test_solution_sets_are_invariant_under_their_quotients():
    for name in ("g1", "g2", "g3", "g4"):
        assert is_invariant(solutions(name), quotient(name)), name


def test_invariance_detects_a_broken_set():
    s, q = system("g2"), quotient("g2")
    full = solutions("g2").active_masks
    for mask in full:
        moved = False
        for p in q.elements:
            vp = pair_variable_permutation(p, s)
            image = apply_variable_permutation(
                np.array([mask], dtype=np.uint64), vp)
            if image[0] != mask:
                moved = True
                break
        if moved:
            crippled = SolutionSet(s, np.array([mask], dtype=np.uint64))
            assert not is_invariant(crippled, q)
            return
    raise AssertionError("no mask with a nontrivial orbit found")


def test_constrained_orbit_counts():
    expected = {"g1": 47, "g2": 75, "g3": 643, "g4": 188}
    for name, count in expected.items():
        orbits = symmetry_orbits(solutions(name), quotient(name),
                                 include_free=False)
        assert len(orbits) == count, name
        total = sum(o.size for o in orbits)
        assert total == solutions(name).active_count, name
        q_order = quotient(name).order
        assert all(q_order % o.size == 0 for o in orbits), name
        assert all(solutions(name).contains_mask(int(o.representative))
                   for o in orbits), name


def test_full_orbit_count_for_the_orthogonal_grading():
    orbits = symmetry_orbits(solutions("g2"), quotient("g2"),
                             include_free=True)
    assert len(orbits) == 5350
    assert sum(o.size for o in orbits) == len(solutions("g2"))


def test_oversized_full_orbit_request_is_refused():
    with pytest.raises(ValueError):
        symmetry_orbits(solutions("g3"), quotient("g3"), include_free=True)


def test_system_and_solution_json_shapes():
    s = system("g1")
    data = s.to_json()
    assert len(data["variables"]) == 28
    assert len(data["equations"]) == 23
    assert data["free_variables"] == list(s.free)
    sol = solutions("g1").to_json(expand_limit=3)
    assert sol["total_solutions"] == len(solutions("g1"))
    assert len(sol["solutions"]) == 3
