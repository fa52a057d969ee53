"""Normalizer membership and quotient groups acting on grading parts.

For a MAD-group G with fine grading Gamma, every normalizer element permutes
the parts of Gamma, and two elements permute them identically iff they lie in
the same coset of G.  The quotient N(G)/G is therefore computed here as an
explicit permutation group, with the coset-vs-permutation identification
audited rather than assumed: every closure collision produces a word with
trivial permutation whose G-membership is checked structurally.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .autgrp import Automorphism, compose, conjugate, inverse
from .gradings import Grading, MadGroupSpec
from .linalg import Subspace

DEFAULT_CLOSURE_CAP = 10000


class Permutation:
    """Bijection on {0..n-1}, stored as the image tuple."""

    __slots__ = ("mapping",)

    def __init__(self, mapping):
        mapping = tuple(int(i) for i in mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ValueError("mapping is not a bijection")
        object.__setattr__(self, "mapping", mapping)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @property
    def degree(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(i) = self(other(i))."""
        return Permutation(self.mapping[j] for j in other.mapping)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))

    def order(self) -> int:
        k, power = 1, self
        while not power.is_identity():
            power = power.compose(self)
            k += 1
        return k

    def cycles(self) -> list:
        """Nontrivial cycles, each rotated to start at its least element."""
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.mapping[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.mapping[nxt]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(i) for i in c) + ")" for c in cycles)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.mapping == other.mapping

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self):
        return f"Permutation{self.mapping}"


@dataclass(frozen=True)
class QuotientElement:
    """One coset of the quotient: its permutation, parity, and a witness word."""

    permutation: Permutation
    parity: int  # 0 = inner word, 1 = outer word
    witness: Automorphism


class PermutationGroup:
    """A closed set of permutations with the generators that produced it."""

    __slots__ = ("degree", "generators", "elements", "records")

    def __init__(self, degree: int, generators, elements, records=None):
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "generators", tuple(generators))
        object.__setattr__(self, "elements",
                           tuple(sorted(elements, key=lambda p: p.mapping)))
        object.__setattr__(self, "records", tuple(records) if records else ())

    def __setattr__(self, name, value):
        raise AttributeError("PermutationGroup is immutable")

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_order_profile(self) -> dict:
        profile: dict = {}
        for p in self.elements:
            k = p.order()
            profile[k] = profile.get(k, 0) + 1
        return profile

    def __contains__(self, perm: Permutation) -> bool:
        return perm in set(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"PermutationGroup(degree={self.degree}, order={self.order})"


class NormalizerDiscrepancy(RuntimeError):
    """A word induced the trivial permutation but failed G-membership.

    If this fires, cosets and permutations cannot be identified and no
    quotient order can be reported.
    """

    def __init__(self, witness: Automorphism, detail: str):
        super().__init__(detail)
        self.witness = witness


class ClosureCapExceeded(RuntimeError):
    pass


def normalizes(h: Automorphism, spec: MadGroupSpec) -> bool:
    """True iff h^-1 G h lies inside G.

    Finite groups are checked element by element.  The infinite families are
    checked on generic probe elements: a probe with pairwise distinct
    diagonal forces any successful conjugator into the monomial matrices,
    and the outer-family probe then pins the residual diagonal freedom, so
    probe membership of the conjugates is equivalent to normalizing the
    whole family.
    """
    targets = spec.elements if spec.elements is not None else spec.probes
    if not targets:
        raise ValueError(f"spec {spec.name} carries neither elements nor probes")
    return all(spec.membership(conjugate(h, g)) for g in targets)


def induced_permutation(h: Automorphism, g: Grading) -> Permutation:
    """The permutation of g's parts effected by h."""
    mapping = []
    for i, part in enumerate(g.parts):
        image = Subspace.from_vectors(
            g.algebra.dim, [h.apply_coords(v) for v in part.basis])
        j = g.part_index(image)
        if j is None:
            raise ValueError(f"automorphism does not map part {i} onto a part")
        mapping.append(j)
    return Permutation(mapping)


def _closure(spec: MadGroupSpec, g: Grading, normalizer_gens, cap: int):
    """BFS closure of induced permutations with parity and witness tracking.

    Every collision yields a word with trivial permutation (a Schreier
    generator of the kernel); its membership in G is checked, which is
    exactly the audit that the permutation representation is faithful on
    cosets.  Mixed-parity repeats of one permutation are checked the same
    way before being admitted as separate states.
    """
    gens = list(normalizer_gens)
    for h in gens:
        if not normalizes(h, spec):
            raise ValueError(f"generator {h!r} does not normalize {spec.name}")
    gen_data = [(h, induced_permutation(h, g), 0 if h.kind == "inner" else 1)
                for h in gens]

    algebra_n = g.algebra.n
    from .autgrp import identity_automorphism
    ident = identity_automorphism(algebra_n)
    id_perm = Permutation.identity(g.num_parts)

    states: dict = {(id_perm, 0): ident}
    inverses: dict = {(id_perm, 0): ident}
    parities_of: dict = {id_perm: {0}}
    frontier = [(id_perm, 0)]

    def audit(candidate: Automorphism, context: str):
        if not spec.membership(candidate):
            raise NormalizerDiscrepancy(
                candidate,
                f"{spec.name}: a word acting trivially on the grading is not in the "
                f"group ({context}); cosets and permutations do not match")

    while frontier:
        nxt = []
        for key in frontier:
            perm, parity = key
            witness = states[key]
            for h, hperm, hparity in gen_data:
                new_perm = hperm.compose(perm)
                new_parity = parity ^ hparity
                new_witness = compose(h, witness)
                new_key = (new_perm, new_parity)
                existing = states.get(new_key)
                if existing is not None:
                    inv = inverses.get(new_key)
                    if inv is None:
                        inv = inverse(existing)
                        inverses[new_key] = inv
                    audit(compose(inv, new_witness), "closure collision")
                    continue
                other = parities_of.get(new_perm)
                if other is not None and new_parity not in other:
                    sibling = states[(new_perm, 1 - new_parity)]
                    audit(compose(inverse(sibling), new_witness),
                          "same permutation from both parities")
                if len(states) >= cap:
                    raise ClosureCapExceeded(
                        f"quotient closure exceeded {cap} states")
                states[new_key] = new_witness
                parities_of.setdefault(new_perm, set()).add(new_parity)
                nxt.append(new_key)
        frontier = nxt
    return states, gen_data


def quotient_group(spec: MadGroupSpec, g: Grading, normalizer_gens,
                   cap: int = DEFAULT_CLOSURE_CAP) -> PermutationGroup:
    """The quotient N(G)/G as a permutation group on grading parts."""
    states, gen_data = _closure(spec, g, normalizer_gens, cap)
    records = [QuotientElement(perm, parity, witness)
               for (perm, parity), witness in states.items()]
    perms = {perm for perm, _ in states}
    return PermutationGroup(g.num_parts, [p for _, p, _ in gen_data], perms, records)


def inner_subquotient(spec: MadGroupSpec, g: Grading, normalizer_gens,
                      cap: int = DEFAULT_CLOSURE_CAP) -> PermutationGroup:
    """The subgroup of the quotient reachable by inner words (parity 0)."""
    states, gen_data = _closure(spec, g, normalizer_gens, cap)
    records = [QuotientElement(perm, parity, witness)
               for (perm, parity), witness in states.items() if parity == 0]
    perms = {perm for perm, parity in states if parity == 0}
    inner_gens = [p for h, p, parity in gen_data if parity == 0]
    return PermutationGroup(g.num_parts, inner_gens, perms, records)


def linearize_on_labels(p: Permutation, g: Grading):
    """A 2x2 matrix M over Z3 with M . label(i) = label(p(i)), or None.

    Requires a Z3 x Z3 labeled grading whose labels avoid the neutral
    element, as for the Pauli grading.
    """
    if g.labels is None or g.group.cyclic_orders != (3, 3):
        raise ValueError("grading must carry Z3 x Z3 labels")
    if g.group.zero() in g.labels:
        raise ValueError("labels must avoid the neutral element")
    if p.degree != g.num_parts:
        raise ValueError("permutation degree does not match the grading")
    base = None
    for i in range(g.num_parts):
        for j in range(i + 1, g.num_parts):
            a, b = g.labels[i], g.labels[j]
            if (a[0] * b[1] - a[1] * b[0]) % 3 != 0:
                base = (i, j)
                break
        if base:
            break
    if base is None:
        return None
    i, j = base
    a, b = g.labels[i], g.labels[j]
    ia, ib = g.labels[p(i)], g.labels[p(j)]
    det = (a[0] * b[1] - a[1] * b[0]) % 3
    det_inv = 1 if det == 1 else 2  # inverse of det mod 3
    # M = [image_a image_b] . [a b]^(-1), all mod 3
    inv = ((b[1] * det_inv % 3, (-b[0]) * det_inv % 3),
           ((-a[1]) * det_inv % 3, a[0] * det_inv % 3))
    matrix = ((ia[0] * inv[0][0] + ib[0] * inv[1][0],
               ia[0] * inv[0][1] + ib[0] * inv[1][1]),
              (ia[1] * inv[0][0] + ib[1] * inv[1][0],
               ia[1] * inv[0][1] + ib[1] * inv[1][1]))
    matrix = tuple(tuple(v % 3 for v in row) for row in matrix)
    for idx in range(g.num_parts):
        v = g.labels[idx]
        image = ((matrix[0][0] * v[0] + matrix[0][1] * v[1]) % 3,
                 (matrix[1][0] * v[0] + matrix[1][1] * v[1]) % 3)
        if image != g.labels[p(idx)]:
            return None
    return matrix


def det_mod3(matrix) -> int:
    return (matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]) % 3


# Generator words in the normalizer of each catalog MAD-group, by the names
# registered in autgrp.NAMED_AUTOMORPHISMS.  Each list generates the full
# quotient; the parity-0 sublist generates the inner subquotient.
CATALOG_NORMALIZER_GENERATORS = {
    "g1": ("OutI", "AdB1", "AdB2"),
    "g2": ("AdB1", "AdB2", "AdH"),
    "g3": ("AdB2", "AdH"),
    "g4": ("OutI", "AdS", "AdD"),
}


def catalog_normalizer_generators(name: str):
    from .autgrp import named_automorphism
    try:
        gen_names = CATALOG_NORMALIZER_GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown catalog grading {name!r}") from None
    return [named_automorphism(n) for n in gen_names]
