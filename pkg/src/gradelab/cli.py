"""The gradelab command line: reproducible reports over the catalog pipelines.

Every subcommand prints a human-readable table by default and a
byte-deterministic machine format under --format json (fixed key order,
fixed indentation, no timing or environment data).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys

from . import contractions as con
from . import selfcheck
from .autgrp import NAMED_AUTOMORPHISMS, Automorphism, named_automorphism
from .cyclo import CycloNumber
from .gradings import (AbelianGroup, Grading, catalog, coarsen, format_label,
                       search_labeling, verify_grading, CATALOG_NAMES)
from .liealg import parse_element, special_linear
from .linalg import as_cyclo
from .normalizers import (catalog_normalizer_generators, induced_permutation,
                          inner_subquotient, linearize_on_labels, normalizes,
                          quotient_group, det_mod3)

CATALOG = tuple(CATALOG_NAMES)


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _emit(args, lines, data) -> None:
    if args.format == "json":
        sys.stdout.write(_dump(data))
    else:
        for line in lines:
            print(line)


def render_coords(coords, algebra) -> str:
    """Human form of a coordinate vector over the named basis."""
    terms = []
    for c, name in zip(coords, algebra.basis_names):
        if c.is_zero():
            continue
        text = repr(c)
        if text == "1":
            piece = name
        elif text == "-1":
            piece = f"-{name}"
        elif "+" in text[1:] or "-" in text[1:] or " " in text:
            piece = f"({text})*{name}"
        else:
            piece = f"{text}*{name}"
        if terms and not piece.startswith("-"):
            terms.append(f"+{piece}")
        else:
            terms.append(piece)
    return "".join(terms) if terms else "0"


def _load_automorphism(spec_text: str) -> Automorphism:
    if spec_text in NAMED_AUTOMORPHISMS:
        return named_automorphism(spec_text)
    if spec_text == "-":
        raw = sys.stdin.read()
    else:
        with open(spec_text, "r", encoding="utf-8") as fh:
            raw = fh.read()
    return Automorphism.from_json(json.loads(raw))


def _element_row(row, algebra):
    """One basis vector from JSON: a coordinate list or a named-basis string."""
    if isinstance(row, str):
        return list(parse_element(row, algebra).coords)
    coords = []
    for entry in row:
        if isinstance(entry, dict):
            coords.append(CycloNumber.from_json(entry))
        elif isinstance(entry, str):
            from fractions import Fraction
            coords.append(as_cyclo(Fraction(entry)))
        else:
            coords.append(as_cyclo(entry))
    return coords


def _load_grading(path: str):
    """Grading from a JSON file or stdin ('-'); returns (grading, sha256)."""
    if path == "-":
        raw = sys.stdin.buffer.read()
    else:
        with open(path, "rb") as fh:
            raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    data = json.loads(raw.decode("utf-8"))
    if "grading" in data and "parts" not in data:
        data = data["grading"]
    algebra = special_linear(int(data["n"]))
    parts_json = []
    for part in data["parts"]:
        rows = [_element_row(r, algebra) for r in part["basis"]]
        parts_json.append({
            "ambient_dim": part.get("ambient_dim", algebra.dim),
            "basis": [[v.to_json() for v in row] for row in rows]})
    normalized = {"n": data["n"], "parts": parts_json,
                  "group": data.get("group"),
                  "labels": data.get("labels")}
    return Grading.from_json(normalized), digest


def _group_from_spec(text: str) -> AbelianGroup:
    try:
        orders = [int(tok) for tok in text.replace("x", ",").split(",") if tok]
    except ValueError:
        raise SystemExit(f"error: cannot parse group spec {text!r}; "
                         "use forms like '7' or '3,3'")
    if not orders or any(k < 1 for k in orders):
        raise SystemExit(f"error: invalid group spec {text!r}")
    return AbelianGroup(tuple(orders))


def _grading_lines(name, g):
    algebra = g.algebra
    head = f"grading {name}: {g.num_parts} parts"
    if g.labels is not None:
        head += f", labels in {g.group}"
    lines = [head]
    for i, part in enumerate(g.parts):
        label = f" label {format_label(g.labels[i])}" if g.labels else ""
        span = ", ".join(render_coords(v, algebra) for v in part.basis)
        lines.append(f"  [{i}]{label} dim {part.dim}: span({span})")
    return lines


# --- grading subcommands -----------------------------------------------------

def cmd_grading_show(args) -> int:
    entry = catalog(args.catalog)
    g = entry.grading
    _emit(args, _grading_lines(args.catalog, g), g.to_json())
    return 0


def cmd_grading_verify(args) -> int:
    if args.catalog:
        g = catalog(args.catalog).grading
        source, digest = args.catalog, None
    else:
        g, digest = _load_grading(args.input)
        source = args.input
    cert = verify_grading(g)
    labels_ok = None
    if g.labels is not None:
        from .gradings import verify_labeling
        labels_ok = verify_labeling(g, g.group, g.labels)
    data = {"source": source, "parts": g.num_parts,
            "dims": list(g.part_dims), "is_grading": cert.ok,
            "violation": list(cert.violation) if cert.violation else None,
            "labels_additive": labels_ok}
    if digest:
        data["input_sha256"] = digest
    lines = [f"parts: {g.num_parts}, dims {list(g.part_dims)}"]
    if digest:
        lines.append(f"input sha256: {digest}")
    lines.append(f"grading axiom: {'holds' if cert.ok else 'FAILS'}")
    if not cert.ok:
        lines.append(f"  violating part pair: {cert.violation}")
    if labels_ok is not None:
        lines.append(f"labels additive: {labels_ok}")
    _emit(args, lines, data)
    ok = cert.ok and labels_ok is not False
    return 0 if ok else 1


def cmd_grading_label(args) -> int:
    g = catalog(args.catalog).grading
    group = _group_from_spec(args.group)
    unlabeled = Grading(g.algebra, g.parts)
    labels = search_labeling(unlabeled, group)
    if labels is None:
        _emit(args, [f"no additive labeling of {args.catalog} over {group}"],
              {"catalog": args.catalog, "group": list(group.cyclic_orders),
               "found": False, "labels": None})
        return 1
    lines = [f"labeling of {args.catalog} over {group}:"]
    for i, lab in enumerate(labels):
        lines.append(f"  part [{i}] -> {format_label(lab)}")
    _emit(args, lines,
          {"catalog": args.catalog, "group": list(group.cyclic_orders),
           "found": True, "labels": [list(l) for l in labels]})
    return 0


def cmd_grading_coarsen(args) -> int:
    g = catalog(args.catalog).grading
    merged = []
    used = set()
    for spec_text in args.merge or []:
        try:
            block = tuple(sorted(int(t) for t in spec_text.split(",")))
        except ValueError:
            raise SystemExit(f"error: bad --merge value {spec_text!r}")
        for idx in block:
            if idx < 0 or idx >= g.num_parts:
                raise SystemExit(f"error: part index {idx} out of range")
            if idx in used:
                raise SystemExit(f"error: part index {idx} merged twice")
            used.add(idx)
        merged.append(block)
    for idx in range(g.num_parts):
        if idx not in used:
            merged.append((idx,))
    partition = tuple(sorted(merged))
    coarse = coarsen(g, partition)
    cert = verify_grading(coarse)
    lines = [f"coarsening of {args.catalog} by {list(partition)}:"]
    lines.extend(_grading_lines(f"{args.catalog} coarsened", coarse)[1:])
    lines.append(f"grading axiom: {'holds' if cert.ok else 'FAILS'}")
    if not cert.ok:
        lines.append(f"  violating part pair: {cert.violation}")
    data = {"catalog": args.catalog,
            "partition": [list(b) for b in partition],
            "dims": list(coarse.part_dims),
            "is_grading": cert.ok,
            "violation": list(cert.violation) if cert.violation else None,
            "grading": coarse.to_json()}
    _emit(args, lines, data)
    return 0 if cert.ok else 1


# --- normalizer subcommands ----------------------------------------------------

def cmd_normalizer_check(args) -> int:
    entry = catalog(args.catalog)
    auto = _load_automorphism(args.auto)
    verdict = normalizes(auto, entry.spec)
    perm = induced_permutation(auto, entry.grading) if verdict else None
    lines = [f"{args.auto} normalizes the {args.catalog} group: {verdict}"]
    if perm is not None:
        lines.append(f"induced permutation: {perm.cycle_notation()}")
    data = {"catalog": args.catalog, "automorphism": args.auto,
            "normalizes": verdict,
            "permutation": list(perm.mapping) if perm else None,
            "cycles": perm.cycle_notation() if perm else None}
    _emit(args, lines, data)
    return 0 if verdict else 1


def _group_report(q, gen_names):
    exponent = 1
    profile = {}
    for p in q.elements:
        k = p.order()
        exponent = math.lcm(exponent, k)
        profile[k] = profile.get(k, 0) + 1
    elements = sorted(
        ({"mapping": list(p.mapping), "order": p.order(),
          "cycles": p.cycle_notation()} for p in q.elements),
        key=lambda e: e["mapping"])
    return {"order": q.order, "exponent": exponent,
            "element_order_profile": {str(k): v
                                      for k, v in sorted(profile.items())},
            "generators": [{"name": n, "cycles": p.cycle_notation()}
                           for n, p in zip(gen_names, q.generators)],
            "elements": elements}


def _group_lines(title, data):
    lines = [f"{title}: order {data['order']}, exponent {data['exponent']}"]
    lines.append("element orders: " + ", ".join(
        f"{v} of order {k}" for k, v in data["element_order_profile"].items()))
    for gen in data["generators"]:
        lines.append(f"  generator {gen['name']}: {gen['cycles']}")
    return lines


def cmd_normalizer_quotient(args) -> int:
    entry = catalog(args.catalog)
    gens = catalog_normalizer_generators(args.catalog)
    from .normalizers import CATALOG_NORMALIZER_GENERATORS
    names = CATALOG_NORMALIZER_GENERATORS[args.catalog]
    q = quotient_group(entry.spec, entry.grading, gens)
    data = {"catalog": args.catalog, **_group_report(q, names)}
    _emit(args, _group_lines(f"normalizer quotient of {args.catalog}", data),
          data)
    return 0


def cmd_normalizer_inner(args) -> int:
    entry = catalog(args.catalog)
    gens = catalog_normalizer_generators(args.catalog)
    from .normalizers import CATALOG_NORMALIZER_GENERATORS
    all_names = CATALOG_NORMALIZER_GENERATORS[args.catalog]
    inner_names = [n for n, a in zip(all_names, gens) if a.kind == "inner"]
    q = inner_subquotient(entry.spec, entry.grading, gens)
    data = {"catalog": args.catalog, **_group_report(q, inner_names)}
    _emit(args, _group_lines(f"inner subquotient of {args.catalog}", data),
          data)
    return 0


def cmd_normalizer_linearize(args) -> int:
    entry = catalog(args.catalog)
    auto = _load_automorphism(args.auto)
    if not normalizes(auto, entry.spec):
        _emit(args, [f"{args.auto} does not normalize the {args.catalog} group"],
              {"catalog": args.catalog, "automorphism": args.auto,
               "normalizes": False, "matrix": None})
        return 1
    perm = induced_permutation(auto, entry.grading)
    matrix = linearize_on_labels(perm, entry.grading)
    if matrix is None:
        _emit(args, [f"{args.auto} induces {perm.cycle_notation()}, which has "
                     "no linear model on the labels"],
              {"catalog": args.catalog, "automorphism": args.auto,
               "normalizes": True, "permutation": list(perm.mapping),
               "matrix": None})
        return 1
    det = det_mod3(matrix)
    lines = [f"{args.auto} induces {perm.cycle_notation()}",
             f"linear action on labels (mod 3): {matrix[0]} / {matrix[1]}",
             f"determinant mod 3: {det}"]
    data = {"catalog": args.catalog, "automorphism": args.auto,
            "normalizes": True, "permutation": list(perm.mapping),
            "matrix": [list(r) for r in matrix], "det_mod_3": det}
    _emit(args, lines, data)
    return 0


# --- contract subcommands -------------------------------------------------------

def _pair_name(pair) -> str:
    return con.format_pair(pair)


def cmd_contract_equations(args) -> int:
    g = catalog(args.catalog).grading
    system = con.generate_equations(g)
    lines = [f"contraction system for {args.catalog}: "
             f"{system.num_variables} pair variables, "
             f"{len(system.equations)} equations, "
             f"{len(system.free)} unconstrained"]
    lines.append("variables:")
    for i, pair in enumerate(system.variables):
        tag = "" if i in system.active else "  (unconstrained)"
        lines.append(f"  e{i} = {_pair_name(pair)}{tag}")
    lines.append("equations (monomial m(i,j) = e_i*e_j):")
    for eq in system.equations:
        lines.append(f"  {eq}   [triple {', '.join(eq.triple)}; "
                     f"residual rank {eq.rank}]")
    data = {"catalog": args.catalog, **system.to_json()}
    _emit(args, lines, data)
    return 0


def _mask_to_pair_map(system, mask: int) -> dict:
    return {_pair_name(p): (mask >> i) & 1
            for i, p in enumerate(system.variables)}


def cmd_contract_solve(args) -> int:
    g = catalog(args.catalog).grading
    system = con.generate_equations(g)
    solved = con.solve_binary(system, jobs=args.jobs)
    limit = args.limit
    lines = [f"contraction solutions for {args.catalog}: "
             f"{solved.active_count} constrained patterns x "
             f"2^{len(system.free)} unconstrained pairs = {len(solved)} total"]
    data = {"catalog": args.catalog,
            "variables": [[list(a), list(b)] for a, b in system.variables],
            "free_pairs": [[list(system.variables[i][0]),
                            list(system.variables[i][1])]
                           for i in system.free],
            "constrained_solution_count": solved.active_count,
            "total_solutions": len(solved)}
    shown = [_mask_to_pair_map(system, int(m))
             for m in solved.active_masks[:limit if limit else None]]
    data["solutions"] = shown
    data["solutions_shown"] = len(shown)
    data["solutions_note"] = ("constrained patterns; every unconstrained "
                              "pair may independently take either value")
    if limit and solved.active_count > limit:
        lines.append(f"showing first {limit} constrained patterns "
                     "(use --limit 0 for all)")
    if args.orbits:
        entry = catalog(args.catalog)
        q = quotient_group(entry.spec, entry.grading,
                           catalog_normalizer_generators(args.catalog))
        invariant = con.is_invariant(solved, q)
        orbits = con.symmetry_orbits(solved, q, include_free=False)
        lines.append(f"invariant under the order-{q.order} quotient: "
                     f"{invariant}")
        lines.append(f"orbits of constrained patterns: {len(orbits)}")
        sizes = {}
        for o in orbits:
            sizes[o.size] = sizes.get(o.size, 0) + 1
        lines.append("orbit sizes: " + ", ".join(
            f"{v} of size {k}" for k, v in sorted(sizes.items())))
        head = orbits[:limit if limit else None]
        for o in head:
            lines.append(f"  size {o.size:3d}  rep "
                         f"{_format_mask(system, o.representative)}")
        data["orbits"] = {
            "of": "constrained_patterns",
            "quotient_order": q.order,
            "invariant": invariant,
            "count": len(orbits),
            "size_histogram": {str(k): v for k, v in sorted(sizes.items())},
            "orbits": [{"size": o.size,
                        "representative": _mask_to_pair_map(
                            system, o.representative)}
                       for o in orbits]}
    _emit(args, lines, data)
    return 0


def _format_mask(system, mask: int) -> str:
    on = [_pair_name(p) for i, p in enumerate(system.variables)
          if (mask >> i) & 1]
    return "{" + ", ".join(on) + "}" if on else "{}"


# --- selfcheck -------------------------------------------------------------------

def cmd_selfcheck(args) -> int:
    numbers = None
    if args.only:
        numbers = sorted({int(t) for t in args.only.split(",")})
    if args.format == "json":
        results = selfcheck.run_all(numbers)
        data = {"results": [{"number": r.number, "title": r.title,
                             "passed": r.passed, "detail": r.detail}
                            for r in results],
                "passed": sum(r.passed for r in results),
                "failed": sum(not r.passed for r in results)}
        sys.stdout.write(_dump(data))
        return 0 if data["failed"] == 0 else 1
    results = selfcheck.run_all(numbers, report=print)
    failed = [r for r in results if not r.passed]
    print(f"\n{len(results) - len(failed)} of {len(results)} checks passed")
    if failed:
        print("failed: " + ", ".join(str(r.number) for r in failed))
    return 0 if not failed else 1


# --- parser -----------------------------------------------------------------------

def _add_format(p):
    p.add_argument("--format", choices=("human", "json"), default="human",
                   help="output format (json is byte-deterministic)")


def _add_catalog(p, required=True):
    p.add_argument("--catalog", choices=CATALOG, required=required,
                   help="one of the four catalog gradings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradelab",
        description="Exact-arithmetic workbench for the fine gradings of "
                    "sl(3,C), their normalizer symmetries, and binary "
                    "graded contractions.")
    sub = parser.add_subparsers(dest="command", required=True)

    grading = sub.add_parser("grading", help="catalog gradings and verification")
    gsub = grading.add_subparsers(dest="subcommand", required=True)

    p = gsub.add_parser("show", help="print a catalog grading")
    _add_catalog(p)
    _add_format(p)
    p.set_defaults(func=cmd_grading_show)

    p = gsub.add_parser("verify", help="check the grading axiom")
    _add_catalog(p, required=False)
    p.add_argument("--input", help="grading JSON file, or - for stdin")
    _add_format(p)
    p.set_defaults(func=cmd_grading_verify)

    p = gsub.add_parser("label", help="search for an additive labeling")
    _add_catalog(p)
    p.add_argument("--group", required=True,
                   help="cyclic orders, e.g. 7 or 3,3")
    _add_format(p)
    p.set_defaults(func=cmd_grading_label)

    p = gsub.add_parser("coarsen", help="merge parts and re-verify")
    _add_catalog(p)
    p.add_argument("--merge", action="append", metavar="I,J[,K...]",
                   help="part indices to merge (repeatable)")
    _add_format(p)
    p.set_defaults(func=cmd_grading_coarsen)

    norm = sub.add_parser("normalizer", help="normalizer quotients")
    nsub = norm.add_subparsers(dest="subcommand", required=True)

    p = nsub.add_parser("check", help="does an automorphism normalize a group")
    _add_catalog(p)
    p.add_argument("--auto", required=True,
                   help="named automorphism (" +
                        ", ".join(sorted(NAMED_AUTOMORPHISMS)) +
                        "), a JSON file, or - for stdin")
    _add_format(p)
    p.set_defaults(func=cmd_normalizer_check)

    p = nsub.add_parser("quotient", help="the quotient permutation group")
    _add_catalog(p)
    _add_format(p)
    p.set_defaults(func=cmd_normalizer_quotient)

    p = nsub.add_parser("inner", help="the inner subquotient")
    _add_catalog(p)
    _add_format(p)
    p.set_defaults(func=cmd_normalizer_inner)

    p = nsub.add_parser("linearize", help="2x2 model of a label action")
    _add_catalog(p)
    p.add_argument("--auto", required=True,
                   help="automorphism to linearize (named, file, or -)")
    _add_format(p)
    p.set_defaults(func=cmd_normalizer_linearize)

    contract = sub.add_parser("contract", help="binary graded contractions")
    csub = contract.add_subparsers(dest="subcommand", required=True)

    p = csub.add_parser("equations", help="generate the quadratic relations")
    _add_catalog(p)
    _add_format(p)
    p.set_defaults(func=cmd_contract_equations)

    p = csub.add_parser("solve", help="enumerate all binary solutions")
    _add_catalog(p)
    p.add_argument("--orbits", action="store_true",
                   help="partition solutions into symmetry orbits")
    p.add_argument("--jobs", type=int, default=1,
                   help="solver branches run concurrently (results identical)")
    p.add_argument("--limit", type=int, default=20,
                   help="solutions/orbits to print (0 = all)")
    _add_format(p)
    p.set_defaults(func=cmd_contract_solve)

    p = sub.add_parser("selfcheck", help="run the golden verification suite")
    p.add_argument("--only", help="comma-separated check numbers")
    _add_format(p)
    p.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "catalog", None) is None and \
            getattr(args, "input", None) is None and \
            args.command == "grading" and args.subcommand == "verify":
        raise SystemExit("error: grading verify needs --catalog or --input")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
