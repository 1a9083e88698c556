"""Command-line interface: ``hymcg <group> <command> [options]``.

Exit status is 0 on success, 1 when a boolean check fails and 2 on usage
errors (bad flags, malformed words or families, violated preconditions).
Every command accepts ``--json`` for machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import dictionary, strata, surface, symplectic, words
from .errors import ClosureTooLarge, HymcgError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


# -- surface -----------------------------------------------------------------------

def _surface_from(args):
    return surface.make_surface(args.genus, args.punctures, args.boundary)


def _hyperelliptic_from(args):
    s = _surface_from(args)
    if args.w_points is None:
        raise UsageError("--w-points is required for hyperelliptic data")
    return surface.make_hyperelliptic(s, args.w_points, args.w_punctures, args.w_boundary)


def cmd_surface_info(args):
    if args.w_points is not None:
        h = _hyperelliptic_from(args)
        data = h.to_json()
        s = h.base
    else:
        s = _surface_from(args)
        data = s.to_json()
    data.update(eulerCharacteristic=s.euler_characteristic, hyperbolic=s.hyperbolic)
    text = f"{s}: euler characteristic {s.euler_characteristic}, " + (
        "hyperbolic" if s.hyperbolic else "not hyperbolic")
    _emit(args, data, text)
    return EXIT_OK


def cmd_surface_quotient(args):
    q = surface.quotient_surface(_hyperelliptic_from(args))
    data = q.to_json()
    text = f"quotient {q.quotient} with {q.branchPoints} branch points"
    _emit(args, data, text)
    return EXIT_OK


# -- words -------------------------------------------------------------------------

def _word(args):
    return words.parse_word(" ".join(args.word), args.genus)


def _word_json(w):
    return {"genus": w.genus, "word": words.format_word(w)}


def cmd_word_reduce(args):
    w = words.reduce(_word(args))
    _emit(args, _word_json(w), words.format_word(w) or "(empty)")
    return EXIT_OK


def cmd_word_rhow(args):
    p = words.rho_w(_word(args))
    data = p.to_json()
    data["cycles"] = str(p)
    _emit(args, data, str(p))
    return EXIT_OK


def cmd_word_involution(args):
    w = words.involution_word(args.genus)
    _emit(args, _word_json(w), words.format_word(w))
    return EXIT_OK


def cmd_word_order(args):
    order = words.perm_group_order(args.genus)
    _emit(args, {"genus": args.genus, "order": order}, str(order))
    return EXIT_OK


# -- symplectic --------------------------------------------------------------------

def cmd_symp_eval(args):
    m = symplectic.evaluate(_word(args), args.mod)
    _emit(args, m.to_json(), str(m))
    return EXIT_OK


def cmd_symp_level(args):
    if args.mod is None:
        raise UsageError("--mod is required")
    ok = symplectic.level_membership(_word(args), args.mod)
    _emit(args, {"genus": args.genus, "modulus": args.mod, "member": ok},
          f"{'yes' if ok else 'no'}: word {'is' if ok else 'is not'} in level {args.mod}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_symp_braid_check(args):
    failures = symplectic.braid_relation_failures(args.genus, args.mod)
    text = "OK: braid relations hold" if not failures else "FAIL:\n" + "\n".join(failures)
    _emit(args, {"genus": args.genus, "modulus": args.mod, "ok": not failures,
                 "failures": failures}, text)
    return EXIT_FAIL if failures else EXIT_OK


def cmd_symp_involution_check(args):
    m = symplectic.evaluate(words.involution_word(args.genus))
    ok = m.is_minus_identity()
    text = "OK: -I" if ok else "FAIL: involution word is not -I\n" + str(m)
    _emit(args, {"genus": args.genus, "ok": ok, "matrix": m.to_json()}, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_symp_closure(args):
    if args.mod is None:
        raise UsageError("--mod is required")
    gens = symplectic.transvection_generators(args.genus, args.mod, args.power)
    group = symplectic.group_closure(gens, args.cap)
    minus = -symplectic.SympMatrix.identity(2 * args.genus, args.mod)
    data = {"genus": args.genus, "modulus": args.mod, "power": args.power,
            "order": group.order, "containsMinusIdentity": minus in group}
    text = f"order {group.order}" + (", contains -I" if minus in group else "")
    _emit(args, data, text)
    return EXIT_OK


def cmd_symp_sp_order(args):
    order = symplectic.sp_order(args.genus, args.prime)
    _emit(args, {"genus": args.genus, "prime": args.prime, "order": order}, str(order))
    return EXIT_OK


def cmd_symp_chain(args):
    chain = symplectic.chain_classes(args.genus)
    data = {"genus": args.genus, "vectors": [list(v) for v in chain.vectors]}
    text = "\n".join(f"v{i}: {list(v)}" for i, v in enumerate(chain.vectors, start=1))
    _emit(args, data, text)
    return EXIT_OK


def cmd_symp_consistency(args):
    """Random words in level 2 must act trivially on the Weierstrass points."""
    rng = random.Random(args.seed)
    in_level = violations = 0
    for _ in range(args.samples):
        w = words.random_word(args.genus, rng.randint(0, args.length), rng)
        if symplectic.level_membership(w, 2):
            in_level += 1
            if not words.rho_w(w).is_identity():
                violations += 1
    ok = violations == 0
    data = {"genus": args.genus, "samples": args.samples, "seed": args.seed,
            "inLevel": in_level, "violations": violations, "ok": ok}
    _emit(args, data, f"{'OK' if ok else 'FAIL'}: {in_level} level-2 words, {violations} violations")
    return EXIT_OK if ok else EXIT_FAIL


# -- strata ------------------------------------------------------------------------

def cmd_strata_count(args):
    count = strata.count_vertex_orbits(args.n, args.variant, args.group)
    _emit(args, {"n": args.n, "variant": args.variant, "group": args.group, "count": count},
          str(count))
    return EXIT_OK


def cmd_strata_enum(args):
    fams = strata.enumerate_simplices(args.n, args.dim, args.variant, args.group)
    data = {"n": args.n, "dim": args.dim, "variant": args.variant, "group": args.group,
            "simplices": [f.literal() for f in fams]}
    text = "\n".join(str(f) for f in fams) + f"\n# {len(fams)} simplices"
    _emit(args, data, text.lstrip("\n"))
    return EXIT_OK


def cmd_strata_dim(args):
    d = strata.complex_dimension(args.n, args.variant)
    _emit(args, {"n": args.n, "variant": args.variant, "dimension": d}, str(d))
    return EXIT_OK


def cmd_strata_homology(args):
    h = strata.homology(args.n, args.variant, args.max_dim)
    lines = [f"f-vector: {list(h.f_vector)}", f"betti: {list(h.betti)}"]
    if any(h.torsion):
        lines.append(f"torsion: {[list(t) for t in h.torsion]}")
    _emit(args, h.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_strata_dot(args):
    tree = strata.family_to_tree(strata.parse_family(args.family, args.n))
    if args.json:
        print(json.dumps(tree.to_json(), sort_keys=True))
    else:
        print(tree.to_dot())
    return EXIT_OK


# -- hyperelliptic dictionary -------------------------------------------------------

def _family(args):
    return strata.parse_family(args.family, 2 * args.genus + 2)


def cmd_hyp_classify(args):
    try:
        subset = [int(x) for x in args.subset.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse subset {args.subset!r}") from exc
    c = dictionary.classify_curve(subset, args.genus)
    _emit(args, c.to_json(), str(c))
    return EXIT_OK


def cmd_hyp_lift(args):
    lift = dictionary.lift_multicurve(_family(args), args.genus)
    lines = [f"{sorted(c.subset)}: {c}" for c in lift.classes]
    lines.append(f"upstairs simplex size: {lift.upstairs_simplex_size}")
    _emit(args, lift.to_json(), "\n".join(lines))
    return EXIT_OK


def _component_lines(profile):
    return [f"component {i}: genus {c.genus}, {c.boundary} boundary, {c.branch} branch, {c.action}"
            for i, c in enumerate(profile.components)]


def cmd_hyp_cut(args):
    profile = dictionary.cut_profile(_family(args), args.genus, merge_annuli=not args.raw)
    lines = _component_lines(profile)
    lines.append(f"upstairs simplex size: {profile.upstairs_simplex_size}")
    _emit(args, profile.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_hyp_stab(args):
    stab = dictionary.stabilizer_profile(_family(args), args.genus, args.flavor)
    lines = [f"{t.kind} {sorted(t.curve.subset)} ({t.curve.kind}): {t.lattice}"
             for t in stab.twist_generators]
    lines += _component_lines(stab.cut)
    lines.append(f"symmetry order bound: {stab.symmetry_order}")
    _emit(args, stab.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_hyp_conserve(args):
    """Euler conservation and Riemann-Hurwitz on random families."""
    rng = random.Random(args.seed)
    n = 2 * args.genus + 2
    failures = 0
    for _ in range(args.samples):
        f = strata.random_family(n, rng, keep=rng.random())
        try:
            profile = dictionary.cut_profile(f, args.genus)
            ok = (profile.euler_characteristic == 2 - 2 * args.genus
                  and profile.riemann_hurwitz_holds())
        except AssertionError:
            ok = False
        failures += not ok
    data = {"genus": args.genus, "samples": args.samples, "seed": args.seed,
            "failures": failures, "ok": failures == 0}
    _emit(args, data, f"{'OK' if not failures else 'FAIL'}: {failures} failures in {args.samples}")
    return EXIT_OK if not failures else EXIT_FAIL


# -- parser --------------------------------------------------------------------------

def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    genus = argparse.ArgumentParser(add_help=False)
    genus.add_argument("--genus", "--g", "-g", dest="genus", type=int, required=True)

    word = argparse.ArgumentParser(add_help=False)
    word.add_argument("word", nargs="*", help="twist word, e.g. t1 t2 t3^2 t2 t1")

    randomized = argparse.ArgumentParser(add_help=False)
    randomized.add_argument("--seed", type=int, default=0)
    randomized.add_argument("--samples", type=int, default=1000)

    parser = argparse.ArgumentParser(prog="hymcg", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def command(group, name, func, parents=(), help=None):
        p = group.add_parser(name, parents=[common, *parents], help=help)
        p.set_defaults(func=func)
        return p

    # surface
    sg = groups.add_parser("surface", help="topological types").add_subparsers(dest="cmd", required=True)
    surf = argparse.ArgumentParser(add_help=False)
    surf.add_argument("--genus", "--g", "-g", dest="genus", type=_nonneg, required=True)
    surf.add_argument("--punctures", "-n", type=_nonneg, default=0)
    surf.add_argument("--boundary", "-k", type=_nonneg, default=0)
    surf.add_argument("--w-points", type=int)
    surf.add_argument("--w-punctures", type=int, default=0)
    surf.add_argument("--w-boundary", type=int, default=0)
    command(sg, "info", cmd_surface_info, [surf], "Euler characteristic, hyperbolicity")
    command(sg, "quotient", cmd_surface_quotient, [surf], "quotient by the involution")

    # words
    wg = groups.add_parser("word", help="twist words").add_subparsers(dest="cmd", required=True)
    command(wg, "reduce", cmd_word_reduce, [genus, word], "free reduction")
    command(wg, "rhow", cmd_word_rhow, [genus, word], "permutation of Weierstrass points")
    command(wg, "involution", cmd_word_involution, [genus], "word for the hyperelliptic involution")
    command(wg, "order", cmd_word_order, [genus], "order of the Weierstrass permutation image")

    # symplectic
    yg = groups.add_parser("symp", help="symplectic representation").add_subparsers(dest="cmd", required=True)
    mod = argparse.ArgumentParser(add_help=False)
    mod.add_argument("--mod", "-m", type=int)
    command(yg, "eval", cmd_symp_eval, [genus, mod, word], "matrix of a word")
    command(yg, "level", cmd_symp_level, [genus, mod, word], "abelian level membership")
    command(yg, "braid-check", cmd_symp_braid_check, [genus, mod], "verify braid relations")
    command(yg, "involution-check", cmd_symp_involution_check, [genus], "involution word acts as -I")
    p = command(yg, "closure", cmd_symp_closure, [genus, mod], "group generated mod m")
    p.add_argument("--power", type=int, default=1, help="use t_i^power as generators")
    p.add_argument("--cap", type=int, default=None, help="element cap (default: $HYMCG_CLOSURE_CAP or 1e7)")
    p = command(yg, "sp-order", cmd_symp_sp_order, [genus], "|Sp(2g, F_p)|")
    p.add_argument("--prime", "-p", type=int, required=True)
    command(yg, "chain", cmd_symp_chain, [genus], "homology classes of the chain curves")
    p = command(yg, "consistency", cmd_symp_consistency, [genus, randomized],
                "random check: level 2 implies trivial Weierstrass permutation")
    p.add_argument("--length", type=int, default=20)

    # strata
    tg = groups.add_parser("strata", help="orbit curve complexes").add_subparsers(dest="cmd", required=True)
    nn = argparse.ArgumentParser(add_help=False)
    nn.add_argument("--n", "-n", dest="n", type=int, required=True)
    var = argparse.ArgumentParser(add_help=False)
    var.add_argument("--variant", choices=strata.VARIANTS, default="full")
    grp = argparse.ArgumentParser(add_help=False)
    grp.add_argument("--group", choices=strata.GROUPS, default="pure")
    command(tg, "count", cmd_strata_count, [nn, var, grp], "vertex orbits")
    p = command(tg, "enum", cmd_strata_enum, [nn, var, grp], "simplices of a given dimension")
    p.add_argument("--dim", type=int, required=True)
    command(tg, "dim", cmd_strata_dim, [nn, var], "dimension by exact search")
    p = command(tg, "homology", cmd_strata_homology, [nn, var], "Betti numbers")
    p.add_argument("--max-dim", type=int, default=None)
    p = command(tg, "dot", cmd_strata_dot, [nn], "stable tree of a family as DOT")
    p.add_argument("family", help="family literal, e.g. [[2,3],[2,3,4,5]]")

    # hyperelliptic dictionary
    hg = groups.add_parser("hyp", help="sphere to genus g dictionary").add_subparsers(dest="cmd", required=True)
    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("family", help="family literal on 2g+2 legs")
    p = command(hg, "classify", cmd_hyp_classify, [genus], "type of the lift of one curve")
    p.add_argument("--subset", required=True, help="comma separated, e.g. 3,4,5")
    command(hg, "lift", cmd_hyp_lift, [genus, fam], "lift a laminar family")
    p = command(hg, "cut", cmd_hyp_cut, [genus, fam], "cut surface profile")
    p.add_argument("--raw", action="store_true", help="keep annuli over twice-punctured discs")
    p = command(hg, "stab", cmd_hyp_stab, [genus, fam], "stabilizer profile")
    p.add_argument("--flavor", choices=dictionary.FLAVORS, default="pureOriented")
    command(hg, "conserve", cmd_hyp_conserve, [genus, randomized],
            "random check: Euler conservation and Riemann-Hurwitz")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ClosureTooLarge as exc:
        print(f"error: {exc} (found {exc.partial_count} elements)", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, HymcgError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
