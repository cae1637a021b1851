# ttfkit/cli.py
"""
Command-line front end: ``python -m ttfkit <command> ...``.

Every command prints one Report on stdout. Exit codes: 0 success or
certified, 1 refuted (the report carries the witness), 2 usage or input
error, 3 budget exceeded.
"""
import argparse
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from ttfkit import __version__
from ttfkit.abelian import FinAbGroup, FinAbInvariants, IntMatrix, abelianization, double_dual_evaluation, \
    dual_group, smith_normal_form
from ttfkit.approx import build_torsion_free_quotient, inherited_pairs, is_p_torsion_free_over
from ttfkit.config import get_settings
from ttfkit.errors import BudgetExceeded, TtfkitError, ValidationError
from ttfkit.finite_group import cycle_notation
from ttfkit.formats import read_as, read_sub, read_vab
from ttfkit.fp_core import builtin, free_product, parse_presentation
from ttfkit.galois_rings import fixed_ring_check, galois_criterion, make_stage, separability_basis_check
from ttfkit.log import configure_logging
from ttfkit.report import Report
from ttfkit.ttf import certify_weak_ttf, check_designated_subgroup
from ttfkit.virtab import element_order, embed_sigma_lattice, hantzsche_wendt, infinite_dihedral, \
    is_torsion_free, kk_embed, klein_bottle, torus, z2_times_z
from ttfkit.witt import WittRing, artin_schreier_cokernel, check_ftilde_equals_ftildeV, p_divisibility_stage

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_ERROR = 2
EXIT_BUDGET = 3

VIRTAB_BUILTINS = {
    "dihedral_inf": infinite_dihedral,
    "klein_bottle": klein_bottle,
    "hantzsche_wendt": hantzsche_wendt,
    "z2_times_z": z2_times_z,
    "torus": torus,
}


@dataclass
class CommandResult:
    status: str
    payload: dict
    code: int = EXIT_OK


def _invariants(inv):
    return {"group": str(inv), "rank": inv.rank, "torsion": list(inv.torsion)}


def _split_builtin(source):
    """``builtin:NAME[:P1[:P2 ...]]`` → (NAME, [P1, ...])."""
    name, *params = source[len("builtin:"):].split(":")
    return name, [int(p) for p in params]


def load_presentation(source):
    """A .grp file, ``builtin:NAME[:PARAMS]``, or builtins joined by ``*`` (free product)."""
    if source.startswith("builtin:"):
        factors = source[len("builtin:"):].split("*")
        pres = None
        for factor in factors:
            factor_pres = builtin(*_split_builtin("builtin:" + factor))
            pres = factor_pres if pres is None else free_product(pres, factor_pres)
        return pres
    return parse_presentation(Path(source).read_text())


def load_virtab(source):
    if source.startswith("builtin:"):
        name, params = _split_builtin(source)
        if name not in VIRTAB_BUILTINS:
            raise ValidationError(f"unknown builtin extension {name!r}; choose from {', '.join(VIRTAB_BUILTINS)}",
                                  detail=name)
        return VIRTAB_BUILTINS[name](*params)
    return read_vab(Path(source).read_text())


def _table_payload(table):
    pres = table.presentation
    return {sym: cycle_notation(perm) for sym, perm in zip(pres.generators, table.action)}


# ---------------------------------------------------------------------------
# ab
# ---------------------------------------------------------------------------

def cmd_ab_snf(args):
    rows = [[int(x) for x in row.replace(",", " ").split()] for row in args.rows]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix rows must be nonempty and of equal length")
    matrix = IntMatrix.of(rows, len(rows[0]))
    u, d, v = smith_normal_form(matrix)
    inv = FinAbInvariants.from_diagonal(d.diagonal(), matrix.cols)
    return CommandResult("ok", {
        "diagonal": list(d.diagonal()),
        "cokernel": _invariants(inv),
        "U": [list(r) for r in u.to_lists()],
        "V": [list(r) for r in v.to_lists()],
    })


def cmd_ab_abelianize(args):
    pres = load_presentation(args.source)
    inv = abelianization(pres)
    return CommandResult("ok", {"group": pres.name or args.source, "abelianization": _invariants(inv)})


def cmd_ab_dual(args):
    group = FinAbGroup(FinAbInvariants.from_orders(args.orders))
    dual = dual_group(group)
    _, mapping = double_dual_evaluation(group)
    return CommandResult("ok", {
        "group": str(group.invariants),
        "order": group.order,
        "dual": str(dual.invariants),
        "dual_order": dual.order,
        "double_dual_bijective": len(set(mapping.values())) == group.order,
    })


# ---------------------------------------------------------------------------
# ttf
# ---------------------------------------------------------------------------

def cmd_ttf_check(args):
    pres = load_presentation(args.source)
    verdict = certify_weak_ttf(pres, args.max_index, budget=args.budget, all_witnesses=args.all_witnesses)
    payload = {"group": pres.name or args.source, "max_index": args.max_index}
    payload.update(verdict.stats)
    if verdict.certified:
        return CommandResult("certified", payload)
    witnesses = []
    for w in verdict.witnesses:
        witnesses.append({
            "index": w.table.index,
            "abelianization": str(w.invariants),
            "rank": w.invariants.rank,
            "torsion": list(w.invariants.torsion),
            "coset_action": _table_payload(w.table),
        })
    payload["witness"] = witnesses[0]
    if args.all_witnesses:
        payload["witnesses"] = witnesses
    return CommandResult("refuted", payload, EXIT_REFUTED)


def cmd_ttf_subgroup(args):
    pres = load_presentation(args.source)
    gens = [pres.parse_word(w) for w in args.gens]
    inv = check_designated_subgroup(pres, gens, budget=args.budget)
    payload = {"group": pres.name or args.source,
               "subgroup": [pres.word_text(w) for w in gens],
               "abelianization": _invariants(inv)}
    if inv.is_torsion_free:
        return CommandResult("torsion-free", payload)
    return CommandResult("torsion", payload, EXIT_REFUTED)


# ---------------------------------------------------------------------------
# virtab / embed
# ---------------------------------------------------------------------------

def cmd_virtab_torsion(args):
    G = load_virtab(args.source)
    ok, witness = is_torsion_free(G)
    payload = {"group": G.name or args.source, "Q_order": G.Q.order, "rank": G.n}
    if ok:
        return CommandResult("torsion-free", payload)
    payload["witness"] = G.format_element(witness)
    payload["order"] = element_order(G, witness)
    return CommandResult("torsion", payload, EXIT_REFUTED)


def cmd_virtab_embed(args):
    G = load_virtab(args.source)
    wreath, _, report = kk_embed(G)
    sigma = embed_sigma_lattice(G)
    payload = {
        "group": G.name or args.source,
        "wreath": wreath.base.name,
        "kaloujnine_krasner": {
            "pairs_checked": report.pairs_checked,
            "homomorphism": report.homomorphism,
            "finite_kernel_trivial": report.finite_kernel_trivial,
            "lattice_injective": report.lattice_injective,
            "projection_commutes": report.projection_commutes,
        },
        "N": sigma.N,
        "target": sigma.target.name,
        "generator_images": [
            f"{G.format_element(x)} -> {sigma.target.format_element(sigma.map(x))}" for x in G.generators()],
    }
    return CommandResult("embedded", payload)


# ---------------------------------------------------------------------------
# approx
# ---------------------------------------------------------------------------

def _parse_pair(text):
    p, sep, g = text.partition(":")
    if not sep:
        raise ValueError(f"pair {text!r} must read P:G")
    return int(p), g


def cmd_approx_check(args):
    system = read_as(Path(args.source).read_text())
    ok, witness = is_p_torsion_free_over(system, args.p, args.g)
    payload = {"p": args.p, "g": args.g, "rank": system.ghat.n, "Q_order": system.ghat.Q.order}
    if ok:
        return CommandResult("p-torsion-free", payload)
    payload["witness"] = system.ghat.format_element(witness)
    return CommandResult("p-torsion", payload, EXIT_REFUTED)


def cmd_approx_build(args):
    systems = [read_as(Path(path).read_text()) for path in args.systems]
    pairs = [_parse_pair(p) for p in args.pairs] if args.pairs else None
    report = build_torsion_free_quotient(systems, pairs)
    G = systems[0].G
    ghat = report.ghat
    payload = {
        "fold_order": [args.systems[i] for i in report.fold_order],
        "coverage": [f"{p}:{G.label(g)} <- {args.systems[i]}" for p, g, i in report.coverage],
        "pairs": [f"{p}:{G.label(g)} {'torsion-free' if ok else 'torsion'}" for p, g, ok in report.pair_checks],
        "Q_order": ghat.Q.order,
        "rank": ghat.n,
        "lattice_basis": [list(b) for b in report.system.inclusion.basis] if report.system.inclusion else [],
        "torsion_free": report.torsion_free,
    }
    if len(systems) == 2:
        rows = inherited_pairs(systems[0], systems[1], [(p, g) for p, g, _ in report.pair_checks],
                               product=report.system)
        payload["inherited"] = [f"{p}:{G.label(g)} {s1} {s2} {prod}" for p, g, s1, s2, prod in rows]
    if report.torsion_free:
        return CommandResult("torsion-free", payload)
    payload["witness"] = ghat.format_element(report.witness)
    return CommandResult("torsion", payload, EXIT_REFUTED)


# ---------------------------------------------------------------------------
# witt
# ---------------------------------------------------------------------------

def _witt_q(args):
    if args.deg < 1:
        raise ValueError("--deg must be positive")
    return args.p ** args.deg


def cmd_witt_coker(args):
    q = _witt_q(args)
    result = artin_schreier_cokernel(q, args.n, level_guard=args.level_guard)
    ring = WittRing.of(q, args.n, args.level_guard)
    payload = {
        "q": q, "n": args.n,
        "cokernel": _invariants(result.invariants),
        "order": result.invariants.order,
        "image_order": result.image_order,
        "transition": [f"{a} -> {b}" for a, b in sorted(result.transition.items(),
                                                        key=lambda kv: kv[0].components)],
        "ring_order": ring.order,
    }
    return CommandResult("ok", payload)


def cmd_witt_check_ftilde(args):
    q = _witt_q(args)
    ok = check_ftilde_equals_ftildeV(q, args.n, level_guard=args.level_guard)
    return CommandResult("true" if ok else "false", {"q": q, "n": args.n, "ftilde_equals_ftildeV": ok},
                         EXIT_OK if ok else EXIT_REFUTED)


def cmd_witt_check_div(args):
    q = _witt_q(args)
    ok = p_divisibility_stage(q, args.n, level_guard=args.level_guard)
    return CommandResult("true" if ok else "false", {"q": q, "n": args.n, "p_divisible": ok},
                         EXIT_OK if ok else EXIT_REFUTED)


# ---------------------------------------------------------------------------
# galois
# ---------------------------------------------------------------------------

def cmd_galois_check(args):
    stage = make_stage(args.q, args.n, args.s)
    sub = read_sub(Path(args.subgroup).read_text(), stage) if args.subgroup else [stage.twist_generator(0)]
    basis_ok, basis = separability_basis_check(stage)
    certificate = galois_criterion(stage, sub)
    payload = {
        "stage": str(stage),
        "theta": stage.base.format(stage.theta),
        "subgroup": [str(g) for g in sub],
        "group_order": certificate.group_order,
        "fixed_ring": fixed_ring_check(stage),
        "basis": [stage.format(b) for b in basis],
        "basis_free": basis_ok,
        "points_checked": certificate.points_checked,
    }
    if certificate.galois:
        return CommandResult("galois", payload)
    point, g = certificate.witness
    payload["witness"] = {"point": point, "inertia_element": str(g)}
    return CommandResult("not-galois", payload, EXIT_REFUTED)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="ttfkit", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ttfkit {__version__}")
    parser.add_argument("--seed", type=int, default=None, help="seed for sampled checks")
    commands = parser.add_subparsers(dest="command", required=True)

    ab = commands.add_parser("ab", help="abelian group invariants").add_subparsers(dest="action", required=True)
    snf = ab.add_parser("snf", help="Smith normal form of an integer matrix")
    snf.add_argument("rows", nargs="+", help="matrix rows, entries separated by spaces or commas")
    snf.set_defaults(func=cmd_ab_snf)
    abz = ab.add_parser("abelianize", help="abelianization of a presentation")
    abz.add_argument("source", help=".grp file or builtin:NAME[:PARAMS]")
    abz.set_defaults(func=cmd_ab_abelianize)
    dual = ab.add_parser("dual", help="Pontryagin dual of Z/D1 + Z/D2 + ...")
    dual.add_argument("orders", nargs="+", type=int)
    dual.set_defaults(func=cmd_ab_dual)

    ttf = commands.add_parser("ttf", help="weak total torsion freeness").add_subparsers(dest="action", required=True)
    check = ttf.add_parser("check", help="sweep all subgroups up to an index bound")
    check.add_argument("source", help=".grp file, builtin:NAME[:PARAMS] or builtin:A*B")
    check.add_argument("--max-index", type=int, required=True)
    check.add_argument("--budget", type=int, default=None)
    check.add_argument("--all-witnesses", action="store_true")
    check.set_defaults(func=cmd_ttf_check)
    subgroup = ttf.add_parser("subgroup", help="abelianization of a designated subgroup")
    subgroup.add_argument("source")
    subgroup.add_argument("--gens", nargs="+", required=True, help="subgroup generator words")
    subgroup.add_argument("--budget", type=int, default=None)
    subgroup.set_defaults(func=cmd_ttf_subgroup)

    virtab = commands.add_parser("virtab", help="extension data").add_subparsers(dest="action", required=True)
    torsion = virtab.add_parser("torsion", help="decide torsion freeness")
    torsion.add_argument("source", help=".vab file or builtin:NAME")
    torsion.set_defaults(func=cmd_virtab_torsion)
    for sub in (virtab.add_parser("embed", help="embed into Q wr Z^n and Sigma_N x| Z^N"),
                commands.add_parser("embed", help="alias of 'virtab embed'")):
        sub.add_argument("source", help=".vab file or builtin:NAME")
        sub.set_defaults(func=cmd_virtab_embed)

    approx = commands.add_parser("approx", help="approximation systems").add_subparsers(dest="action", required=True)
    acheck = approx.add_parser("check", help="p-torsion freeness over g")
    acheck.add_argument("source", help=".as file")
    acheck.add_argument("--p", type=int, required=True)
    acheck.add_argument("--g", required=True, help="label of an element of G")
    acheck.set_defaults(func=cmd_approx_check)
    build = approx.add_parser("build", help="iterated fiber product")
    build.add_argument("--systems", nargs="+", required=True)
    build.add_argument("--pairs", nargs="*", default=None, help="P:G pairs; all prime-order pairs when omitted")
    build.set_defaults(func=cmd_approx_build)

    witt = commands.add_parser("witt", help="Witt vectors over F_q").add_subparsers(dest="action", required=True)
    for name, func in (("coker", cmd_witt_coker), ("check-ftilde", cmd_witt_check_ftilde),
                       ("check-div", cmd_witt_check_div)):
        sub = witt.add_parser(name)
        sub.add_argument("--p", type=int, required=True)
        sub.add_argument("--deg", type=int, default=1)
        sub.add_argument("--n", type=int, required=True)
        sub.add_argument("--level-guard", type=int, default=None)
        sub.set_defaults(func=func)

    galois = commands.add_parser("galois", help="Laurent stages").add_subparsers(dest="action", required=True)
    gcheck = galois.add_parser("check", help="Galois criterion on rational points")
    gcheck.add_argument("--q", type=int, required=True)
    gcheck.add_argument("--n", type=int, required=True)
    gcheck.add_argument("--s", type=int, required=True)
    gcheck.add_argument("--subgroup", default=None, help=".sub file; the twist generator alone when omitted")
    gcheck.set_defaults(func=cmd_galois_check)
    return parser


def _apply_seed(seed):
    if seed is not None:
        os.environ["TTFKIT_SEED"] = str(seed)
        get_settings.cache_clear()


def run(argv=None, stdout=None):
    """Run one command; the report goes to ``stdout`` and the exit code is returned."""
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    _apply_seed(args.seed)
    settings = get_settings()
    configure_logging(settings.log_file, settings.log_level)
    command = " ".join(argv)
    try:
        result = args.func(args)
    except BudgetExceeded as exc:
        logger.warning("budget exceeded: %s", exc)
        result = CommandResult("budget-exceeded", {"error": str(exc), "progress": dict(sorted(exc.progress.items()))},
                               EXIT_BUDGET)
    except (TtfkitError, ValueError, OSError) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        print(f"error: {exc}", file=sys.stderr)
        result = CommandResult("error", {"error_type": type(exc).__name__, "error": str(exc)}, EXIT_ERROR)
    report = Report(command, result.status, result.payload, seed=settings.seed)
    stdout.write(report.render())
    return result.code


def main():
    return run()
