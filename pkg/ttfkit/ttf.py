# ttfkit/ttf.py
"""
Weak total torsion freeness, checked up to a finite-index bound.

A group is weakly totally torsion free when every finite-index subgroup has a
torsion-free abelianization. The sweep here examines every subgroup of index
at most ``max_index`` in canonical order, one index at a time, and either
reports the first one whose abelianization has torsion or certifies the
group up to that index.
A certificate is always bounded; nothing here claims the unbounded property.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass, field

from ttfkit.abelian import abelianization, relation_matrix, smith_normal_form, FinAbInvariants
from ttfkit.config import get_settings
from ttfkit.errors import BudgetExceeded, VerificationFailure
from ttfkit.fp_core import coset_enumerate, reidemeister_schreier, subgroup_levels

logger = logging.getLogger(__name__)

CERTIFIED = "certified"
REFUTED = "refuted"


@dataclass(frozen=True)
class Witness:
    table: object
    presentation: object
    invariants: FinAbInvariants


@dataclass(frozen=True)
class TtfVerdict:
    status: str
    max_index: int
    witness: Witness | None = None
    witnesses: tuple = ()
    stats: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.status == REFUTED and (self.witness is None or self.witness.invariants.is_torsion_free):
            raise VerificationFailure("a refutation needs a witness with torsion")
        if self.status == CERTIFIED and self.witness is not None:
            raise VerificationFailure("a certificate cannot carry a witness")

    @property
    def certified(self):
        return self.status == CERTIFIED

    def describe(self):
        if self.certified:
            return f"certified up to index {self.max_index}"
        return f"refuted at index {self.witness.table.index}: {self.witness.invariants}"


def subgroup_invariants(table):
    """Abelianization of the subgroup a coset table describes."""
    sub = reidemeister_schreier(table.presentation, table)
    return sub, abelianization(sub)


def _examine(table):
    _, invariants = subgroup_invariants(table)
    return invariants


def _sweep_level(tables, all_witnesses, pool, workers):
    """Abelianizations of one level in canonical order, cut after the first witness."""
    if pool is not None and len(tables) > 1:
        # map yields in input order, so the first witness is the canonical one
        results = list(pool.map(_examine, tables, chunksize=max(1, len(tables) // (4 * workers))))
    else:
        results = []
        for table in tables:
            results.append(_examine(table))
            if not results[-1].is_torsion_free and not all_witnesses:
                break
    if not all_witnesses:
        for i, invariants in enumerate(results):
            if not invariants.is_torsion_free:
                return results[:i + 1]
    return results


def certify_weak_ttf(pres, max_index, budget=None, all_witnesses=False, workers=None):
    """
    Sweep the subgroups of index ≤ max_index one index at a time. Without
    ``all_witnesses`` the sweep stops at the first witness, so larger indices
    are never searched.

    :param all_witnesses: keep sweeping after the first witness and collect all of them.
    :param workers: process count for the abelianization sweep (settings default).
    :return: TtfVerdict; the reported witness is the first in canonical order.
    :raises BudgetExceeded: the subgroup search ran out of budget before finding
        a witness (not a certificate).
    """
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    workers = get_settings().workers if workers is None else workers
    found = []
    stats = {"subgroups_total": 0, "subgroups_examined": 0, "max_index_reached": 0}
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else nullcontext()
    with pool:
        levels = subgroup_levels(pres, max_index, budget=budget)
        while not found or all_witnesses:
            try:
                index, tables = next(levels)
            except StopIteration:
                break
            except BudgetExceeded as exc:
                progress = dict(exc.progress, max_index=max_index,
                                subgroups_examined=stats["subgroups_examined"])
                raise BudgetExceeded(f"subgroup sweep of {pres.name or 'group'} did not finish: {exc}",
                                     progress) from exc
            results = _sweep_level(tables, all_witnesses, pool if workers > 1 else None, workers)
            logger.debug("index %d: %d subgroups, %d examined", index, len(tables), len(results))
            stats["subgroups_total"] += len(tables)
            stats["subgroups_examined"] += len(results)
            if results:
                stats["max_index_reached"] = index
            for table, invariants in zip(tables, results):
                if not invariants.is_torsion_free:
                    found.append(Witness(table, reidemeister_schreier(pres, table), invariants))

    if found:
        verdict = TtfVerdict(REFUTED, max_index, found[0], tuple(found), stats)
    else:
        verdict = TtfVerdict(CERTIFIED, max_index, stats=stats)
    logger.info("%s: %s", pres.name or "group", verdict.describe())
    return verdict


def check_designated_subgroup(pres, subgroup_gens, budget=None):
    """Abelianization invariants of the finite-index subgroup ⟨subgroup_gens⟩."""
    table = coset_enumerate(pres, subgroup_gens, budget=budget)
    _, invariants = subgroup_invariants(table)
    logger.info("designated subgroup of index %d: %s", table.index, invariants)
    return invariants


def verify_witness(verdict):
    """
    Re-verify a refutation end to end: the table is valid for the group, the
    Schreier presentation is reproduced, and the Smith form behind the
    invariants checks out as U·M·V = D with unimodular U, V.
    """
    if verdict.certified:
        raise ValueError("only refutations carry a witness")
    witness = verdict.witness
    table = witness.table
    table.verify()
    sub = reidemeister_schreier(table.presentation, table)
    if sub != witness.presentation:
        raise VerificationFailure("Schreier presentation does not reproduce")
    matrix = relation_matrix(sub)
    u, d, v = smith_normal_form(matrix)
    if u @ matrix @ v != d:
        raise VerificationFailure("Smith form does not satisfy U·M·V = D")
    if abs(u.determinant()) != 1 or abs(v.determinant()) != 1:
        raise VerificationFailure("Smith transforms are not unimodular")
    invariants = FinAbInvariants.from_diagonal(d.diagonal(), matrix.cols)
    if invariants != witness.invariants or invariants.is_torsion_free:
        raise VerificationFailure(f"recomputed invariants {invariants} disagree with the witness")
    return True
