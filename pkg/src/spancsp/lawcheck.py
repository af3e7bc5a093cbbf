"""Seeded randomized checks of the algebraic laws.

Each law has a trial function that builds a random instance from a
``random.Random(seed)`` and evaluates both sides. Outcomes per seed:

* pass;
* failure: the sides disagree, or a construction broke an invariant;
* error: a search budget ran out (reported apart from failures);
* rejected: the generator could not produce a valid instance.
"""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

from .cells import (
    TwoCell,
    associator,
    cells_equivalent,
    cells_isomorphic,
    companion_cells,
    companion_conjoint,
    companion_equations,
    conjoint_equations,
    horizontal_compose,
    identity_cell,
    interchanger,
    left_unitor,
    mirror_cell,
    right_unitor,
    tensor_cells,
    vertical_compose,
    vertical_compose_all,
)
from .compact import dual_pair, snake_holds, verify_fold_pushout
from .cospans import Cospan, compose_cospans, cospans_isomorphic, identity_cospan, tensor_cospans
from .errors import BudgetExceeded, DanglingError, SpanCspError
from .generators import (
    random_cell_below,
    random_cospan,
    random_graph,
    random_host,
    random_iso_span,
    random_mono_from,
    random_mono_into,
    random_morphism_from,
    random_morphism_into,
    random_rule,
)
from .graph import classify_morphism
from .isomorphism import DEFAULT_SEARCH_BUDGET
from .limits import DEFAULT_VERIFY_CAP, pullback, pushout, verify_universal_property
from .rewrite import apply_rule, find_matches, invert_rule, is_open_graph
from .serialize import Document, to_json

LAWS = (
    "interchange",
    "associator_unitor",
    "interchanger_coherence",
    "companion_equations",
    "mono_preservation",
    "snake",
    "dpo_soundness",
)

DEFAULT_MAX_NODES = 4
DEFAULT_MAX_EDGES = 5
MAX_ATTEMPTS = 20


@dataclass(frozen=True)
class Bounds:
    max_nodes: int = DEFAULT_MAX_NODES
    max_edges: int = DEFAULT_MAX_EDGES
    budget: int = DEFAULT_SEARCH_BUDGET
    verify_cap: int = DEFAULT_VERIFY_CAP


@dataclass
class Trial:
    ok: bool
    instance: dict = field(default_factory=dict)
    detail: str = ""
    rejected: int = 0


class _Rejected(Exception):
    def __init__(self, attempts: int):
        self.attempts = attempts


@dataclass(frozen=True)
class FirstFailure:
    seed: int
    kind: str  # "violation", "exception" or "budget"
    detail: str
    instance: dict


@dataclass(frozen=True)
class LawReport:
    law: str
    trials: int
    passes: int
    failures: int
    errors: int
    rejected: int
    first_failure: FirstFailure | None

    @property
    def ok(self) -> bool:
        return self.passes == self.trials

    def to_json(self) -> dict:
        return asdict(self)

    def summary(self) -> str:
        line = f"{self.law}: {self.passes}/{self.trials} passed"
        extras = []
        if self.failures:
            extras.append(f"{self.failures} failed")
        if self.errors:
            extras.append(f"{self.errors} over budget")
        if self.rejected:
            extras.append(f"{self.rejected} instances rejected")
        if extras:
            line += " (" + ", ".join(extras) + ")"
        if self.first_failure is not None:
            ff = self.first_failure
            line += f"; first failure at seed {ff.seed} ({ff.kind}): {ff.detail}"
        return line


def _docs(**values) -> dict:
    """Serialize the named values of an instance for reporting."""
    out = {}
    for name, v in values.items():
        out[name] = {"kind": Document.of(v).kind, "payload": to_json(v)}
    return out


def _chain(rng: random.Random, length: int, b: Bounds) -> list[Cospan]:
    """Composable cospans ``X0 -> X1 -> ... -> Xn``."""
    feet_nodes = max(1, b.max_nodes // 2)
    feet = [random_graph(rng, feet_nodes, b.max_edges // 3) for _ in range(length + 1)]
    return [random_cospan(rng, feet[i], feet[i + 1]) for i in range(length)]


def _pushouts_ok(a: TwoCell, c: TwoCell, b: Bounds) -> str:
    """Check every row pushout used to glue ``a`` beside ``c``; return a complaint or ''."""
    for name in ("top", "mid", "bottom"):
        ra, rc = getattr(a, name), getattr(c, name)
        po = pushout(ra.right_leg, rc.left_leg)
        square = (ra.right_leg, rc.left_leg, po.left_inclusion, po.right_inclusion)
        if not verify_universal_property("pushout", square, cap=b.verify_cap):
            return f"{name} row of a horizontal composite is not a pushout"
    return ""


def _pullback_ok(a: TwoCell, c: TwoCell, b: Bounds) -> str:
    pb = pullback(a.down, c.up)
    square = (a.down, c.up, pb.left_projection, pb.right_projection)
    if not verify_universal_property("pullback", square, cap=b.verify_cap):
        return "middle apex of a vertical composite is not a pullback"
    return ""


# -- trials ----------------------------------------------------------------------


def trial_interchange(rng: random.Random, b: Bounds) -> Trial:
    t1, t2 = _chain(rng, 2, b)
    x, y, z = t1.left_foot, t1.right_foot, t2.right_foot
    s1, m1, r1 = random_iso_span(rng, x), random_iso_span(rng, y), random_iso_span(rng, z)
    s2, m2, r2 = random_iso_span(rng, s1.bottom), random_iso_span(rng, m1.bottom), random_iso_span(rng, r1.bottom)
    alpha = random_cell_below(rng, t1, s1, m1)
    alpha2 = random_cell_below(rng, t2, m1, r1)
    beta = random_cell_below(rng, alpha.bottom, s2, m2)
    beta2 = random_cell_below(rng, alpha2.bottom, m2, r2)
    inst = _docs(alpha=alpha, alpha_right=alpha2, beta=beta, beta_right=beta2)

    for a, c in ((alpha, alpha2), (beta, beta2)):
        if msg := _pushouts_ok(a, c, b):
            return Trial(False, inst, msg)
    for a, c in ((alpha, beta), (alpha2, beta2)):
        if msg := _pullback_ok(a, c, b):
            return Trial(False, inst, msg)
    top_h, bot_h = horizontal_compose(alpha, alpha2), horizontal_compose(beta, beta2)
    left_v, right_v = vertical_compose(alpha, beta), vertical_compose(alpha2, beta2)
    for msg in (_pullback_ok(top_h, bot_h, b), _pushouts_ok(left_v, right_v, b)):
        if msg:
            return Trial(False, inst, msg)
    lhs = vertical_compose(top_h, bot_h)
    rhs = horizontal_compose(left_v, right_v)
    if cells_isomorphic(lhs, rhs, budget=b.budget) is None:
        return Trial(False, inst, "the two composites are not isomorphic")
    return Trial(True, inst)


def trial_associator_unitor(rng: random.Random, b: Bounds) -> Trial:
    m, n, p, q = _chain(rng, 4, b)
    inst = _docs(m=m, n=n, p=p, q=q)
    u = identity_cospan(m.right_foot)
    triangle_lhs = horizontal_compose(right_unitor(m), identity_cell(n))
    triangle_rhs = vertical_compose(
        associator(m, u, n), horizontal_compose(identity_cell(m), left_unitor(n))
    )
    if not cells_equivalent(triangle_lhs, triangle_rhs, budget=b.budget):
        return Trial(False, inst, "triangle identity fails")
    cmn = compose_cospans(m, n)
    cpq = compose_cospans(p, q)
    direct = vertical_compose(associator(cmn, p, q), associator(m, n, cpq))
    cnp = compose_cospans(n, p)
    around = vertical_compose_all(
        horizontal_compose(associator(m, n, p), identity_cell(q)),
        associator(m, cnp, q),
        horizontal_compose(identity_cell(m), associator(n, p, q)),
    )
    if not cells_equivalent(direct, around, budget=b.budget):
        return Trial(False, inst, "pentagon identity fails")
    return Trial(True, inst)


def trial_interchanger_coherence(rng: random.Random, b: Bounds) -> Trial:
    small = Bounds(max(2, b.max_nodes - 1), max(2, b.max_edges - 2), b.budget, b.verify_cap)
    m1, m2, m3 = _chain(rng, 3, small)
    n1, n2, n3 = _chain(rng, 3, small)
    inst = _docs(m1=m1, m2=m2, m3=m3, n1=n1, n2=n2, n3=n3)
    m12, n12 = compose_cospans(m1, m2), compose_cospans(n1, n2)
    m23, n23 = compose_cospans(m2, m3), compose_cospans(n2, n3)
    t1, t3 = tensor_cospans(m1, n1), tensor_cospans(m3, n3)
    one = vertical_compose_all(
        horizontal_compose(interchanger(m1, n1, m2, n2), identity_cell(t3)),
        interchanger(m12, n12, m3, n3),
        tensor_cells(associator(m1, m2, m3), associator(n1, n2, n3)),
    )
    two = vertical_compose_all(
        associator(t1, tensor_cospans(m2, n2), t3),
        horizontal_compose(identity_cell(t1), interchanger(m2, n2, m3, n3)),
        interchanger(m1, n1, m23, n23),
    )
    if not cells_equivalent(one, two, budget=b.budget):
        return Trial(False, inst, "interchanger and associator do not cohere")
    return Trial(True, inst)


def trial_companion_equations(rng: random.Random, b: Bounds) -> Trial:
    f = random_iso_span(rng, random_graph(rng, b.max_nodes, b.max_edges))
    inst = _docs(span=f)
    counit, unit = companion_cells(f)
    if not all(companion_equations(f, counit, unit, budget=b.budget)):
        return Trial(False, inst, "companion equations fail")
    if not all(conjoint_equations(f, mirror_cell(counit), mirror_cell(unit), budget=b.budget)):
        return Trial(False, inst, "conjoint equations fail")
    data = companion_conjoint(f, budget=b.budget)
    if data.conjoint != data.companion.reversed():
        return Trial(False, inst, "conjoint is not the reversed companion")
    return Trial(True, inst)


def trial_mono_preservation(rng: random.Random, b: Bounds) -> Trial:
    a = random_graph(rng, b.max_nodes, b.max_edges)
    mono = random_mono_from(rng, a)
    other = random_morphism_from(rng, a)
    d = random_graph(rng, b.max_nodes, b.max_edges)
    sub = random_mono_into(rng, d)
    arb = random_morphism_into(rng, d, b.max_nodes, b.max_edges)
    inst = _docs(pushout_mono=mono, pushout_other=other, pullback_mono=sub, pullback_other=arb)
    po = pushout(mono, other)
    if not classify_morphism(po.right_inclusion).mono:
        return Trial(False, inst, "pushout of a monic is not monic")
    pb = pullback(arb, sub)
    if not classify_morphism(pb.left_projection).mono:
        return Trial(False, inst, "pullback of a monic is not monic")
    return Trial(True, inst)


def trial_snake(rng: random.Random, b: Bounds) -> Trial:
    x = random_graph(rng, b.max_nodes, b.max_edges)
    return snake_trial(x, b)


def snake_trial(x, b: Bounds) -> Trial:
    inst = _docs(object=x)
    if not snake_holds(x, budget=b.budget):
        return Trial(False, inst, "zigzag is not isomorphic to the identity cospan")
    if not verify_fold_pushout(x, cap=b.verify_cap):
        return Trial(False, inst, "fold square is not a pushout")
    dual_pair(x, budget=b.budget)
    return Trial(True, inst)


def trial_dpo_soundness(rng: random.Random, b: Bounds) -> Trial:
    for attempt in range(MAX_ATTEMPTS):
        rule = random_rule(rng, b.max_nodes, b.max_edges)
        host = random_host(rng, rule)
        matches = find_matches(rule, host)
        if not matches:
            continue
        match = rng.choice(matches)
        try:
            res = apply_rule(rule, host, match)
        except DanglingError:
            continue
        return _dpo_check(rule, host, match, res, b, attempt)
    raise _Rejected(MAX_ATTEMPTS)


def _dpo_check(rule, host, match, res, b: Bounds, rejected: int) -> Trial:
    inst = _docs(rule=rule.cell, host=host, match=match.match)
    c = rule.cell
    comp = res.complement
    first = (c.up, comp.from_interface, match.match, comp.into_host)
    second = (comp.from_interface, c.down, res.witness.down, res.comatch.match)
    for name, sq in (("deletion", first), ("insertion", second)):
        if not verify_universal_property("pushout", sq, cap=b.verify_cap):
            return Trial(False, inst, f"{name} square is not a pushout", rejected)
    if res.result.left_foot != host.left_foot or res.result.right_foot != host.right_foot:
        return Trial(False, inst, "rewrite changed the host feet", rejected)
    if not is_open_graph(res.result):
        return Trial(False, inst, "rewrite produced a non-open graph", rejected)
    back = apply_rule(invert_rule(rule), res.result, res.comatch)
    if cospans_isomorphic(back.result, host, budget=b.budget) is None:
        return Trial(False, inst, "inverse rule at the comatch does not restore the host", rejected)
    return Trial(True, inst, "", rejected)


TRIALS: dict[str, Callable[[random.Random, Bounds], Trial]] = {
    "interchange": trial_interchange,
    "associator_unitor": trial_associator_unitor,
    "interchanger_coherence": trial_interchanger_coherence,
    "companion_equations": trial_companion_equations,
    "mono_preservation": trial_mono_preservation,
    "snake": trial_snake,
    "dpo_soundness": trial_dpo_soundness,
}


# -- drivers ---------------------------------------------------------------------


def run_trials(law: str, outcomes: Iterable[tuple[int, Callable[[], Trial]]]) -> LawReport:
    """Fold per-seed trial thunks into a report, in the given order."""
    trials = passes = failures = errors = rejected = 0
    first: FirstFailure | None = None
    for seed, thunk in outcomes:
        trials += 1
        try:
            t = thunk()
        except _Rejected as exc:
            rejected += exc.attempts
            errors += 1
            first = first or FirstFailure(seed, "rejected", f"no valid instance in {exc.attempts} attempts", {})
            continue
        except BudgetExceeded as exc:
            errors += 1
            first = first or FirstFailure(seed, "budget", str(exc), {})
            continue
        except (SpanCspError, AssertionError) as exc:
            failures += 1
            first = first or FirstFailure(seed, "exception", f"{type(exc).__name__}: {exc}", {})
            continue
        rejected += t.rejected
        if t.ok:
            passes += 1
        else:
            failures += 1
            first = first or FirstFailure(seed, "violation", t.detail, t.instance)
    return LawReport(law, trials, passes, failures, errors, rejected, first)


def check_law(
    law: str,
    seeds: Sequence[int],
    budget: int = DEFAULT_SEARCH_BUDGET,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_edges: int = DEFAULT_MAX_EDGES,
    verify_cap: int = DEFAULT_VERIFY_CAP,
) -> LawReport:
    """Run ``law`` once per seed; deterministic in ``seeds``."""
    if law not in TRIALS:
        raise ValueError(f"unknown law {law!r}; expected one of {', '.join(LAWS)}")
    bounds = Bounds(max_nodes, max_edges, budget, verify_cap)
    fn = TRIALS[law]
    return run_trials(law, ((s, lambda s=s: fn(random.Random(s), bounds)) for s in seeds))


@dataclass(frozen=True)
class SuiteConfig:
    seeds: Sequence[int] = tuple(range(20))
    max_nodes: int = DEFAULT_MAX_NODES
    max_edges: int = DEFAULT_MAX_EDGES
    budget: int = DEFAULT_SEARCH_BUDGET
    laws: Sequence[str] = LAWS


def run_law_suite(config: SuiteConfig = SuiteConfig()) -> list[LawReport]:
    return [
        check_law(law, list(config.seeds), config.budget, config.max_nodes, config.max_edges)
        for law in config.laws
    ]


def suite_passed(reports: Sequence[LawReport]) -> bool:
    return all(r.ok for r in reports)


def reports_json(reports: Sequence[LawReport]) -> str:
    return json.dumps([r.to_json() for r in reports], sort_keys=True, indent=1) + "\n"
