"""
Bounded Legendrian isotopy search over canonical front words, and the
stabilization search computing Cost on small fronts.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, PrivateAttr, ValidationError, field_validator

from .config import config
from .cost import CostResult, cost_lower_bound, sign_splits
from .front_core import FrontWord, OrientedFront, classical_invariants, orient_front
from .moves import (
    MoveKind,
    MoveStepModel,
    MoveTrace,
    canonical_form,
    neighbors,
    settle_zigzags,
    stabilize_many,
    trace_models,
)

logger = logging.getLogger(__name__)

EQUIVALENT = "Equivalent"
DISTINCT = "Distinct"
UNKNOWN = "Unknown"


class BudgetError(ValueError):
    """Raised for malformed search budgets."""


class SearchBudget(BaseModel):
    """Limits for one bounded search; defaults come from configuration."""

    model_config = {"frozen": True}

    max_width: int = Field(default_factory=lambda: config.SEARCH_MAX_WIDTH)
    max_events: int = Field(default_factory=lambda: config.SEARCH_MAX_EVENTS)
    max_states: int = Field(default_factory=lambda: config.SEARCH_MAX_STATES)
    max_cost: int = Field(default_factory=lambda: config.SEARCH_MAX_COST)

    @field_validator("max_width", "max_events", "max_states", "max_cost")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("must be positive")
        return value

    @classmethod
    def build(cls, **overrides) -> "SearchBudget":
        """Budget from configuration defaults plus non-None overrides."""
        values = {k: v for k, v in overrides.items() if v is not None}
        try:
            return cls(**values)
        except ValidationError as e:
            raise BudgetError(f"invalid search budget: {e.errors()[0]['loc'][0]} {e.errors()[0]['msg']}") from e


class IsotopyVerdict(BaseModel):
    status: Literal["Equivalent", "Distinct", "Unknown"]
    reason: Optional[str] = None
    trace: Optional[List[MoveStepModel]] = None
    stats: Dict[str, int] = {}

    _move_trace: Optional[MoveTrace] = PrivateAttr(default=None)

    @property
    def move_trace(self) -> Optional[MoveTrace]:
        return self._move_trace

    @classmethod
    def equivalent(cls, trace: MoveTrace, stats: Dict[str, int]) -> "IsotopyVerdict":
        verdict = cls(status=EQUIVALENT, trace=trace_models(trace), stats=stats)
        verdict._move_trace = trace
        return verdict

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)


FrontLike = Union[FrontWord, OrientedFront]


def _as_oriented(front: FrontLike) -> OrientedFront:
    return front if isinstance(front, OrientedFront) else orient_front(front)


class _Side:
    """One direction of the bidirectional search."""

    def __init__(self, root: FrontWord):
        self.parent: Dict[FrontWord, Optional[Tuple[FrontWord, MoveKind]]] = {root: None}
        self.frontier: List[FrontWord] = [root]
        self.pruned = 0

    def path_to(self, word: FrontWord) -> List[Tuple[FrontWord, MoveKind, FrontWord]]:
        """(source, move, result) steps from the root to `word`."""
        steps = []
        while self.parent[word] is not None:
            source, move = self.parent[word]
            steps.append((source, move, word))
            word = source
        steps.reverse()
        return steps


def _within(word: FrontWord, budget: SearchBudget) -> bool:
    return len(word) <= budget.max_events and word.width <= budget.max_width


def _inverse_move(source: FrontWord, move: MoveKind, result: FrontWord) -> MoveKind:
    """A forward move taking `result` back to `source`, or the reversed `move`."""
    for candidate, word in neighbors(result):
        if word == source:
            return candidate
    return move.reversed()


def _trace_steps(trace: MoveTrace) -> List[Tuple[FrontWord, MoveKind, FrontWord]]:
    sources = [trace.start] + [word for _, word in trace.steps[:-1]]
    return [(source, move, word) for source, (move, word) in zip(sources, trace.steps)]


def _undo(trace: MoveTrace, settled: MoveTrace) -> MoveTrace:
    """Extend `trace` by the steps of `settled` walked back to its start."""
    for source, move, result in reversed(_trace_steps(settled)):
        trace = trace.extended(_inverse_move(source, move, result), source)
    return trace


def _build_trace(prefix: MoveTrace, forward: _Side, backward: _Side, meet: FrontWord,
                 suffix: MoveTrace) -> MoveTrace:
    trace = prefix
    for _, move, result in forward.path_to(meet):
        trace = trace.extended(move, result)
    for source, move, result in reversed(backward.path_to(meet)):
        trace = trace.extended(_inverse_move(source, move, result), source)
    return _undo(trace, suffix)


def _expand(words: List[FrontWord], threads: int) -> List[List[Tuple[MoveKind, FrontWord]]]:
    if threads > 1 and len(words) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(neighbors, words))
    return [neighbors(word) for word in words]


def lr_equivalent(f: FrontLike, g: FrontLike, budget: Optional[SearchBudget] = None,
                  threads: Optional[int] = None) -> IsotopyVerdict:
    """Decide Legendrian isotopy of two fronts within a search budget.

    The search runs over unoriented canonical words. Orientation enters through
    the rotation number: with equal nonzero rot the orientations must agree,
    while rot = 0 inputs are compared as unoriented knots. Both words first
    have their zigzags settled onto segment 0, so fronts differing only in
    where their stabilizations sit meet without a search.
    """
    budget = budget or SearchBudget()
    threads = threads or config.SEARCH_THREADS
    inv_f = classical_invariants(_as_oriented(f))
    inv_g = classical_invariants(_as_oriented(g))
    if inv_f.tb != inv_g.tb:
        return IsotopyVerdict(status=DISTINCT, reason=f"tb mismatch ({inv_f.tb} vs {inv_g.tb})")
    if inv_f.rot != inv_g.rot:
        return IsotopyVerdict(status=DISTINCT, reason=f"rot mismatch ({inv_f.rot} vs {inv_g.rot})")

    word_f = f.word if isinstance(f, OrientedFront) else f
    word_g = g.word if isinstance(g, OrientedFront) else g
    settled_f = settle_zigzags(word_f)
    settled_g = settle_zigzags(word_g)
    start, goal = settled_f.end, settled_g.end
    sides = (_Side(start), _Side(goal))
    stats = {"states": 1 if start == goal else 2, "layers": 0, "pruned": 0}
    logger.info(f"Isotopy search {start} <-> {goal} (tb={inv_f.tb}, rot={inv_f.rot})")

    if start == goal:
        return IsotopyVerdict.equivalent(_undo(settled_f, settled_g), stats)

    while True:
        live = [i for i in (0, 1) if sides[i].frontier]
        if len(live) < 2:
            exhausted = sides[0] if not sides[0].frontier else sides[1]
            stats["pruned"] = sides[0].pruned + sides[1].pruned
            if exhausted.pruned == 0:
                return IsotopyVerdict(
                    status=DISTINCT,
                    reason=f"full move closure of {len(exhausted.parent)} words enumerated without meeting",
                    stats=stats,
                )
            return IsotopyVerdict(status=UNKNOWN, reason="closure truncated by width/length limits", stats=stats)

        index = min(live, key=lambda i: (len(sides[i].frontier), i))
        side, other = sides[index], sides[1 - index]
        stats["layers"] += 1
        logger.debug(f"Expanding side {index}: {len(side.frontier)} words, {stats['states']} states so far")
        next_frontier: List[FrontWord] = []
        for word, results in zip(side.frontier, _expand(side.frontier, threads)):
            for move, nb in results:
                if nb in side.parent:
                    continue
                if not _within(nb, budget):
                    side.pruned += 1
                    continue
                side.parent[nb] = (word, move)
                next_frontier.append(nb)
                stats["states"] += 1
                if nb in other.parent:
                    stats["pruned"] = sides[0].pruned + sides[1].pruned
                    forward, backward = (side, other) if index == 0 else (other, side)
                    trace = _build_trace(settled_f, forward, backward, nb, settled_g)
                    logger.info(f"Fronts meet after {stats['states']} states, trace of {len(trace)} moves")
                    return IsotopyVerdict.equivalent(trace, stats)
                if stats["states"] >= budget.max_states:
                    stats["pruned"] = sides[0].pruned + sides[1].pruned
                    logger.warning(f"Isotopy search hit max_states={budget.max_states}")
                    return IsotopyVerdict(status=UNKNOWN, reason=f"max_states={budget.max_states} reached",
                                          stats=stats)
        side.frontier = next_frontier


def cost_search(f: OrientedFront, g: OrientedFront, budget: Optional[SearchBudget] = None,
                threads: Optional[int] = None, floor: int = 0) -> CostResult:
    """Least total number of stabilizations making f and g Legendrian isotopic.

    Totals run upward from the invariant lower bound in steps of 2. A total is
    ruled out only when every feasible sign split is certified Distinct.
    `floor` is a lower bound known from elsewhere (a formula, an earlier run);
    the search starts there instead.

    When some smaller total stayed Unknown the result is Interval(bound, c)
    rather than Exact(c): c is achieved, but nothing below it was excluded.
    """
    budget = budget or SearchBudget()
    a, b = classical_invariants(f), classical_invariants(g)
    bound = cost_lower_bound(a, b)
    if floor > bound:
        bound = floor + (floor - bound) % 2
    totals = {"states": 0, "searches": 0}
    for c in range(bound, budget.max_cost + 1, 2):
        settled = True
        for p, n, p_tilde, n_tilde in sign_splits(a, b, c):
            left = stabilize_many(f, p, n)
            right = stabilize_many(g, p_tilde, n_tilde)
            verdict = lr_equivalent(left, right, budget, threads)
            totals["searches"] += 1
            totals["states"] += verdict.stats.get("states", 0)
            if verdict.status == EQUIVALENT:
                logger.info(f"Cost found at {c} stabilizations (split {p}+{n} / {p_tilde}+{n_tilde})")
                return CostResult.interval(
                    bound, c, "stabilization search",
                    decomposition=(p, n, p_tilde, n_tilde), trace=verdict.trace, stats=totals,
                )
            if verdict.status != DISTINCT:
                settled = False
        if settled and bound == c:
            bound = c + 2
    logger.warning(f"Cost search exhausted max_cost={budget.max_cost}; lower bound {bound}")
    return CostResult.lower_bound_only(bound, "stabilization search exhausted", stats=totals)
