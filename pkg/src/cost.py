"""
Cost formulas, bounds and parity rules at the level of classical invariants.
"""
import logging
from typing import Dict, Iterator, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from .moves import MoveStepModel

logger = logging.getLogger(__name__)

EXACT = "Exact"
INTERVAL = "Interval"
LOWER_BOUND_ONLY = "LowerBoundOnly"


class CostInputError(ValueError):
    """Raised on arguments outside an operation's domain."""


class CostResult(BaseModel):
    """An exact Cost value, an interval, or a lower bound from an exhausted search.

    `hi` is None when no upper bound is known. `decomposition` is the
    (p, n, p_tilde, n_tilde) stabilization split realizing an exact value.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["Exact", "Interval", "LowerBoundOnly"]
    value: Optional[int] = None
    lo: Optional[int] = None
    hi: Optional[int] = None
    provenance: str
    decomposition: Optional[Tuple[int, int, int, int]] = None
    trace: Optional[List[MoveStepModel]] = None
    stats: Dict[str, int] = {}

    @model_validator(mode="after")
    def _check_bounds(self) -> "CostResult":
        if self.kind == EXACT:
            if self.value is None or self.value < 0:
                raise ValueError("Exact cost needs a non-negative value")
        else:
            if self.lo is None or self.lo < 0:
                raise ValueError(f"{self.kind} cost needs a non-negative lower bound")
            if self.hi is not None and self.hi < self.lo:
                raise ValueError(f"empty interval [{self.lo}, {self.hi}]")
        return self

    @classmethod
    def exact(cls, value: int, provenance: str, **extra) -> "CostResult":
        return cls(kind=EXACT, value=value, provenance=provenance, **extra)

    @classmethod
    def interval(cls, lo: int, hi: Optional[int], provenance: str, **extra) -> "CostResult":
        if hi is not None and lo == hi:
            return cls.exact(lo, provenance, **extra)
        return cls(kind=INTERVAL, lo=lo, hi=hi, provenance=provenance, **extra)

    @classmethod
    def lower_bound_only(cls, bound: int, provenance: str, **extra) -> "CostResult":
        return cls(kind=LOWER_BOUND_ONLY, lo=bound, provenance=provenance, **extra)

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT

    def bounds(self) -> Tuple[int, Optional[int]]:
        if self.is_exact:
            return self.value, self.value
        return self.lo, self.hi

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True, exclude_defaults=False)


def _pair(x) -> Tuple[int, int]:
    """(tb, rot) from ClassicalInvariants, LegendrianClass or a plain pair."""
    if isinstance(x, (tuple, list)):
        return int(x[0]), int(x[1])
    return x.tb, x.rot


def cost_lower_bound(a, b) -> int:
    (tb_a, rot_a), (tb_b, rot_b) = _pair(a), _pair(b)
    return max(abs(tb_a - tb_b), abs(rot_a - rot_b))


def cost_parity_ok(a, b, c: int) -> bool:
    """A cost between two classes has the parity of their tb difference."""
    if c < 0:
        raise CostInputError(f"cost must be non-negative, got {c}")
    return (c - abs(_pair(a)[0] - _pair(b)[0])) % 2 == 0


def cost_simple(a, b) -> int:
    """Cost between two realized classes of a Legendrian simple type."""
    return cost_lower_bound(a, b)


def sign_splits(a, b, c: int) -> Iterator[Tuple[int, int, int, int]]:
    """Feasible (p, n, p_tilde, n_tilde) with p + n + p_tilde + n_tilde = c.

    Stabilizing a p times positively and n times negatively, and b likewise,
    must land on the same (tb, rot).
    """
    (tb_a, rot_a), (tb_b, rot_b) = _pair(a), _pair(b)
    d_tb = tb_a - tb_b
    if (c + d_tb) % 2 or c < abs(d_tb):
        return
    m = (c + d_tb) // 2
    m_tilde = c - m
    for p in range(m + 1):
        n = m - p
        twice_p_tilde = m_tilde + (rot_a + p - n) - rot_b
        if twice_p_tilde % 2:
            continue
        p_tilde = twice_p_tilde // 2
        if 0 <= p_tilde <= m_tilde:
            yield p, n, p_tilde, m_tilde - p_tilde


def fuchs_tabachnikov_split(a, b) -> Tuple[int, int, int, int]:
    """Smallest common-stabilization split between two classes of a simple type."""
    c = cost_lower_bound(a, b)
    for split in sign_splits(a, b, c):
        return split
    raise CostInputError(f"classes {_pair(a)} and {_pair(b)} violate the tb + rot parity rule")


def _check_twist(k: int, l: int) -> None:
    if k < 1 or l < 2 or k + l < 4:
        raise CostInputError(f"twist family parameters need k >= 1, l >= 2, k + l >= 4; got ({k}, {l})")


def twist_adjacent_cost(k: int, l: int) -> int:
    """Cost between the twist fronts E(k, l) and E(k + 1, l - 1)."""
    _check_twist(k, l)
    return 0 if k == l - 1 else 2


def twist_cost_interval(k: int, l: int, k2: int, l2: int) -> CostResult:
    """Cost bounds between two members of one twist family (k + l fixed).

    Adjacent members are exact; farther ones chain adjacent costs for the
    upper bound and keep the invariant lower bound, which is 0 along a family.
    """
    if k + l != k2 + l2:
        raise CostInputError("twist fronts from different families have different knot types")
    if min(k, l, k2, l2) < 1:
        raise CostInputError("twist family parameters must be positive")
    if (k, l) == (k2, l2):
        return CostResult.exact(0, "identical twist fronts")
    lo_k, hi_k = sorted((k, k2))
    total = k + l
    if hi_k - lo_k == 1:
        return CostResult.exact(twist_adjacent_cost(lo_k, total - lo_k), "adjacent twist fronts")
    upper = sum(twist_adjacent_cost(j, total - j) for j in range(lo_k, hi_k))
    return CostResult.interval(0, upper, "twist chain: invariant lower bound, chained adjacent upper bound")


def cost_sum_upper(c11: int, c22: int, c12: Optional[int] = None, c21: Optional[int] = None) -> int:
    """Upper bound for the Cost between two connected sums from factor costs."""
    best = c11 + c22
    if c12 is not None and c21 is not None:
        best = min(best, c12 + c21)
    return best


def cost_stab_related(p: int, n: int, q: int, m: int) -> int:
    if min(p, n, q, m) < 0:
        raise CostInputError("stabilization counts must be non-negative")
    return abs(p - q) + abs(n - m)


def cost_maxtb_sum(r1: int, r2: int, same_rot_order: bool) -> CostResult:
    """Cost between sums of maximal-tb representatives whose factor costs are 2*r1 and 2*r2."""
    if r1 < 0 or r2 < 0:
        raise CostInputError("rotation offsets must be non-negative")
    if same_rot_order:
        return CostResult.exact(2 * r1 + 2 * r2, "max-tb sum, rotation numbers in the same order")
    return CostResult.interval(2 * abs(r1 - r2), 2 * max(r1, r2),
                               "max-tb sum, rotation numbers in opposite order")


def cost_between(descriptor, a, b) -> CostResult:
    """Exact formula when the descriptor is simple, a lower bound otherwise."""
    for cls in (a, b):
        if not descriptor.is_realized(*_pair(cls)):
            raise CostInputError(f"class {_pair(cls)} is not realized in {descriptor.name}")
    lower = cost_lower_bound(a, b)
    if descriptor.simple is True:
        return CostResult.exact(cost_simple(a, b), f"simple-type formula ({descriptor.name})",
                                decomposition=fuchs_tabachnikov_split(a, b))
    logger.info(f"{descriptor.name} is not known to be simple; reporting the invariant lower bound")
    return CostResult.interval(lower, None, "invariant lower bound (non-simple type)")
