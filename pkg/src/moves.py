"""
Local rewrites of front words: planar commutations, Legendrian Reidemeister
moves, stabilization and destabilization. Zigzag slides and the half turn,
both composites of Legendrian Reidemeister moves, are single moves here.
"""
import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from .front_core import (
    CROSSING,
    KINK_BELOW,
    LEFT_CUSP,
    RIGHT_CUSP,
    Direction,
    Event,
    FrontWord,
    OrientedFront,
    count_components,
    check_positions,
    half_turn,
    insert_events,
    segment_site,
)

logger = logging.getLogger(__name__)

PLUS = "+"
MINUS = "-"

LR1 = "LR1"
LR2 = "LR2"
LR3 = "LR3"
COMMUTE = "Commute"
STABILIZE_PLUS = "StabilizePlus"
STABILIZE_MINUS = "StabilizeMinus"
DESTABILIZE_PLUS = "DestabilizePlus"
DESTABILIZE_MINUS = "DestabilizeMinus"
ZIGZAG_SLIDE = "ZigzagSlide"
HALF_TURN = "HalfTurn"

Pattern = Tuple[Tuple[str, int], ...]

# (left side, right side) pairs of (kind, offset) events; offsets are relative
# to a base strand. Forward direction reads left to right.
TEMPLATES: Dict[str, Tuple[Tuple[Pattern, Pattern], ...]] = {
    LR1: (
        ((), KINK_BELOW),
        ((), ((LEFT_CUSP, 0), (CROSSING, 1), (RIGHT_CUSP, 0))),
    ),
    LR2: (
        (((LEFT_CUSP, 1),), ((LEFT_CUSP, 0), (CROSSING, 1), (CROSSING, 0))),
        (((LEFT_CUSP, 0),), ((LEFT_CUSP, 1), (CROSSING, 0), (CROSSING, 1))),
        (((RIGHT_CUSP, 1),), ((CROSSING, 0), (CROSSING, 1), (RIGHT_CUSP, 0))),
        (((RIGHT_CUSP, 0),), ((CROSSING, 1), (CROSSING, 0), (RIGHT_CUSP, 1))),
    ),
    LR3: (
        (((CROSSING, 0), (CROSSING, 1), (CROSSING, 0)), ((CROSSING, 1), (CROSSING, 0), (CROSSING, 1))),
    ),
    COMMUTE: (
        (((RIGHT_CUSP, 0), (LEFT_CUSP, 0)), ((LEFT_CUSP, 2), (RIGHT_CUSP, 0))),
        (((RIGHT_CUSP, 0), (LEFT_CUSP, 0)), ((LEFT_CUSP, 0), (RIGHT_CUSP, 2))),
    ),
}

# Zigzags by pattern; the sign follows from the traversal direction.
ZIGZAG_BELOW: Pattern = ((LEFT_CUSP, 1), (RIGHT_CUSP, 0))
ZIGZAG_ABOVE: Pattern = ((LEFT_CUSP, 0), (RIGHT_CUSP, 1))
ZIGZAG_PATTERNS = (ZIGZAG_BELOW, ZIGZAG_ABOVE)


class MoveError(ValueError):
    """Raised when a move cannot be applied at the requested site."""


@dataclass(frozen=True, order=True)
class MoveKind:
    """A move tag, the template variant (2 * template + direction bit) and its site.

    `site` is an event index for rewrites of existing events and zigzag
    slides, an insertion slice for LR1 kinks, or a segment id for
    stabilizations. For a slide the variant picks the zigzag shape. `strand` is the
    base strand of an insertion and 0 otherwise. A `reverse` step undoes the
    move as applied to the step's resulting word.
    """

    tag: str
    variant: int = 0
    site: int = 0
    strand: int = 0
    reverse: bool = False

    def to_dict(self) -> Dict[str, object]:
        return {"move": self.tag, "variant": self.variant, "site": self.site,
                "strand": self.strand, "reverse": self.reverse}

    def reversed(self) -> "MoveKind":
        return MoveKind(self.tag, self.variant, self.site, self.strand, not self.reverse)


@dataclass(frozen=True)
class MoveTrace:
    start: FrontWord
    steps: Tuple[Tuple[MoveKind, FrontWord], ...] = ()

    @property
    def end(self) -> FrontWord:
        return self.steps[-1][1] if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def extended(self, move: MoveKind, word: FrontWord) -> "MoveTrace":
        return MoveTrace(self.start, self.steps + ((move, word),))

    def to_json(self) -> str:
        return json.dumps({
            "start": str(self.start),
            "steps": [{**move.to_dict(), "word": str(word)} for move, word in self.steps],
        })


# Planar commutation

def _after_extent(event: Event) -> Tuple[int, int]:
    """Doubled-coordinate extent of what `event` leaves in the slice after it."""
    kind, pos = event
    if kind == RIGHT_CUSP:
        return (2 * pos - 1, 2 * pos - 1)
    return (2 * pos, 2 * pos + 2)


def _before_extent(event: Event) -> Tuple[int, int]:
    """Doubled-coordinate extent of what `event` consumes from the slice before it."""
    kind, pos = event
    if kind == LEFT_CUSP:
        return (2 * pos - 1, 2 * pos - 1)
    return (2 * pos, 2 * pos + 2)


def swap_events(first: Event, second: Event) -> Optional[Tuple[Event, Event]]:
    """Return the commuted pair (second', first') or None if the events interact.

    A right cusp followed by a left cusp in the gap it leaves counts as
    interacting: the left cusp could sit on either side of the right one, and
    Commute moves connect the two placements.
    """
    lo1, hi1 = _after_extent(first)
    lo2, hi2 = _before_extent(second)
    if hi2 < lo1:
        # second lies above first
        swapped = Event(second.kind, second.position), Event(first.kind, first.position + second.delta)
    elif lo2 > hi1:
        swapped = Event(second.kind, second.position - first.delta), Event(first.kind, first.position)
    else:
        return None
    head, tail = swapped
    if head.kind == RIGHT_CUSP and tail.kind == LEFT_CUSP and head.position == tail.position:
        return None
    return swapped


def _bubble(events: List[Event], j: int, target: int) -> Optional[List[Event]]:
    """Move events[j] left to index `target` by commutations, or None."""
    work = list(events)
    for k in range(j, target, -1):
        swapped = swap_events(work[k - 1], work[k])
        if swapped is None:
            return None
        work[k - 1], work[k] = swapped
    return work


def _front_label(events: Sequence[Event], j: int) -> Optional[Event]:
    """How events[j] reads once commuted to the front, or None if it cannot get there."""
    moving = events[j]
    for k in range(j - 1, -1, -1):
        swapped = swap_events(events[k], moving)
        if swapped is None:
            return None
        moving = swapped[0]
    return moving


@lru_cache(maxsize=200_000)
def _canonical_events(events: Tuple[Event, ...]) -> Tuple[Event, ...]:
    out: List[Event] = []
    # every remainder reachable with the prefix emitted so far; ties between
    # equal labels are kept until a later event separates them
    tails = {events}
    for _ in range(len(events)):
        best: Optional[Event] = None
        following: set = set()
        for tail in tails:
            for j in range(len(tail)):
                label = _front_label(tail, j)
                if label is None or (best is not None and label > best):
                    continue
                if best is None or label < best:
                    best, following = label, set()
                following.add(tuple(_bubble(list(tail), j, 0)[1:]))
        out.append(best)
        tails = following
    return tuple(out)


def canonical_form(word: FrontWord) -> FrontWord:
    """Lexicographically least word reachable by commuting non-interacting adjacent events.

    The word is built one event at a time, always taking the least event that
    can be commuted to the front of what remains.
    """
    events = _canonical_events(word.events)
    return word if events == word.events else FrontWord(events)


# Template application

def _is_valid(events: Sequence[Event]) -> bool:
    return not check_positions(events) and count_components(events) == 1


def _gather_at(events: List[Event], site: int, pattern: Pattern) -> Optional[Tuple[List[Event], int]]:
    kind0, offset0 = pattern[0]
    if events[site].kind != kind0:
        return None
    base = events[site].position - offset0
    if base < 1:
        return None
    work = list(events)
    for k, (kind, offset) in enumerate(pattern[1:], start=1):
        target = site + k
        wanted = Event(kind, base + offset)
        for j in range(target, len(work)):
            if work[j].kind != kind:
                continue
            moved = _bubble(work, j, target)
            if moved is not None and moved[target] == wanted:
                work = moved
                break
        else:
            return None
    return work, base


def _gather(events: Tuple[Event, ...], site: int, pattern: Pattern) -> Optional[Tuple[List[Event], int, int]]:
    """Pull events matching `pattern` together, starting from the event at `site`.

    When the pattern does not assemble there, the starting event is commuted
    rightward and the match retried. Returns the rearranged events, the index
    the pattern starts at and its base strand, or None.
    """
    if site >= len(events) or events[site].kind != pattern[0][0]:
        return None
    work = list(events)
    start = site
    while True:
        found = _gather_at(work, start, pattern)
        if found is not None:
            return found[0], start, found[1]
        if start + 1 >= len(work):
            return None
        swapped = swap_events(work[start], work[start + 1])
        if swapped is None:
            return None
        work[start], work[start + 1] = swapped
        start += 1


def _rewrite(events: Tuple[Event, ...], source: Pattern, target: Pattern,
             site: int, strand: int) -> Optional[Tuple[Event, ...]]:
    if not source:
        block = tuple(Event(kind, strand + offset) for kind, offset in target)
        result = events[:site] + block + events[site:]
    else:
        gathered = _gather(events, site, source)
        if gathered is None:
            return None
        work, start, base = gathered
        block = tuple(Event(kind, base + offset) for kind, offset in target)
        result = tuple(work[:start]) + block + tuple(work[start + len(source):])
    return result if _is_valid(result) else None


def _template_sides(tag: str, variant: int) -> Tuple[Pattern, Pattern]:
    try:
        lhs, rhs = TEMPLATES[tag][variant // 2]
    except (KeyError, IndexError):
        raise MoveError(f"unknown move {tag} variant {variant}")
    return (lhs, rhs) if variant % 2 == 0 else (rhs, lhs)


def _move_sites(word: FrontWord, source: Pattern):
    if source:
        for site in range(len(word.events)):
            yield site, 0
        return
    for site, strands in enumerate(word.layout.slices):
        for strand in range(1, len(strands) + 1):
            yield site, strand


def _zigzag_sign(front: OrientedFront, index: int) -> str:
    """Sign of the zigzag whose left cusp is event `index`."""
    upper = front.word.layout.event_out[index][0]
    # both cusps of a zigzag share their up/down type
    return PLUS if front.directions[upper] is Direction.LEFT else MINUS


def _slide(events: Tuple[Event, ...], variant: int, site: int) -> Optional[Tuple[Event, ...]]:
    """Take the zigzag starting at `site` off and put it back on segment 0.

    Stabilization does not depend on where the zigzag sits, so this is a
    Legendrian isotopy. Event 0 is never part of the zigzag, which keeps the
    orientation of segment 0 and with it the sign.
    """
    if variant not in (0, 1):
        raise MoveError(f"unknown move {ZIGZAG_SLIDE} variant {variant}")
    if site < 1:
        return None
    gathered = _gather(events, site, ZIGZAG_PATTERNS[variant])
    if gathered is None:
        return None
    work, start, _ = gathered
    sign = _zigzag_sign(OrientedFront.from_word(FrontWord(tuple(work))), start)
    reduced = tuple(work[:start] + work[start + 2:])
    if not _is_valid(reduced):
        return None
    moved = stabilize(OrientedFront.from_word(FrontWord(reduced)), sign, 0)
    return _canonical_events(moved.word.events)


def neighbors(word: FrontWord) -> List[Tuple[MoveKind, FrontWord]]:
    """Every canonical word one Legendrian Reidemeister move (or cusp commutation) away.

    Zigzag slides and the half turn are included: both are composites of the
    basic moves. Each distinct result appears once, tagged with the first
    move producing it.
    """
    seen: Dict[Tuple[Event, ...], MoveKind] = {}

    def record(result: Optional[Tuple[Event, ...]], move: MoveKind) -> None:
        if result is not None and result != word.events and result not in seen:
            seen[result] = move

    for tag, templates in TEMPLATES.items():
        for variant in range(2 * len(templates)):
            source, target = _template_sides(tag, variant)
            for site, strand in _move_sites(word, source):
                result = _rewrite(word.events, source, target, site, strand)
                if result is not None:
                    record(_canonical_events(result), MoveKind(tag, variant, site, strand))
    for site in range(1, len(word.events)):
        for variant in (0, 1):
            record(_slide(word.events, variant, site), MoveKind(ZIGZAG_SLIDE, variant, site))
    record(_canonical_events(half_turn(word).events), MoveKind(HALF_TURN))
    return [(move, FrontWord(events)) for events, move in seen.items()]


def apply_move(word: FrontWord, move: MoveKind, first: Direction = Direction.RIGHT) -> FrontWord:
    """Apply a single move and return the canonical result.

    Stabilizations need an orientation; `first` is the direction of segment 0.
    """
    if move.reverse:
        raise MoveError("reverse steps are checked against their resulting word, see replay_trace")
    if move.tag in (STABILIZE_PLUS, STABILIZE_MINUS):
        sign = PLUS if move.tag == STABILIZE_PLUS else MINUS
        front = stabilize(OrientedFront.from_word(word, first), sign, move.site)
        return canonical_form(front.word)
    if move.tag in (DESTABILIZE_PLUS, DESTABILIZE_MINUS):
        sign = PLUS if move.tag == DESTABILIZE_PLUS else MINUS
        for found_sign, front in destabilizations(OrientedFront.from_word(word, first)):
            if found_sign == sign:
                return canonical_form(front.word)
        raise MoveError(f"no {sign} destabilization available")
    if move.tag == HALF_TURN:
        return canonical_form(half_turn(word))
    if move.tag == ZIGZAG_SLIDE:
        result = _slide(word.events, move.variant, move.site)
    else:
        source, target = _template_sides(move.tag, move.variant)
        result = _rewrite(word.events, source, target, move.site, move.strand)
        result = None if result is None else _canonical_events(result)
    if result is None:
        raise MoveError(f"{move.tag} variant {move.variant} does not apply at site {move.site}")
    return FrontWord(result)


def replay_trace(trace: MoveTrace) -> FrontWord:
    """Re-apply every step and check it lands on the recorded word.

    A step's site refers to the word recorded just before it, so hand-written
    traces need not be in canonical form. Returns the canonical end word.
    """
    current = trace.start
    for index, (move, expected) in enumerate(trace.steps):
        if move.reverse:
            if apply_move(expected, move.reversed()) != canonical_form(current):
                raise MoveError(f"step {index} ({move.tag}) does not undo to {current}")
        else:
            produced = apply_move(current, move)
            if produced != canonical_form(expected):
                raise MoveError(f"step {index} ({move.tag}) produced {produced}, trace records {expected}")
        current = expected
    return canonical_form(current)


def trace_from_words(words: Sequence[FrontWord]) -> MoveTrace:
    """Recover the moves between consecutive words of a written-out isotopy.

    Consecutive words may differ by commutations only, by one move, or by one
    move read backwards; anything else raises MoveError.
    """
    if not words:
        raise MoveError("an isotopy needs at least one word")
    trace = MoveTrace(words[0])
    for index, (previous, word) in enumerate(zip(words, words[1:])):
        target = canonical_form(word)
        if canonical_form(previous) == target:
            continue
        move = next((m for m, w in neighbors(previous) if w == target), None)
        if move is None:
            back = canonical_form(previous)
            move = next((m.reversed() for m, w in neighbors(word) if w == back), None)
        if move is None:
            raise MoveError(f"words {index} and {index + 1} are not one move apart: {previous} / {word}")
        trace = trace.extended(move, word)
    return trace


def settle_zigzags(word: FrontWord) -> MoveTrace:
    """Slide zigzags onto segment 0 while that lowers the canonical word.

    Stacks of zigzags on the same underlying front settle to the same word
    whatever order they were added in. The trace ends at the settled word.
    """
    current = canonical_form(word)
    trace = MoveTrace(current)
    while True:
        options = []
        for site in range(1, len(current.events)):
            for variant in (0, 1):
                result = _slide(current.events, variant, site)
                if result is not None:
                    options.append((result, MoveKind(ZIGZAG_SLIDE, variant, site)))
        if not options:
            return trace
        best, move = min(options)
        if best >= current.events:
            return trace
        current = FrontWord(best)
        trace = trace.extended(move, current)


# Stabilization

def _normalize_sign(sign) -> str:
    if sign in (PLUS, 1, "plus"):
        return PLUS
    if sign in (MINUS, -1, "minus"):
        return MINUS
    raise MoveError(f"unknown stabilization sign {sign!r}")


def stabilize(front: OrientedFront, sign, site: int = 0) -> OrientedFront:
    """Insert a zigzag on segment `site`; tb drops by 1 and rot moves by the sign."""
    sign = _normalize_sign(sign)
    try:
        slice_index, position = segment_site(front.word, site)
    except ValueError as e:
        raise MoveError(str(e)) from e
    direction = front.directions[site]
    if (sign == PLUS) == (direction is Direction.RIGHT):
        pattern = ZIGZAG_BELOW
    else:
        pattern = ZIGZAG_ABOVE
    word = insert_events(front.word, slice_index, pattern, position)
    return OrientedFront.from_word(word, front.directions[0])


def stabilize_many(front: OrientedFront, plus: int, minus: int, site: int = 0) -> OrientedFront:
    for _ in range(plus):
        front = stabilize(front, PLUS, site)
    for _ in range(minus):
        front = stabilize(front, MINUS, site)
    return front


def _zigzags(front: OrientedFront) -> List[Tuple[str, Tuple[Event, ...]]]:
    found = []
    events = front.word.events
    for idx in range(1, len(events) - 1):
        left, right = events[idx], events[idx + 1]
        if left.kind != LEFT_CUSP or right.kind != RIGHT_CUSP:
            continue
        if abs(left.position - right.position) != 1:
            continue
        found.append((_zigzag_sign(front, idx), events[:idx] + events[idx + 2:]))
    return found


def destabilizations(front: OrientedFront) -> List[Tuple[str, OrientedFront]]:
    """Zigzags removable directly from the word or from its canonical form."""
    first = front.directions[0]
    candidates = [front]
    canonical = canonical_form(front.word)
    if canonical != front.word:
        candidates.append(OrientedFront.from_word(canonical, first))
    results: Dict[Tuple[str, Tuple[Event, ...]], OrientedFront] = {}
    for candidate in candidates:
        for sign, events in _zigzags(candidate):
            if not _is_valid(events):
                continue
            key = (sign, _canonical_events(events))
            if key not in results:
                results[key] = OrientedFront.from_word(FrontWord(events), first)
    logger.debug(f"Found {len(results)} destabilizations of {front}")
    return [(sign, results[(sign, events)]) for sign, events in sorted(results)]


class MoveStepModel(BaseModel):
    """JSON form of one trace step."""

    move: str
    variant: int
    site: int
    strand: int = 0
    reverse: bool = False
    word: str


def trace_models(trace: MoveTrace) -> List[MoveStepModel]:
    return [MoveStepModel(**move.to_dict(), word=str(word)) for move, word in trace.steps]
