"""
Front projections encoded as slice-event words.

A front is scanned left to right. Between consecutive events the strands are
numbered 1..n from top to bottom; each event is a left cusp L(i), a right cusp
R(i) or a crossing X(i) of the strands at positions i and i+1. At a crossing the
strand descending from i to i+1 is the over-strand.
"""
import json
import logging
import random
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict

logger = logging.getLogger(__name__)

LEFT_CUSP = "L"
RIGHT_CUSP = "R"
CROSSING = "X"

_TOKEN_RE = re.compile(r"^([LRX])([1-9][0-9]*)$")


class Event(NamedTuple):
    """One generic event of a front: kind in {L, R, X} and a 1-based position."""

    kind: str
    position: int

    def __str__(self) -> str:
        return f"{self.kind}{self.position}"

    @property
    def delta(self) -> int:
        """Change of the strand count across the event."""
        if self.kind == LEFT_CUSP:
            return 2
        if self.kind == RIGHT_CUSP:
            return -2
        return 0


class Direction(str, Enum):
    RIGHT = "Rightward"
    LEFT = "Leftward"

    def flipped(self) -> "Direction":
        return Direction.LEFT if self is Direction.RIGHT else Direction.RIGHT


class FrontSyntaxError(ValueError):
    """Raised when front text does not match the token grammar."""

    def __init__(self, message: str, index: int, token: str):
        super().__init__(f"token {index} ({token!r}): {message}")
        self.index = index
        self.token = token


class FrontValidationError(ValueError):
    """Raised when an event sequence is not a single closed front."""

    def __init__(self, violations: Sequence[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


@dataclass(frozen=True)
class Diagnostics:
    violations: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class FrontLayout:
    """Segment bookkeeping for a word.

    Segment ids are assigned in creation order while scanning left to right, so
    segment 0 is always the upper strand born at the first left cusp.
    """

    slices: Tuple[Tuple[int, ...], ...]
    seg_start: Tuple[Tuple[int, int], ...]
    seg_end: Tuple[Tuple[int, int], ...]
    event_in: Tuple[Tuple[int, ...], ...]
    event_out: Tuple[Tuple[int, ...], ...]

    @property
    def segment_count(self) -> int:
        return len(self.seg_start)


def check_positions(events: Sequence[Event]) -> List[str]:
    violations = []
    n = 0
    for idx, (kind, pos) in enumerate(events):
        if kind == LEFT_CUSP:
            if not 1 <= pos <= n + 1:
                violations.append(f"event {idx} ({kind}{pos}): position out of range with n={n}")
                return violations
        elif not 1 <= pos <= n - 1:
            violations.append(f"event {idx} ({kind}{pos}): position out of range with n={n}")
            return violations
        n += Event(kind, pos).delta
    if n != 0:
        violations.append(f"final strand count is {n}, expected 0")
    return violations


def _build_layout(events: Sequence[Event]) -> FrontLayout:
    current: List[int] = []
    slices = [()]
    starts: List[Tuple[int, int]] = []
    ends: Dict[int, Tuple[int, int]] = {}
    event_in: List[Tuple[int, ...]] = []
    event_out: List[Tuple[int, ...]] = []
    for idx, (kind, pos) in enumerate(events):
        if kind == LEFT_CUSP:
            upper, lower = len(starts), len(starts) + 1
            starts.extend([(idx, pos), (idx, pos + 1)])
            current[pos - 1:pos - 1] = [upper, lower]
            event_in.append(())
            event_out.append((upper, lower))
        elif kind == RIGHT_CUSP:
            upper, lower = current[pos - 1], current[pos]
            ends[upper] = (idx, pos)
            ends[lower] = (idx, pos + 1)
            del current[pos - 1:pos + 1]
            event_in.append((upper, lower))
            event_out.append(())
        else:
            upper, lower = current[pos - 1], current[pos]
            ends[upper] = (idx, pos)
            ends[lower] = (idx, pos + 1)
            new_upper, new_lower = len(starts), len(starts) + 1
            starts.extend([(idx, pos), (idx, pos + 1)])
            current[pos - 1] = new_upper
            current[pos] = new_lower
            event_in.append((upper, lower))
            event_out.append((new_upper, new_lower))
        slices.append(tuple(current))
    return FrontLayout(
        slices=tuple(slices),
        seg_start=tuple(starts),
        seg_end=tuple(ends[s] for s in range(len(starts))),
        event_in=tuple(event_in),
        event_out=tuple(event_out),
    )


def _trace(events: Sequence[Event], layout: FrontLayout, start: int, direction: Direction,
           dirs: List[Optional[Direction]]) -> None:
    """Follow the knot from segment `start`, filling `dirs` until the loop closes."""
    seg, d = start, direction
    while dirs[seg] is None:
        dirs[seg] = d
        if d is Direction.RIGHT:
            idx = layout.seg_end[seg][0]
            ins = layout.event_in[idx]
            slot = 0 if ins[0] == seg else 1
            if events[idx].kind == RIGHT_CUSP:
                seg, d = ins[1 - slot], Direction.LEFT
            else:
                seg = layout.event_out[idx][1 - slot]
        else:
            idx = layout.seg_start[seg][0]
            outs = layout.event_out[idx]
            slot = 0 if outs[0] == seg else 1
            if events[idx].kind == LEFT_CUSP:
                seg, d = outs[1 - slot], Direction.RIGHT
            else:
                seg = layout.event_in[idx][1 - slot]


def count_components(events: Sequence[Event], layout: Optional[FrontLayout] = None) -> int:
    layout = layout or _build_layout(events)
    dirs: List[Optional[Direction]] = [None] * layout.segment_count
    components = 0
    for seg in range(layout.segment_count):
        if dirs[seg] is None:
            components += 1
            _trace(events, layout, seg, Direction.RIGHT, dirs)
    return components


def validate_front(events: Iterable[Event]) -> Diagnostics:
    """Check position bounds, closedness and that the diagram is a single knot."""
    events = tuple(Event(*e) for e in events)
    if not events:
        return Diagnostics(("empty word: a closed front has at least two cusps",))
    violations = check_positions(events)
    if violations:
        return Diagnostics(tuple(violations))
    components = count_components(events)
    if components != 1:
        return Diagnostics((f"diagram has {components} components, expected 1",))
    return Diagnostics()


@dataclass(frozen=True)
class FrontWord:
    """An ordered event sequence describing a closed single-component front."""

    events: Tuple[Event, ...]

    @classmethod
    def checked(cls, events: Iterable[Event]) -> "FrontWord":
        events = tuple(Event(*e) for e in events)
        diagnostics = validate_front(events)
        if not diagnostics.ok:
            raise FrontValidationError(diagnostics.violations)
        return cls(events)

    @cached_property
    def layout(self) -> FrontLayout:
        return _build_layout(self.events)

    @cached_property
    def width(self) -> int:
        return max(len(s) for s in self.layout.slices)

    @property
    def cusp_count(self) -> int:
        return sum(1 for e in self.events if e.kind != CROSSING)

    def __len__(self) -> int:
        return len(self.events)

    def __str__(self) -> str:
        return serialize_front(self)


@dataclass(frozen=True)
class OrientedFront:
    """A front word plus a traversal direction for every segment."""

    word: FrontWord
    directions: Tuple[Direction, ...]

    @classmethod
    def from_word(cls, word: FrontWord, first: Direction = Direction.RIGHT) -> "OrientedFront":
        """Orient `word` so that segment 0 runs in direction `first`."""
        layout = word.layout
        dirs: List[Optional[Direction]] = [None] * layout.segment_count
        _trace(word.events, layout, 0, first, dirs)
        assert all(d is not None for d in dirs), "word has more than one component"
        return cls(word, tuple(dirs))

    @property
    def is_canonical(self) -> bool:
        return self.directions[0] is Direction.RIGHT

    def __str__(self) -> str:
        return serialize_front(self.word)


class ClassicalInvariants(BaseModel):
    model_config = ConfigDict(frozen=True)

    tb: int
    rot: int
    writhe: int
    up_cusps: int
    down_cusps: int

    @classmethod
    def from_counts(cls, writhe: int, up_cusps: int, down_cusps: int) -> "ClassicalInvariants":
        cusps = up_cusps + down_cusps
        return cls(
            tb=writhe - cusps // 2,
            rot=(down_cusps - up_cusps) // 2,
            writhe=writhe,
            up_cusps=up_cusps,
            down_cusps=down_cusps,
        )

    @property
    def pair(self) -> Tuple[int, int]:
        return (self.tb, self.rot)


# Text format

def parse_front(text: str) -> FrontWord:
    """Parse whitespace separated tokens `[LRX][1-9][0-9]*`; `#` starts a comment."""
    events = []
    index = 0
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for token in line.split():
            match = _TOKEN_RE.match(token)
            if not match:
                raise FrontSyntaxError("expected L, R or X followed by a positive integer", index, token)
            events.append(Event(match.group(1), int(match.group(2))))
            index += 1
    return FrontWord.checked(events)


def serialize_front(word: FrontWord) -> str:
    return " ".join(str(e) for e in word.events)


def front_to_json(front: OrientedFront) -> str:
    return json.dumps({"word": serialize_front(front.word), "reversed": not front.is_canonical},
                      sort_keys=True)


def front_from_json(text: str) -> OrientedFront:
    try:
        data = json.loads(text)
        word = parse_front(data["word"])
        reversed_ = bool(data.get("reversed", False))
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise FrontValidationError([f"malformed front document: {e}"]) from e
    first = Direction.LEFT if reversed_ else Direction.RIGHT
    return OrientedFront.from_word(word, first)


# Orientation and invariants

def orient_front(word: FrontWord) -> OrientedFront:
    """Canonical orientation: the upper strand born at the first left cusp runs rightward."""
    return OrientedFront.from_word(word, Direction.RIGHT)


def reverse_orientation(front: OrientedFront) -> OrientedFront:
    return OrientedFront(front.word, tuple(d.flipped() for d in front.directions))


def crossing_sign(over: Direction, under: Direction) -> int:
    ox, oy = (1, -1) if over is Direction.RIGHT else (-1, 1)
    ux, uy = (1, 1) if under is Direction.RIGHT else (-1, -1)
    return 1 if ox * uy - oy * ux > 0 else -1


def classical_invariants(front: OrientedFront) -> ClassicalInvariants:
    """Writhe, cusp orientation counts, tb and rot of an oriented front."""
    layout = front.word.layout
    dirs = front.directions
    writhe = up = down = 0
    for idx, event in enumerate(front.word.events):
        if event.kind == CROSSING:
            upper, lower = layout.event_in[idx]
            writhe += crossing_sign(dirs[upper], dirs[lower])
        elif event.kind == LEFT_CUSP:
            upper = layout.event_out[idx][0]
            # leaving a left cusp along the lower branch means we arrived on the upper one
            if dirs[upper] is Direction.LEFT:
                down += 1
            else:
                up += 1
        else:
            upper = layout.event_in[idx][0]
            if dirs[upper] is Direction.RIGHT:
                down += 1
            else:
                up += 1
    return ClassicalInvariants.from_counts(writhe, up, down)


# Local surgery primitives shared with the moves module

def insert_events(word: FrontWord, index: int, pattern: Sequence[Tuple[str, int]], base: int) -> FrontWord:
    """Insert `pattern` (kind, offset) pairs at `index`, offsets taken relative to `base`."""
    block = tuple(Event(kind, base + offset) for kind, offset in pattern)
    return FrontWord(word.events[:index] + block + word.events[index:])


def segment_site(word: FrontWord, segment: int) -> Tuple[int, int]:
    """(slice index, position) of a segment right after the event that creates it."""
    if not 0 <= segment < word.layout.segment_count:
        raise ValueError(f"segment {segment} does not exist (word has {word.layout.segment_count})")
    idx, pos = word.layout.seg_start[segment]
    return idx + 1, pos


def segment_of(word: FrontWord, slice_index: int, position: int) -> int:
    """Segment id occupying `position` (1-based) in slice `slice_index`."""
    slices = word.layout.slices
    if not 0 <= slice_index < len(slices) or not 1 <= position <= len(slices[slice_index]):
        raise ValueError(f"no strand at slice {slice_index}, position {position}")
    return slices[slice_index][position - 1]


def segments(word: FrontWord) -> List[Tuple[int, int, int]]:
    """(segment id, first slice, position) for every segment, in id order."""
    return [(seg, *segment_site(word, seg)) for seg in range(word.layout.segment_count)]


_MIRRORED_KIND = {LEFT_CUSP: RIGHT_CUSP, RIGHT_CUSP: LEFT_CUSP, CROSSING: CROSSING}


def half_turn(word: FrontWord) -> FrontWord:
    """Mirror the front left to right.

    This is the knot turned half way around the vertical axis, which is a
    Legendrian isotopy: tb is unchanged and rot is unchanged for the carried
    orientation (the canonical orientation of the result may be the opposite one).
    """
    return FrontWord(tuple(Event(_MIRRORED_KIND[e.kind], e.position) for e in reversed(word.events)))


# Loop with one crossing and two cusps placed below a strand: L(p+1) X(p) R(p+1).
KINK_BELOW = ((LEFT_CUSP, 1), (CROSSING, 0), (RIGHT_CUSP, 1))


def _with_right_cusp(front: OrientedFront, upper_direction: Direction) -> OrientedFront:
    segment = front.directions.index(upper_direction)
    slice_index, position = segment_site(front.word, segment)
    word = insert_events(front.word, slice_index, KINK_BELOW, position)
    logger.debug(f"Added a kink on segment {segment} to expose a {upper_direction.value} right cusp")
    return OrientedFront.from_word(word, front.directions[0])


def connect_sum(f: OrientedFront, g: OrientedFront) -> OrientedFront:
    """Splice g into the pocket to the right of a right cusp of f.

    The right cusp is the rightmost one whose upper strand runs in the same
    direction as the upper strand of g's first left cusp, which keeps the
    orientations coherent.
    """
    need = g.directions[0]
    candidates = [
        idx for idx, event in enumerate(f.word.events)
        if event.kind == RIGHT_CUSP and f.directions[f.word.layout.event_in[idx][0]] is need
    ]
    if not candidates:
        f = _with_right_cusp(f, need)
        candidates = [
            idx for idx, event in enumerate(f.word.events)
            if event.kind == RIGHT_CUSP and f.directions[f.word.layout.event_in[idx][0]] is need
        ]
    assert candidates, "a coherent splice always exists after adding a kink"
    k = candidates[-1]
    shift = f.word.events[k].position - 1
    body = tuple(Event(e.kind, e.position + shift) for e in g.word.events[1:])
    word = FrontWord(f.word.events[:k] + body + f.word.events[k + 1:])
    return OrientedFront.from_word(word, f.directions[0])


# Built-in fronts

BUILTIN_WORDS: Dict[str, str] = {
    "unknot": "L1 R1",
    "trefoil-r": "L1 L3 X2 X2 X2 R1 R1",
    "trefoil-l": "L1 L3 L5 X2 X4 R3 X2 R1 R1",
}


def builtin_front(name: str) -> OrientedFront:
    try:
        text = BUILTIN_WORDS[name]
    except KeyError:
        raise ValueError(f"unknown built-in front {name!r}; choose from {sorted(BUILTIN_WORDS)}")
    return orient_front(parse_front(text))


def random_front(rng: Union[random.Random, int, None] = None, max_width: int = 8,
                 max_events: int = 24) -> OrientedFront:
    """A random valid front: a built-in decorated with zigzags, kinks and sums."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    base = rng.choice(["unknot", "unknot", "trefoil-r", "trefoil-l"])
    front = builtin_front(base)
    if rng.random() < 0.5:
        front = reverse_orientation(front)
    for _ in range(rng.randint(0, 6)):
        choice = rng.random()
        segment = rng.randrange(front.word.layout.segment_count)
        slice_index, position = segment_site(front.word, segment)
        if choice < 0.45:
            pattern = ((LEFT_CUSP, 1), (RIGHT_CUSP, 0)) if rng.random() < 0.5 else ((LEFT_CUSP, 0), (RIGHT_CUSP, 1))
            candidate = OrientedFront.from_word(
                insert_events(front.word, slice_index, pattern, position), front.directions[0])
        elif choice < 0.8:
            pattern = KINK_BELOW if rng.random() < 0.5 else ((LEFT_CUSP, 0), (CROSSING, 1), (RIGHT_CUSP, 0))
            candidate = OrientedFront.from_word(
                insert_events(front.word, slice_index, pattern, position), front.directions[0])
        else:
            candidate = connect_sum(front, builtin_front("unknot"))
        if len(candidate.word) <= max_events and candidate.word.width <= max_width:
            front = candidate
    return front
