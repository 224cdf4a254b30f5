"""
Knot-type descriptors (peak sets and simpleness), descriptor algebra for
connected sums, and concrete front generators.
"""
import json
import logging
import math
import re
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from .config import config
from .front_core import (
    ClassicalInvariants,
    OrientedFront,
    builtin_front,
    classical_invariants,
    orient_front,
    parse_front,
    reverse_orientation,
)
from .moves import destabilizations, stabilize_many

logger = logging.getLogger(__name__)

UNKNOWN = "unknown"
Simpleness = Union[bool, Literal["unknown"]]

_TORUS_RE = re.compile(r"^torus\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")
_TWIST_RE = re.compile(r"^e\(?\s*(\d+)\s*,\s*(\d+)\s*\)?$")


class DescriptorError(ValueError):
    """Raised for unknown, malformed or misused knot-type descriptors."""


def _reachable(peak: Tuple[int, int], tb: int, rot: int) -> bool:
    t, r = peak
    drop = t - tb
    return drop >= 0 and abs(rot - r) <= drop and (drop - (rot - r)) % 2 == 0


class KnotTypeDescriptor(BaseModel):
    """Invariant-level description of a topological knot type.

    `peaks` are the (tb, rot) pairs of nondestabilizable classes. `simple` is
    True, False or "unknown".
    """

    model_config = ConfigDict(frozen=True)

    name: str
    simple: Simpleness
    peaks: Tuple[Tuple[int, int], ...]
    unique_destabilization: bool = False
    invertible: bool = True
    notes: Tuple[str, ...] = ()

    @field_validator("peaks")
    @classmethod
    def _sorted_peaks(cls, peaks: Tuple[Tuple[int, int], ...]) -> Tuple[Tuple[int, int], ...]:
        if not peaks:
            raise ValueError("a knot type has at least one peak")
        for tb, rot in peaks:
            if (tb + rot) % 2 == 0:
                raise ValueError(f"peak ({tb}, {rot}) violates tb + rot odd")
        return tuple(sorted(set(peaks), key=lambda p: (-p[0], p[1])))

    @model_validator(mode="after")
    def _unique_has_one_peak(self) -> "KnotTypeDescriptor":
        if self.unique_destabilization and len(self.peaks) != 1:
            raise ValueError("unique destabilization requires exactly one peak")
        return self

    @property
    def max_tb(self) -> int:
        return max(tb for tb, _ in self.peaks)

    @property
    def max_tb_peaks(self) -> List[Tuple[int, int]]:
        return [p for p in self.peaks if p[0] == self.max_tb]

    def is_realized(self, tb: int, rot: int) -> bool:
        return any(_reachable(peak, tb, rot) for peak in self.peaks)


class LegendrianClass(BaseModel):
    model_config = ConfigDict(frozen=True)

    knot_type: str
    tb: int
    rot: int

    @property
    def pair(self) -> Tuple[int, int]:
        return (self.tb, self.rot)

    @property
    def sort_key(self) -> Tuple[int, int]:
        return (-self.tb, self.rot)

    def label(self) -> str:
        return f"({self.tb},{self.rot})"


# Built-in descriptors

def _torus(p: int, q: int) -> KnotTypeDescriptor:
    if p < 2 or q < 2:
        raise DescriptorError(f"torus({p},{q}): only positive torus knots with p, q >= 2 are built in")
    if math.gcd(p, q) != 1:
        raise DescriptorError(f"torus({p},{q}): parameters must be coprime")
    p, q = sorted((p, q))
    tb = p * q - p - q + config.TORUS_TB_SHIFT
    return _make(name=f"torus({p},{q})", simple=True, peaks=((tb, 0),), unique_destabilization=True)


def _make(**fields) -> KnotTypeDescriptor:
    try:
        return KnotTypeDescriptor(**fields)
    except ValidationError as e:
        raise DescriptorError(f"invalid descriptor: {e.errors()[0]['msg']}") from e


def builtin_descriptor(name: str) -> KnotTypeDescriptor:
    key = name.strip().lower().replace(" ", "")
    if key == "unknot":
        return _make(name="unknot", simple=True, peaks=((-1, 0),), unique_destabilization=True)
    if key in ("left_trefoil", "trefoil-l"):
        return _make(name="left_trefoil", simple=True, peaks=((-6, -1), (-6, 1)))
    if key in ("right_trefoil", "trefoil-r"):
        return _torus(2, 3)
    match = _TORUS_RE.match(key)
    if match:
        return _torus(int(match.group(1)), int(match.group(2)))
    raise DescriptorError(f"unknown knot type {name!r}; built-ins are unknot, torus(p,q), left_trefoil")


def sum_descriptor(a: KnotTypeDescriptor, b: KnotTypeDescriptor) -> KnotTypeDescriptor:
    """Descriptor of the connected sum, with tri-state simpleness."""
    peaks = tuple((ta + tb + 1, ra + rb) for (ta, ra), (tb, rb) in product(a.peaks, b.peaks))
    name = f"{a.name}#{b.name}"
    if a.unique_destabilization and b.unique_destabilization:
        return _make(name=name, simple=True, peaks=peaks[:1], unique_destabilization=True,
                     invertible=a.invertible and b.invertible)

    notes = []
    rot_sums = {}
    for left, right in product(a.max_tb_peaks, b.max_tb_peaks):
        rot_sums.setdefault(left[1] + right[1], []).append((left, right))
    collisions = [pairs for pairs in rot_sums.values() if len(pairs) > 1]
    simple: Simpleness = UNKNOWN
    if collisions and a.name != b.name:
        simple = False
        notes.append(f"distinct max-tb peak pairs share rotation sum: {collisions[0]}")
    elif a.name == b.name:
        rots = {r for _, r in a.max_tb_peaks}
        if any(all(r + i in rots for i in (1, 2, 3)) for r in rots):
            simple = False
            notes.append("four max-tb peaks with consecutive rotation offsets")
        elif collisions:
            notes.append(f"candidate non-simple pair: {collisions[0]}")
    logger.debug(f"Summed descriptor {name}: simple={simple}, {len(set(peaks))} peaks")
    return _make(name=name, simple=simple, peaks=peaks, unique_destabilization=False,
                 invertible=a.invertible and b.invertible, notes=tuple(notes))


def is_reachable(d: KnotTypeDescriptor, tb: int, rot: int) -> bool:
    return d.is_realized(tb, rot)


def classes_down_to(d: KnotTypeDescriptor, tb_floor: int) -> List[LegendrianClass]:
    """Every (tb, rot) class reachable from a peak with tb >= tb_floor, sorted."""
    if d.simple is not True:
        raise DescriptorError(f"{d.name} is not known to be simple; (tb, rot) does not enumerate its classes")
    pairs = set()
    for t, r in d.peaks:
        for tb in range(tb_floor, t + 1):
            drop = t - tb
            pairs.update((tb, rot) for rot in range(r - drop, r + drop + 1, 2))
    classes = [LegendrianClass(knot_type=d.name, tb=tb, rot=rot) for tb, rot in pairs]
    return sorted(classes, key=lambda c: c.sort_key)


# Fronts

def e_front(k: int, l: int) -> OrientedFront:
    """Twist-knot front with k crossings in the left twist region and l in the right one.

    Oriented so that rot <= 0, which keeps (tb, rot) fixed along k + l.
    """
    if k < 1 or l < 1:
        raise DescriptorError(f"twist front parameters must be positive, got ({k}, {l})")
    text = " ".join(["L1 L3"] + ["X2"] * k + ["L3 X2 X4 R3"] + ["X2"] * l + ["R1 R1"])
    front = orient_front(parse_front(text))
    if classical_invariants(front).rot > 0:
        front = reverse_orientation(front)
    return front


def _peak_fronts(name: str) -> List[OrientedFront]:
    key = name.strip().lower().replace(" ", "")
    if key == "unknot":
        return [builtin_front("unknot")]
    if key in ("trefoil-r", "right_trefoil", "torus(2,3)"):
        return [builtin_front("trefoil-r")]
    if key in ("trefoil-l", "left_trefoil"):
        front = builtin_front("trefoil-l")
        return [front, reverse_orientation(front)]
    match = _TWIST_RE.match(key)
    if match:
        front = e_front(int(match.group(1)), int(match.group(2)))
        return [front, reverse_orientation(front)]
    raise DescriptorError(f"no built-in front for {name!r}")


def standard_front(name: str, tb: int, rot: int) -> OrientedFront:
    """A front of class (tb, rot): a peak front stabilized down to it."""
    for front in _peak_fronts(name):
        inv = classical_invariants(front)
        if not _reachable(inv.pair, tb, rot):
            continue
        drop = inv.tb - tb
        plus = (drop + rot - inv.rot) // 2
        return stabilize_many(front, plus, drop - plus)
    raise DescriptorError(f"class ({tb}, {rot}) is not reachable from the {name} peak fronts")


# JSON

def dump_descriptor(d: KnotTypeDescriptor) -> str:
    return json.dumps({
        "name": d.name,
        "simple": d.simple,
        "peaks": [list(p) for p in d.peaks],
        "unique_destabilization": d.unique_destabilization,
        "invertible": d.invertible,
    }, sort_keys=True)


def load_descriptor(source: Union[str, Path]) -> KnotTypeDescriptor:
    """Descriptor from a JSON file path or JSON text."""
    text = str(source)
    if not text.lstrip().startswith("{"):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as e:
            raise DescriptorError(f"cannot read descriptor {source}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DescriptorError(f"descriptor is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise DescriptorError("descriptor JSON must be an object")
    return _make(**data)


def resolve_descriptor(type_name: Optional[str] = None, desc_path: Optional[str] = None) -> KnotTypeDescriptor:
    if desc_path:
        return load_descriptor(Path(desc_path))
    if type_name:
        return builtin_descriptor(type_name)
    raise DescriptorError("either a built-in type name or a descriptor file is required")


@dataclass(frozen=True)
class PeakCheck:
    invariants: ClassicalInvariants
    nondestabilizable: bool
    is_peak: bool

    @property
    def consistent(self) -> bool:
        """A front with no destabilization must sit at a peak of its type."""
        return self.is_peak or not self.nondestabilizable


def prime_peak_check(front: OrientedFront, d: KnotTypeDescriptor) -> PeakCheck:
    inv = classical_invariants(front)
    nondestabilizable = not destabilizations(front)
    check = PeakCheck(inv, nondestabilizable, inv.pair in d.peaks)
    if not check.consistent:
        logger.warning(f"Nondestabilizable front {front} has {inv.pair}, not a peak of {d.name}")
    return check
