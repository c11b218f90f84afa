"""MBTI label algebra.

The 16 four-letter type codes, the cognitive-function stack each code
implies, and projections of a type into every coarser label space the
toolkit trains and evaluates on (dominant function, first-two-function
group, and the four binary letter axes).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable

ATTITUDES = ("E", "I")
PERCEIVING_PREFS = ("N", "S")
JUDGING_PREFS = ("F", "T")
ORIENTATIONS = ("J", "P")

KIND_NAMES = {"T": "Thinking", "F": "Feeling", "S": "Sensing", "N": "Intuition"}
DIRECTION_NAMES = {"i": "introverted", "e": "extroverted"}

# Kind pairs that "opposite" swaps: judging kinds T<->F, perceiving kinds N<->S.
_OPPOSITE_KIND = {"T": "F", "F": "T", "N": "S", "S": "N"}
_OPPOSITE_DIRECTION = {"i": "e", "e": "i"}


class InvalidTypeCode(ValueError):
    """Raised when a string is not one of the 16 MBTI type codes."""


@dataclass(frozen=True)
class MbtiType:
    """One of the 16 type codes, split into its four letters."""

    attitude: str      # I or E
    perceiving: str    # N or S
    judging: str       # T or F
    orientation: str   # P or J

    def __post_init__(self) -> None:
        if self.attitude not in "IE":
            raise InvalidTypeCode(f"attitude letter {self.attitude!r} not in I/E")
        if self.perceiving not in "NS":
            raise InvalidTypeCode(f"perceiving letter {self.perceiving!r} not in N/S")
        if self.judging not in "TF":
            raise InvalidTypeCode(f"judging letter {self.judging!r} not in T/F")
        if self.orientation not in "PJ":
            raise InvalidTypeCode(f"orientation letter {self.orientation!r} not in P/J")

    @property
    def code(self) -> str:
        return self.attitude + self.perceiving + self.judging + self.orientation

    def __str__(self) -> str:
        return self.code


@dataclass(frozen=True)
class CognitiveFunction:
    """One of the 8 Jungian functions: a kind plus a direction (e.g. Ti, Ne)."""

    kind: str       # T, F, S or N
    direction: str  # i or e

    def __post_init__(self) -> None:
        if self.kind not in KIND_NAMES:
            raise ValueError(f"unknown function kind {self.kind!r}")
        if self.direction not in DIRECTION_NAMES:
            raise ValueError(f"unknown direction {self.direction!r}")

    @property
    def code(self) -> str:
        return self.kind + self.direction

    @property
    def name(self) -> str:
        return f"{DIRECTION_NAMES[self.direction].capitalize()} {KIND_NAMES[self.kind]}"

    @property
    def is_perceiving(self) -> bool:
        return self.kind in "NS"

    def opposite(self) -> "CognitiveFunction":
        """Flip both the kind pair (T<->F, N<->S) and the direction."""
        return CognitiveFunction(_OPPOSITE_KIND[self.kind], _OPPOSITE_DIRECTION[self.direction])

    def __str__(self) -> str:
        return self.code


@dataclass(frozen=True)
class FunctionStack:
    """Ordered dominant / auxiliary / tertiary / inferior functions."""

    functions: tuple[CognitiveFunction, CognitiveFunction, CognitiveFunction, CognitiveFunction]

    @property
    def dominant(self) -> CognitiveFunction:
        return self.functions[0]

    @property
    def auxiliary(self) -> CognitiveFunction:
        return self.functions[1]

    @property
    def tertiary(self) -> CognitiveFunction:
        return self.functions[2]

    @property
    def inferior(self) -> CognitiveFunction:
        return self.functions[3]

    def codes(self) -> tuple[str, str, str, str]:
        return tuple(f.code for f in self.functions)  # type: ignore[return-value]

    def validate(self) -> None:
        """Check the structural rules every well-formed stack satisfies."""
        dom, aux, ter, inf = self.functions
        if ter != aux.opposite():
            raise ValueError(f"tertiary {ter} is not the opposite of auxiliary {aux}")
        if inf != dom.opposite():
            raise ValueError(f"inferior {inf} is not the opposite of dominant {dom}")
        if dom.direction == aux.direction:
            raise ValueError(f"dominant {dom} and auxiliary {aux} share a direction")
        if dom.is_perceiving == aux.is_perceiving:
            raise ValueError(
                f"exactly one of {dom}, {aux} must be a perceiving function"
            )

    def __str__(self) -> str:
        return "-".join(self.codes())


class Granularity(Enum):
    """The seven label spaces classifiers are trained and scored in."""

    FULL16 = "full16"
    DOMINANT8 = "dominant8"
    FIRST_TWO8 = "firsttwo8"
    AXIS_IE = "axis-ie"
    AXIS_NS = "axis-ns"
    AXIS_TF = "axis-tf"
    AXIS_PJ = "axis-pj"


AXES = (Granularity.AXIS_IE, Granularity.AXIS_NS, Granularity.AXIS_TF, Granularity.AXIS_PJ)


@dataclass(frozen=True)
class LabelSpace:
    granularity: Granularity
    labels: tuple[str, ...]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def __len__(self) -> int:
        return len(self.labels)


def parse_type(text: str) -> MbtiType:
    """Parse a four-letter type code, case-insensitive, surrounding whitespace ok.

    Rejects anything else with a diagnostic naming the offending position.
    """
    if not isinstance(text, str):
        raise InvalidTypeCode(f"expected a string, got {type(text).__name__}")
    code = text.strip().upper()
    if len(code) != 4:
        raise InvalidTypeCode(f"{text.strip()!r} is not a 4-letter type code")
    slots = (("I", "E"), ("N", "S"), ("T", "F"), ("P", "J"))
    for pos, (a, b) in enumerate(slots):
        if code[pos] not in (a, b):
            raise InvalidTypeCode(
                f"{text.strip()!r}: letter {pos + 1} must be {a} or {b}, got {code[pos]!r}"
            )
    return MbtiType(code[0], code[1], code[2], code[3])


def _all_types() -> tuple[MbtiType, ...]:
    types = [
        MbtiType(a, p, j, o)
        for a in "EI"
        for p in "NS"
        for j in "FT"
        for o in "JP"
    ]
    return tuple(sorted(types, key=lambda t: t.code))


ALL_TYPES: tuple[MbtiType, ...] = _all_types()
ALL_CODES: tuple[str, ...] = tuple(t.code for t in ALL_TYPES)


@lru_cache(maxsize=None)
def function_stack(t: MbtiType) -> FunctionStack:
    """Derive the four-function stack from a type's letters.

    The extroverted one of the first two functions takes the perceiving
    preference (N/S) when the type ends in P, and the judging preference
    (T/F) when it ends in J; the other middle letter supplies the
    introverted one. Extroverts lead with the extroverted function,
    introverts with the introverted one. The tertiary is the opposite of
    the auxiliary, the inferior the opposite of the dominant.
    """
    if t.orientation == "P":
        extro_kind, intro_kind = t.perceiving, t.judging
    else:
        extro_kind, intro_kind = t.judging, t.perceiving
    extro = CognitiveFunction(extro_kind, "e")
    intro = CognitiveFunction(intro_kind, "i")
    if t.attitude == "E":
        dominant, auxiliary = extro, intro
    else:
        dominant, auxiliary = intro, extro
    return FunctionStack((dominant, auxiliary, auxiliary.opposite(), dominant.opposite()))


def opposite_type(t: MbtiType) -> MbtiType:
    """Flip all four letters (e.g. INTP <-> ESFJ)."""
    flip = {"I": "E", "E": "I", "N": "S", "S": "N", "T": "F", "F": "T", "P": "J", "J": "P"}
    return MbtiType(flip[t.attitude], flip[t.perceiving], flip[t.judging], flip[t.orientation])


def first_two_key(t: MbtiType) -> str:
    """Canonical key for the unordered pair of the first two functions.

    The two function codes are concatenated in alphabetical order, so
    ENFP ([Ne, Fi, ...]) and INFP ([Fi, Ne, ...]) both map to "FiNe".
    """
    stack = function_stack(t)
    a, b = sorted((stack.dominant.code, stack.auxiliary.code))
    return a + b


def project(t: MbtiType, space: Granularity | LabelSpace) -> str:
    """Map a type to its label in the given space."""
    granularity = space.granularity if isinstance(space, LabelSpace) else space
    if granularity is Granularity.FULL16:
        return t.code
    if granularity is Granularity.DOMINANT8:
        return function_stack(t).dominant.code
    if granularity is Granularity.FIRST_TWO8:
        return first_two_key(t)
    if granularity is Granularity.AXIS_IE:
        return t.attitude
    if granularity is Granularity.AXIS_NS:
        return t.perceiving
    if granularity is Granularity.AXIS_TF:
        return t.judging
    if granularity is Granularity.AXIS_PJ:
        return t.orientation
    raise ValueError(f"unknown label space {space!r}")


@lru_cache(maxsize=None)
def label_space(granularity: Granularity) -> LabelSpace:
    """Canonical label space for a granularity; labels sorted alphabetically."""
    labels = sorted({project(t, granularity) for t in ALL_TYPES})
    return LabelSpace(granularity, tuple(labels))


def projection_table(granularity: Granularity) -> dict[str, str]:
    """Type code -> label, for every one of the 16 codes."""
    return {t.code: project(t, granularity) for t in ALL_TYPES}


def export_label_spaces() -> dict:
    """All label spaces as one JSON-ready document.

    Each space carries its ordered label list plus the full 16-code
    mapping, so downstream trainers can relabel records without
    re-deriving function stacks.
    """
    return {
        "spaces": {
            g.value: {
                "labels": list(label_space(g).labels),
                "mapping": projection_table(g),
            }
            for g in Granularity
        }
    }


def write_label_spaces(path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(export_label_spaces(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def parse_granularity(name: str) -> Granularity:
    try:
        return Granularity(name.strip().lower())
    except ValueError:
        valid = ", ".join(g.value for g in Granularity)
        raise ValueError(f"unknown label space {name!r}; expected one of: {valid}") from None


def group_members(granularity: Granularity) -> dict[str, list[str]]:
    """Label -> the type codes that project onto it."""
    groups: dict[str, list[str]] = {}
    for t in ALL_TYPES:
        groups.setdefault(project(t, granularity), []).append(t.code)
    return groups


def axis_letter_for(granularity: Granularity, t: MbtiType) -> str:
    if granularity not in AXES:
        raise ValueError(f"{granularity} is not a binary axis")
    return project(t, granularity)


def assemble_code(letters: Iterable[str]) -> str:
    """Build a type code from per-axis letters in I/E, N/S, T/F, P/J order."""
    code = "".join(letters)
    return parse_type(code).code
