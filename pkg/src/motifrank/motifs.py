"""Motif vocabulary: the triangle plus all six connected four-node graphs."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, unique
from types import MappingProxyType
from typing import Iterator, Mapping


@unique
class MotifKind(Enum):
    """Closure targets a candidate edge can complete.

    The value of each member is the public (CLI / CSV) name of the motif.
    """

    TRIANGLE = "triangle"
    PATH4 = "4-path"
    STAR4 = "4-star"
    CYCLE4 = "4-cycle"
    TAILED_TRIANGLE4 = "4-tailed-triangle"
    CHORDAL_CYCLE4 = "4-chordal-cycle"
    CLIQUE4 = "4-clique"

    @classmethod
    def from_name(cls, name: str) -> "MotifKind":
        """Resolve a public name ("4-cycle") or member name ("CYCLE4")."""
        key = name.strip().lower()
        for kind in cls:
            if key == kind.value or key == kind.name.lower():
                return kind
        valid = ", ".join(k.value for k in cls)
        raise ValueError(f"unknown motif {name!r} (expected one of: {valid})")


#: The six four-node kinds, in a fixed public order.
FOUR_NODE_KINDS: tuple[MotifKind, ...] = (
    MotifKind.PATH4,
    MotifKind.STAR4,
    MotifKind.CYCLE4,
    MotifKind.TAILED_TRIANGLE4,
    MotifKind.CHORDAL_CYCLE4,
    MotifKind.CLIQUE4,
)

ALL_KINDS: tuple[MotifKind, ...] = (MotifKind.TRIANGLE,) + FOUR_NODE_KINDS


@dataclass(frozen=True)
class ClosureVector:
    """Closure counts for one candidate pair: one count per motif kind.

    Always carries all seven kinds; every count is a non-negative int.
    """

    counts: Mapping[MotifKind, int]

    def __post_init__(self) -> None:
        counts = dict(self.counts)
        missing = set(MotifKind) - counts.keys()
        if missing:
            raise ValueError(f"closure vector missing kinds: {sorted(k.value for k in missing)}")
        for kind, value in counts.items():
            if value < 0:
                raise ValueError(f"negative count {value} for {kind.value}")
            counts[kind] = int(value)
        object.__setattr__(self, "counts", MappingProxyType(counts))

    @classmethod
    def zero(cls) -> "ClosureVector":
        return cls({kind: 0 for kind in MotifKind})

    def __getitem__(self, kind: MotifKind) -> int:
        return self.counts[kind]

    def __iter__(self) -> Iterator[tuple[MotifKind, int]]:
        # fixed public order, independent of construction order
        return ((kind, self.counts[kind]) for kind in ALL_KINDS)

    def as_dict(self) -> dict[str, int]:
        """Counts keyed by member name (TRIANGLE, PATH4, ...), in fixed order."""
        return {kind.name: self.counts[kind] for kind in ALL_KINDS}
