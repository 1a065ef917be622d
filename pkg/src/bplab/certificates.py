"""Certificate types for the gap, cover and gap-cover numbers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping


@dataclass(frozen=True)
class GapCertificate:
    """``charge[(e, f, i)]`` names the edge (e or f) that pays occurrence i of {e, f}."""

    charge: Mapping
    k: int


@dataclass(frozen=True)
class CoverCertificate:
    """``covers[e]`` is a vertex set hitting every edge independently crossing e."""

    covers: Mapping
    k: int


@dataclass(frozen=True)
class Bearing:
    pairs: frozenset

    def responsibilities(self) -> dict:
        out: dict = {}
        for e, f in sorted(self.pairs):
            out.setdefault(e, []).append(f)
        return out


@dataclass(frozen=True)
class GapCoverCertificate:
    bearing: Bearing
    covers: Mapping
    k: int
    # False when the solver stopped at a certified upper bound
    optimal: bool = field(default=True, compare=False)
