"""Formal homotopy types: contractible, or a finite wedge of spheres.

``S^-1`` is the empty complex.  It is allowed only on its own; wedging it
with anything else is rejected.  Values are immutable and normalised, so
structural equality is homotopy-type equality within the calculus.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class SphereError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class HomotopyClass:
    _items: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        items = tuple(sorted((int(d), int(c)) for d, c in self._items if c))
        for d, c in items:
            if d < -1:
                raise SphereError(f"sphere dimension {d} below -1")
            if c < 0:
                raise SphereError("negative sphere count")
        if any(d == -1 for d, _ in items) and items != ((-1, 1),):
            raise SphereError("S^-1 can only appear alone, once")
        object.__setattr__(self, "_items", items)

    # -- constructors ----------------------------------------------------

    @classmethod
    def contractible(cls) -> "HomotopyClass":
        return cls(())

    @classmethod
    def sphere(cls, d: int, count: int = 1) -> "HomotopyClass":
        return cls(((d, count),))

    @classmethod
    def empty(cls) -> "HomotopyClass":
        return cls(((-1, 1),))

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "HomotopyClass":
        return cls(tuple(counts.items()))

    # -- inspection ------------------------------------------------------

    @property
    def is_contractible(self) -> bool:
        return not self._items

    @property
    def is_empty(self) -> bool:
        return self._items == ((-1, 1),)

    @property
    def spheres(self) -> dict[int, int]:
        return dict(self._items)

    def dimensions(self) -> list[int]:
        return [d for d, _ in self._items]

    @property
    def euler(self) -> int:
        """Reduced Euler characteristic."""
        return sum((-1 if d % 2 else 1) * c for d, c in self._items)

    def poincare(self) -> dict[int, int]:
        """Coefficients of the Poincare polynomial in y."""
        return dict(self._items)

    # -- rendering -------------------------------------------------------

    def __str__(self):
        if not self._items:
            return "pt"
        return " v ".join(f"S^{d}" if c == 1 else f"{c}*S^{d}" for d, c in self._items)

    def __repr__(self):
        return f"HomotopyClass({self})"

    def to_dict(self) -> dict:
        return {"contractible": self.is_contractible, "spheres": {str(d): c for d, c in self._items}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: Mapping) -> "HomotopyClass":
        try:
            spheres = {int(k): int(v) for k, v in d["spheres"].items()}
            flag = bool(d["contractible"])
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise SphereError(f"malformed homotopy class: {exc}") from None
        if flag != (not spheres):
            raise SphereError("contractible flag disagrees with sphere list")
        if any(c <= 0 for c in spheres.values()):
            raise SphereError("sphere counts must be positive")
        return cls.from_counts(spheres)

    @classmethod
    def from_json(cls, text: str) -> "HomotopyClass":
        return cls.from_dict(json.loads(text))

    @classmethod
    def parse(cls, text: str) -> "HomotopyClass":
        text = text.strip()
        if text == "pt":
            return cls.contractible()
        counts: dict[int, int] = {}
        for part in text.split(" v "):
            m = re.fullmatch(r"(?:(\d+)\*)?S\^(-?\d+)", part.strip())
            if not m:
                raise SphereError(f"cannot parse {part!r}")
            c = int(m.group(1) or 1)
            d = int(m.group(2))
            counts[d] = counts.get(d, 0) + c
        return cls.from_counts(counts)


# -- the calculus ------------------------------------------------------


def wedge(*parts: HomotopyClass) -> HomotopyClass:
    """Wedge sum; the empty list gives a point."""
    if not parts:
        return HomotopyClass.contractible()
    if any(p.is_empty for p in parts):
        if all(p.is_empty for p in parts):
            return HomotopyClass.empty()
        raise SphereError("cannot wedge S^-1 with anything else")
    counts: dict[int, int] = {}
    for p in parts:
        for d, c in p._items:
            counts[d] = counts.get(d, 0) + c
    return HomotopyClass.from_counts(counts)


def suspension(a: HomotopyClass, k: int = 1) -> HomotopyClass:
    if k < 0:
        raise SphereError("suspension count must be nonnegative")
    return HomotopyClass(tuple((d + k, c) for d, c in a._items))


def join(*parts: HomotopyClass) -> HomotopyClass:
    """Join, distributed over wedges; S^-1 is the unit and a point absorbs."""
    acc = {-1: 1}
    for p in parts:
        if p.is_contractible:
            return HomotopyClass.contractible()
        nxt: dict[int, int] = {}
        for i, a in acc.items():
            for j, b in p._items:
                nxt[i + j + 1] = nxt.get(i + j + 1, 0) + a * b
        acc = nxt
    return HomotopyClass.from_counts(acc)


def poincare_polynomial(a: HomotopyClass) -> dict[int, int]:
    return a.poincare()


def equals(a: HomotopyClass, b: HomotopyClass) -> bool:
    return a == b


def wedge_of(classes: Iterable[HomotopyClass]) -> HomotopyClass:
    return wedge(*list(classes))


# -- count tables ------------------------------------------------------


@dataclass
class SphereCountTable:
    """Finitely supported table (t, d) -> number of d-spheres."""

    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if any(c < 0 for c in self.entries.values()):
            raise SphereError("negative count in table")
        self.entries = {k: v for k, v in self.entries.items() if v}

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def ts(self) -> list[int]:
        return sorted({t for t, _ in self.entries})

    def row(self, t: int) -> dict[int, int]:
        return {d: c for (tt, d), c in sorted(self.entries.items()) if tt == t}

    def support(self, t: int) -> list[int]:
        return sorted(self.row(t))

    def homotopy(self, t: int) -> HomotopyClass:
        return HomotopyClass.from_counts(self.row(t))

    def restricted(self, t_lo: int, t_hi: int) -> "SphereCountTable":
        return SphereCountTable({k: v for k, v in self.entries.items() if t_lo <= k[0] <= t_hi})

    def __eq__(self, other):
        if not isinstance(other, SphereCountTable):
            return NotImplemented
        return self.entries == other.entries
