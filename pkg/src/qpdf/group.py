"""Finite abelian groups Z_n1 x ... x Z_nr and a finite window of Z.

Elements are tuples of ints.  Finite groups enumerate lexicographically
(identity first); a :class:`ZWindow` holds the integers ``-N..N`` and its
addition is partial: sums that leave the window raise :class:`OutOfWindow`.

Group strings: ``"Z4xZ2"`` (case-insensitive) or ``"Z@10"`` for a window.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Union

import numpy as np

from .errors import DimensionMismatch, OutOfWindow, TooLarge

#: largest group on which exhaustive operations are allowed
MAX_ELEMENTS = 4096


@dataclass(frozen=True)
class FiniteGroup:
    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if not orders or any(n < 2 for n in orders):
            raise ValueError(f"cyclic factor orders must be >= 2, got {self.orders!r}")
        object.__setattr__(self, "orders", orders)

    # --- basic facts -----------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    def __len__(self) -> int:
        return self.size

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def exponent(self) -> int:
        return reduce(math.lcm, self.orders)

    def is_exponent_le_2(self) -> bool:
        return self.exponent() <= 2

    def __str__(self) -> str:
        return "x".join(f"Z{n}" for n in self.orders)

    def to_json(self) -> dict:
        return {"orders": list(self.orders)}

    # --- elements ----------------------------------------------------------
    def element(self, g) -> tuple[int, ...]:
        if isinstance(g, (int, np.integer)):
            g = (int(g),)
        g = tuple(int(c) for c in g)
        if len(g) != self.rank:
            raise DimensionMismatch(f"{g} has {len(g)} coordinates, {self} has rank {self.rank}")
        if any(not 0 <= c < n for c, n in zip(g, self.orders)):
            raise ValueError(f"{g} is not a reduced element of {self}")
        return g

    def reduce(self, g) -> tuple[int, ...]:
        """Reduce arbitrary integer coordinates modulo the factor orders."""
        if isinstance(g, (int, np.integer)):
            g = (int(g),)
        if len(g) != self.rank:
            raise DimensionMismatch(f"{tuple(g)} does not match rank {self.rank}")
        return tuple(int(c) % n for c, n in zip(g, self.orders))

    def elements(self) -> list[tuple[int, ...]]:
        self._check_size()
        return [tuple(int(c) for c in row) for row in self.coords]

    def _check_size(self):
        if self.size > MAX_ELEMENTS:
            raise TooLarge(f"{self} has {self.size} elements (limit {MAX_ELEMENTS})")

    @cached_property
    def coords(self) -> np.ndarray:
        """``(size, rank)`` int array of all elements in canonical order."""
        self._check_size()
        grids = np.meshgrid(*[np.arange(n) for n in self.orders], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=-1)

    @cached_property
    def _strides(self) -> np.ndarray:
        strides = np.ones(self.rank, dtype=np.int64)
        for i in range(self.rank - 2, -1, -1):
            strides[i] = strides[i + 1] * self.orders[i + 1]
        return strides

    def index(self, g) -> int:
        return int(np.dot(self.reduce(g), self._strides))

    def index_array(self, coords) -> np.ndarray:
        """Canonical indices of an ``(..., rank)`` array of (unreduced) coordinates."""
        coords = np.mod(np.asarray(coords), np.asarray(self.orders))
        return coords @ self._strides

    # --- arithmetic ----------------------------------------------------------
    def add(self, a, b) -> tuple[int, ...]:
        a, b = self.element(a), self.element(b)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a) -> tuple[int, ...]:
        a = self.element(a)
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def sub(self, a, b) -> tuple[int, ...]:
        return self.add(a, self.neg(b))

    def scale(self, n: int, a) -> tuple[int, ...]:
        a = self.element(a)
        return tuple((n * x) % m for x, m in zip(a, self.orders))

    def order_of(self, a) -> int:
        a = self.element(a)
        return reduce(math.lcm, (m // math.gcd(x, m) for x, m in zip(a, self.orders)), 1)

    @cached_property
    def sub_table(self) -> np.ndarray:
        """``T[i, j]`` = index of ``elements[j] - elements[i]``."""
        c = self.coords
        return self.index_array(c[None, :, :] - c[:, None, :])

    @cached_property
    def add_table(self) -> np.ndarray:
        c = self.coords
        return self.index_array(c[None, :, :] + c[:, None, :])

    @cached_property
    def neg_index(self) -> np.ndarray:
        return self.index_array(-self.coords)


@dataclass(frozen=True)
class ZWindow:
    """The integers ``-radius..radius`` standing in for Z."""

    radius: int

    def __post_init__(self):
        if int(self.radius) < 1:
            raise ValueError(f"window radius must be >= 1, got {self.radius!r}")
        object.__setattr__(self, "radius", int(self.radius))

    rank = 1

    @property
    def size(self) -> int:
        return 2 * self.radius + 1

    def __len__(self) -> int:
        return self.size

    @property
    def identity(self) -> tuple[int]:
        return (0,)

    def exponent(self) -> float:
        return math.inf

    def is_exponent_le_2(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"Z@{self.radius}"

    def to_json(self) -> dict:
        return {"zwindow": self.radius}

    def element(self, g) -> tuple[int]:
        if not isinstance(g, (int, np.integer)):
            g = tuple(g)
            if len(g) != 1:
                raise DimensionMismatch(f"{g} is not an element of {self}")
            g = g[0]
        g = int(g)
        if abs(g) > self.radius:
            raise OutOfWindow(f"{g} lies outside {self}")
        return (g,)

    def contains(self, n: int) -> bool:
        return abs(n) <= self.radius

    def elements(self) -> list[tuple[int]]:
        return [(n,) for n in range(-self.radius, self.radius + 1)]

    @cached_property
    def coords(self) -> np.ndarray:
        return np.arange(-self.radius, self.radius + 1).reshape(-1, 1)

    def index(self, g) -> int:
        return self.element(g)[0] + self.radius

    def add(self, a, b) -> tuple[int]:
        return self.element(self.element(a)[0] + self.element(b)[0])

    def neg(self, a) -> tuple[int]:
        return (-self.element(a)[0],)

    def sub(self, a, b) -> tuple[int]:
        return self.add(a, self.neg(b))

    def scale(self, n: int, a) -> tuple[int]:
        return self.element(n * self.element(a)[0])

    def order_of(self, a) -> float:
        return 1 if self.element(a)[0] == 0 else math.inf

    def centered_points(self) -> list[tuple[int]]:
        """``-floor(N/2)..floor(N/2)``: all pairwise differences stay in the window."""
        h = self.radius // 2
        return [(n,) for n in range(-h, h + 1)]


GroupSpec = Union[FiniteGroup, ZWindow]

_FINITE_RE = re.compile(r"^z(\d+)(x\s*z(\d+))*$")


def parse_group(text: str) -> GroupSpec:
    """Parse ``"Z4xZ2"`` / ``"z6"`` / ``"Z@10"``."""
    s = text.strip().lower().replace(" ", "")
    if s.startswith("z@"):
        try:
            return ZWindow(int(s[2:]))
        except ValueError as exc:
            raise ValueError(f"cannot read window {text!r}") from exc
    if not _FINITE_RE.match(s):
        raise ValueError(f"cannot read group {text!r}; expected e.g. 'Z4xZ2' or 'Z@10'")
    return FiniteGroup(tuple(int(part[1:]) for part in s.split("x")))


def group_from_json(obj) -> GroupSpec:
    if isinstance(obj, str):
        return parse_group(obj)
    if "orders" in obj:
        return FiniteGroup(tuple(obj["orders"]))
    if "zwindow" in obj:
        return ZWindow(obj["zwindow"])
    raise ValueError(f"unrecognised group description {obj!r}")
