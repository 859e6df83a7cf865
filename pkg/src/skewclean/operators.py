"""Additive maps x -> a*x - x*b on a finite ring, and equation solving."""

from __future__ import annotations

from typing import Optional

from .rings import FiniteRing, RingError, analyze


class NotUnitError(RingError):
    """The coefficient that must be invertible is not a unit."""


class NotNilpotentError(RingError):
    """No power of the element vanishes within the ring order."""


class AdditiveMap:
    """The abelian-group endomorphism x -> a*x - x*b of a finite ring.

    The image table is materialized lazily and then shared; solving picks
    the least-index preimage for determinism.
    """

    __slots__ = ("ring", "a", "b", "_image", "_solutions")

    def __init__(self, ring: FiniteRing, a: int, b: int):
        if not 0 <= a < ring.order or not 0 <= b < ring.order:
            raise RingError(f"map coefficients ({a},{b}) out of range for {ring.label}")
        self.ring = ring
        self.a = a
        self.b = b
        self._image: Optional[tuple[int, ...]] = None
        self._solutions: Optional[tuple[Optional[int], ...]] = None

    @property
    def image(self) -> tuple[int, ...]:
        if self._image is None:
            ring, a, b = self.ring, self.a, self.b
            add, mul, neg = ring.add, ring.mul, ring.neg
            self._image = tuple(
                add[mul[a][x]][neg[mul[x][b]]] for x in range(ring.order)
            )
        return self._image

    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.ring.order

    def solve(self, v: int) -> Optional[int]:
        """Least x with a*x - x*b = v, or None when v is not in the image."""
        if self._solutions is None:
            table: list[Optional[int]] = [None] * self.ring.order
            for x, value in enumerate(self.image):
                if table[value] is None:
                    table[value] = x
            self._solutions = tuple(table)
        return self._solutions[v]

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __repr__(self) -> str:
        return f"AdditiveMap(a={self.a}, b={self.b} on {self.ring.label})"


def lr_map(ring: FiniteRing, a: int, b: int) -> AdditiveMap:
    """The map x -> a*x - x*b."""
    return AdditiveMap(ring, a, b)


def is_surjective(mapping: AdditiveMap) -> bool:
    return mapping.is_surjective()


def solve(mapping: AdditiveMap, v: int) -> Optional[int]:
    return mapping.solve(v)


def solve_nilpotent(ring: FiniteRing, a: int, b: int, v: int) -> int:
    """Solve a*x - x*b = v by the geometric-series formula
    x = a^-1*v + a^-2*v*b + ... + a^-n*v*b^(n-1), valid when a is a unit
    and b^n = 0.  The sum telescopes: a*x - x*b = v exactly."""
    ana = analyze(ring)
    inv_a = ana.inverses[a]
    if inv_a is None:
        raise NotUnitError(f"{ring.format_element(a)} is not a unit in {ring.label}")
    add, mul = ring.add, ring.mul
    power, n = b, 1
    while power != 0:
        power = mul[power][b]
        n += 1
        if n > ring.order:
            raise NotNilpotentError(
                f"{ring.format_element(b)} is not nilpotent in {ring.label}"
            )
    x = 0
    a_pow, b_pow = inv_a, ring.one
    for _ in range(n):
        x = add[x][mul[mul[a_pow][v]][b_pow]]
        a_pow = mul[a_pow][inv_a]
        b_pow = mul[b_pow][b]
    return x
