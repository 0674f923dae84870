"""Base hypergraphs and the bound tables for m(n).

Two tables are kept.  The *classical* table lists the bounds obtained from
the Abbott-Moser product and the Abbott-Hanson / Toft recurrence.  The
*improved* table replaces rows 8, 11, 13 and 17 with the m(8) special
construction and the layered recurrence; every other row is carried over
from the classical table together with its value.  Carrying rows over
verbatim matters at n = 16, whose product recipe m(2) * m(8)^2 was
evaluated with the classical m(8) = 1339.

:func:`optimal_bound` is the plain minimum over every recurrence, which is
below the improved table at n = 12 (m(4) * m(3)^4 = 55223) and n = 16
(m(2) * 1269^2 = 4831083).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

from . import bounds
from .constructions import (
    aht,
    layered_construction,
    m8_construction,
    product_construction,
    swap_construction,
)
from .hypergraph import UniformHypergraph

FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))

EXACT_VALUES = {1: 1, 2: 3, 3: 7, 4: 23}

DEFAULT_CONSTRUCTION_CAP = 13


def single_vertex() -> UniformHypergraph:
    h = UniformHypergraph(1, 1, name="single_vertex")
    h.add_edge([0])
    return h


def triangle() -> UniformHypergraph:
    h = UniformHypergraph(2, 3, name="triangle")
    h.add_edges([(0, 1), (0, 2), (1, 2)])
    return h


def fano() -> UniformHypergraph:
    h = UniformHypergraph(3, 7, name="fano")
    h.add_edges([[v - 1 for v in line] for line in FANO_LINES])
    return h


class Rule(str, enum.Enum):
    EXACT = "Exact"
    PRODUCT_AM = "ProductAM"
    AHT = "AHT"
    SWAP = "Swap"
    LAYERED = "Layered"
    M8_SPECIAL = "M8Special"


@dataclass(frozen=True)
class BoundEntry:
    """Upper bound on m(n) and the recurrence that produced it.

    ``operands`` is the factor pair (a, b) for products, the core size n-2
    for the recursive rules, (5, 3) for the m(8) construction and empty for
    exact values.  ``children`` holds the entries the recurrence was
    evaluated on, so the whole recipe tree can be rebuilt.
    """

    n: int
    bound: int
    rule: Rule
    operands: tuple[int, ...] = ()
    children: tuple["BoundEntry", ...] = field(default=(), repr=False, compare=False)

    def formula(self) -> str:
        if self.rule is Rule.EXACT:
            return f"m({self.n}) = {self.bound}"
        if self.rule is Rule.PRODUCT_AM:
            a, b = self.operands
            return f"m({a}) * m({b})^{a}"
        if self.rule is Rule.M8_SPECIAL:
            return "2 * m(5) * m(3) + 8 * m(3)^2 + 2^7 + C(8,4)/2"
        return f"{self.rule.value} over m({self.n - 2})"


def evaluate(rule: Rule, n: int, children: tuple[BoundEntry, ...]) -> int:
    """Value of ``rule`` at ``n`` given the sub-entries it depends on."""
    if rule is Rule.EXACT:
        return EXACT_VALUES[n]
    if rule is Rule.PRODUCT_AM:
        outer, inner = children
        return bounds.product_count(outer.bound, inner.bound, outer.n)
    if rule is Rule.M8_SPECIAL:
        five, three = children
        return bounds.m8_count(five.bound, three.bound)
    (core,) = children
    return {
        Rule.AHT: bounds.aht_count,
        Rule.SWAP: bounds.swap_bound,
        Rule.LAYERED: bounds.layered_count,
    }[rule](n, core.bound)


def _entry(rule: Rule, n: int, operands: tuple[int, ...], children: tuple[BoundEntry, ...]) -> BoundEntry:
    return BoundEntry(n, evaluate(rule, n, children), rule, operands, children)


CLASSICAL_RECIPES: dict[int, tuple[Rule, tuple[int, ...]]] = {
    1: (Rule.EXACT, ()),
    2: (Rule.EXACT, ()),
    3: (Rule.EXACT, ()),
    4: (Rule.EXACT, ()),
    5: (Rule.AHT, (3,)),
    6: (Rule.PRODUCT_AM, (2, 3)),
    7: (Rule.AHT, (5,)),
    8: (Rule.AHT, (6,)),
    9: (Rule.PRODUCT_AM, (3, 3)),
    10: (Rule.PRODUCT_AM, (2, 5)),
    11: (Rule.AHT, (9,)),
    12: (Rule.PRODUCT_AM, (2, 6)),
    13: (Rule.AHT, (11,)),
    14: (Rule.PRODUCT_AM, (2, 7)),
    15: (Rule.PRODUCT_AM, (5, 3)),
    16: (Rule.PRODUCT_AM, (2, 8)),
    17: (Rule.AHT, (15,)),
}

IMPROVED_RECIPES: dict[int, tuple[Rule, tuple[int, ...]]] = {
    8: (Rule.M8_SPECIAL, (5, 3)),
    11: (Rule.LAYERED, (9,)),
    13: (Rule.LAYERED, (11,)),
    17: (Rule.LAYERED, (15,)),
}

TABLE_MAX = max(CLASSICAL_RECIPES)

EDITIONS = ("classical", "improved")


@lru_cache(maxsize=None)
def table_entry(n: int, edition: str = "improved") -> BoundEntry:
    """Row ``n`` (1 <= n <= 17) of the classical or improved table."""
    if edition not in EDITIONS:
        raise ValueError(f"edition must be one of {EDITIONS}")
    if not 1 <= n <= TABLE_MAX:
        raise ValueError(f"table rows cover 1..{TABLE_MAX}, got {n}")
    if edition == "improved" and n in IMPROVED_RECIPES:
        rule, operands = IMPROVED_RECIPES[n]
    else:
        # Carried-over rows keep the value they had in the classical table.
        edition = "classical"
        rule, operands = CLASSICAL_RECIPES[n]
    children = tuple(table_entry(k, edition) for k in operands)
    return _entry(rule, n, operands, children)


def candidates(n: int) -> list[BoundEntry]:
    """Every applicable recurrence at ``n``, evaluated on optimal sub-bounds."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out = []
    if n in EXACT_VALUES:
        out.append(_entry(Rule.EXACT, n, (), ()))
    for a in range(2, n // 2 + 1):
        if n % a == 0:
            b = n // a
            out.append(_entry(Rule.PRODUCT_AM, n, (a, b), (optimal_bound(a), optimal_bound(b))))
    if n >= 3:
        core = (optimal_bound(n - 2),)
        for rule in (Rule.AHT, Rule.SWAP, Rule.LAYERED):
            out.append(_entry(rule, n, (n - 2,), core))
    if n == 8:
        out.append(_entry(Rule.M8_SPECIAL, 8, (5, 3), (optimal_bound(5), optimal_bound(3))))
    return out


@lru_cache(maxsize=None)
def optimal_bound(n: int) -> BoundEntry:
    """Minimum over all recurrences; ties go to the earlier rule in :class:`Rule`."""
    order = list(Rule)
    return min(candidates(n), key=lambda e: (e.bound, order.index(e.rule)))


def best_bound(n: int) -> BoundEntry:
    """Best-known bound: the improved table for n <= 17, :func:`optimal_bound` beyond."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n <= TABLE_MAX:
        return table_entry(n, "improved")
    return optimal_bound(n)


def build(entry: BoundEntry) -> UniformHypergraph:
    """Materialize the hypergraph described by a bound entry's recipe tree."""
    if entry.rule is Rule.EXACT:
        h = {1: single_vertex, 2: triangle, 3: fano}.get(entry.n)
        h = h() if h else aht(triangle(), 4)
    elif entry.rule is Rule.PRODUCT_AM:
        outer, inner = entry.children
        h = product_construction(build(outer), build(inner))
    elif entry.rule is Rule.M8_SPECIAL:
        five, three = entry.children
        h = m8_construction(build(five), build(three), build(three))
    else:
        core = build(entry.children[0])
        make = {Rule.AHT: aht, Rule.SWAP: swap_construction,
                Rule.LAYERED: layered_construction}[entry.rule]
        h = make(core, entry.n)
    h.name = f"best({entry.n})"
    return h


def best_construction(n: int, cap: int = DEFAULT_CONSTRUCTION_CAP) -> UniformHypergraph:
    """Explicit hypergraph with exactly ``best_bound(n).bound`` edges."""
    if n > cap:
        raise ValueError(f"n={n} exceeds the construction cap {cap}; raise cap explicitly")
    return build(best_bound(n))
