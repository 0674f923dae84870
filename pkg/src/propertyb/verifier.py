"""Exhaustive 2-colorability search and the matching-pair lemma check.

A coloring is an int bitmask over vertex ids: bit v set means vertex v is
Red, clear means Blue.  An edge with mask m is monochromatic under chi iff
``chi & m == m`` (all Red) or ``chi & m == 0`` (all Blue).

The search visits colorings in increasing bitmask order.  The top bits
form a prefix that is enumerated in Python; the low ``LOW_BITS`` bits are
scanned as a numpy array that is filtered edge by edge, so the first
surviving entry of the first live prefix is the minimum proper coloring.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .constructions import cross_family, swap_permutation
from .hypergraph import MAX_BITMASK_VERTICES, Edge, UniformHypergraph

LOW_BITS = 20
EXHAUSTIVE_LIMIT = 31
LEMMA_MAX_N = 12


class SearchLimitError(RuntimeError):
    """The instance is outside the exhaustive search budget."""


class SearchTimeout(SearchLimitError):
    pass


@dataclass(frozen=True)
class Verdict:
    two_colorable: bool
    witness: Optional[int] = None
    certificate_checked: bool = False
    prefixes_searched: int = field(default=0, compare=False)

    def red_vertices(self) -> list[int]:
        if self.witness is None:
            return []
        return [v for v in range(self.witness.bit_length()) if self.witness >> v & 1]


def coloring_from_red(red) -> int:
    return sum(1 << v for v in set(red))


def monochromatic_edge(h: UniformHypergraph, chi: int) -> Optional[Edge]:
    """Lexicographically first edge that is all Red or all Blue under ``chi``."""
    for e in h.edges:
        m = sum(1 << v for v in e)
        hit = chi & m
        if hit == m or hit == 0:
            return e
    return None


def is_proper(h: UniformHypergraph, chi: int) -> bool:
    return monochromatic_edge(h, chi) is None


def _fail_fast_order(h: UniformHypergraph) -> list[int]:
    # High-degree edges first: they constrain the most colorings.
    deg = h.degrees()
    edges = sorted(h.edges, key=lambda e: -sum(deg[v] for v in e))
    return [sum(1 << v for v in e) for e in edges]


class _Scanner:
    def __init__(self, h: UniformHypergraph, symmetry: bool):
        self.masks = _fail_fast_order(h)
        self.low_bits = min(h.vertex_count, LOW_BITS)
        self.high_bits = h.vertex_count - self.low_bits
        self.low_mask = (1 << self.low_bits) - 1
        # Vertex 0 is bit 0 of the low block; fixing it Blue keeps even values only.
        step = 2 if symmetry else 1
        self.low = np.arange(0, 1 << self.low_bits, step, dtype=np.int32)

    def scan(self, prefix: int) -> Optional[int]:
        """Minimum proper coloring whose high bits equal ``prefix``, if any."""
        hi = prefix << self.low_bits
        conds: list[tuple[int, int, int]] = []  # (free low bits, low mask, colors allowed)
        for m in self.masks:
            mh = m & ~self.low_mask
            ml = m & self.low_mask
            colors = 3
            if mh:
                part = hi & mh
                if part == mh:
                    colors = 1          # can only end up all Red
                elif part == 0:
                    colors = 2          # can only end up all Blue
                else:
                    continue
            if ml == 0:
                return None
            conds.append((bin(ml).count("1"), ml, colors))
        conds.sort(key=lambda c: c[0])
        alive = self.low
        for _, ml, colors in conds:
            sub = alive & ml
            if colors == 3:
                keep = (sub != ml) & (sub != 0)
            elif colors == 1:
                keep = sub != ml
            else:
                keep = sub != 0
            alive = alive[keep]
            if alive.size == 0:
                return None
        return hi | int(alive[0])


def find_proper_coloring(h: UniformHypergraph, *, symmetry: bool = True, fast: bool = False,
                         threads: int = 1, timeout: Optional[float] = None,
                         max_vertices: int = EXHAUSTIVE_LIMIT) -> Verdict:
    """Decide 2-colorability by exhaustive search.

    Returns the minimum-bitmask proper coloring (vertex 0 Blue when
    ``symmetry`` is on) or a not-colorable verdict after covering the whole
    search space.  ``fast`` lets parallel workers stop at the first witness
    found anywhere, which may not be the minimum.
    """
    vc = h.vertex_count
    if vc > MAX_BITMASK_VERTICES:
        raise SearchLimitError(
            f"{vc} vertices exceed the {MAX_BITMASK_VERTICES}-vertex bitmask domain; "
            "use the CNF encoding and a SAT solver instead")
    if vc > max_vertices:
        raise SearchLimitError(
            f"{vc} vertices exceed the exhaustive limit of {max_vertices}; "
            "use the CNF encoding and a SAT solver (`solve`) instead")
    scanner = _Scanner(h, symmetry)
    n_prefixes = 1 << scanner.high_bits
    deadline = None if timeout is None else time.monotonic() + timeout
    stop = threading.Event()

    def work(lo: int, hi: int) -> tuple[Optional[int], int]:
        done = 0
        for prefix in range(lo, hi):
            if stop.is_set():
                break
            if deadline is not None and time.monotonic() > deadline:
                raise SearchTimeout(f"exhaustive search exceeded {timeout} s")
            done += 1
            found = scanner.scan(prefix)
            if found is not None:
                if fast:
                    stop.set()
                return found, done
        return None, done

    threads = max(1, min(threads, n_prefixes))
    if threads == 1:
        results = [work(0, n_prefixes)]
    else:
        bounds_ = [n_prefixes * k // threads for k in range(threads + 1)]
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda k: work(bounds_[k], bounds_[k + 1]), range(threads)))
    found = [r for r, _ in results if r is not None]
    searched = sum(d for _, d in results)
    if found:
        witness = min(found)
        return Verdict(True, witness, is_proper(h, witness), searched)
    return Verdict(False, None, searched == n_prefixes, searched)


def minimality_probe(h: UniformHypergraph, **kwargs) -> bool:
    """True iff deleting any single edge makes ``h`` 2-colorable."""
    return all(find_proper_coloring(h.without_edges([e]), **kwargs).two_colorable
               for e in h.edges)


# -- matching-pair lemma -----------------------------------------------
# Colorings of U and V alone: bit i is u_{i+1}, bit n+j is v_{j+1}.

def matching_pairs(n: int, p: int) -> list[tuple[int, int]]:
    """(u bit, v bit) for each matching pair (u_i, v^p_i)."""
    perm = swap_permutation(n, p)
    return [(i, n + perm[i]) for i in range(n)]


def lemma1_condition_holds(n: int, chi_uv: int, p: int = 1) -> bool:
    """False iff some matching pair is Red-Red and another is Blue-Blue."""
    red_red = blue_blue = False
    for u, v in matching_pairs(n, p):
        cu, cv = chi_uv >> u & 1, chi_uv >> v & 1
        red_red |= cu == cv == 1
        blue_blue |= cu == cv == 0
    return not (red_red and blue_blue)


def _lemma_tables(n: int, p: int, chunk: np.ndarray):
    red_red = np.zeros(chunk.shape, dtype=bool)
    blue_blue = np.zeros(chunk.shape, dtype=bool)
    for u, v in matching_pairs(n, p):
        both = (1 << u) | (1 << v)
        sub = chunk & both
        red_red |= sub == both
        blue_blue |= sub == 0
    mono = np.zeros(chunk.shape, dtype=bool)
    for e in cross_family(n, 0, n, p):
        m = sum(1 << v for v in e)
        sub = chunk & m
        mono |= (sub == m) | (sub == 0)
    return ~(red_red & blue_blue), mono


def _lemma_chunks(n: int, size: int = 1 << 20):
    total = 1 << (2 * n)
    for start in range(0, total, size):
        yield np.arange(start, min(total, start + size), dtype=np.int64)


def verify_lemma1(n: int, p: int = 1) -> bool:
    """Every U/V coloring meeting the lemma's hypothesis leaves some edge of
    the p-th cross family monochromatic."""
    if not 1 <= n <= LEMMA_MAX_N:
        raise SearchLimitError(f"lemma check enumerates 4^n colorings; n must be <= {LEMMA_MAX_N}")
    swap_permutation(n, p)
    for chunk in _lemma_chunks(n):
        cond, mono = _lemma_tables(n, p, chunk)
        if np.any(cond & ~mono):
            return False
    return True


def lemma1_counterexamples(n: int, p: int = 1, hypothesis: bool = False,
                           limit: int = 10) -> list[int]:
    """U/V colorings with no monochromatic cross-family edge.

    With ``hypothesis=True`` only colorings meeting the lemma's hypothesis
    are returned (so a non-empty result refutes the lemma); otherwise only
    colorings violating it, which shows the hypothesis is needed.
    """
    out: list[int] = []
    for chunk in _lemma_chunks(n):
        cond, mono = _lemma_tables(n, p, chunk)
        sel = ~mono & (cond if hypothesis else ~cond)
        out.extend(int(c) for c in chunk[sel][: limit - len(out)])
        if len(out) >= limit:
            break
    return out
