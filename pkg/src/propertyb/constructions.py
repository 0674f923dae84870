"""Explicit non-2-colorable uniform hypergraph constructions.

Every generator inserts edges through set semantics, so coincident edges
are merged rather than counted twice; the closed forms in
:mod:`propertyb.bounds` are then checked against the real edge count.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

from . import bounds
from .hypergraph import (
    Edge,
    HypergraphError,
    Role,
    UniformHypergraph,
    core_labels,
    disjoint_union_embed,
)


def swap_permutation(n: int, p: int) -> list[int]:
    """0-based V positions of the ordering V^p: positions 1 and p transposed."""
    if not 1 <= p <= n:
        raise ValueError(f"swap index p must lie in 1..{n}, got {p}")
    perm = list(range(n))
    perm[0], perm[p - 1] = perm[p - 1], perm[0]
    return perm


def cross_subsets(n: int) -> Iterator[tuple[bool, tuple[int, ...]]]:
    """Yield (odd, K) for every index subset K used by the cross family.

    K is 0-based; odd |K| ranges over 1..n//2 and even |K| over 2..n//2.
    """
    for k in range(1, n // 2 + 1):
        for K in combinations(range(n), k):
            yield k % 2 == 1, K


def cross_family(n: int, u_offset: int, v_offset: int, p: int = 1) -> list[Edge]:
    """U, then U_K + (V minus V^p_K) for odd |K|, then V^p_K + (U minus U_K) for even |K|.

    ``u_offset``/``v_offset`` are the ids of u_1 and v_1; u_i is matched
    with v^p_i.  Output is in generation order and may be fed to
    :meth:`UniformHypergraph.add_edge`.
    """
    if n < 1:
        raise ValueError("cross family needs n >= 1")
    perm = swap_permutation(n, p)
    us = [u_offset + i for i in range(n)]
    vs = [v_offset + perm[i] for i in range(n)]
    all_v = set(vs)
    all_u = set(us)
    edges = [tuple(us)]
    for odd, K in cross_subsets(n):
        if odd:
            picked = [us[i] for i in K]
            edge = picked + sorted(all_v.difference(vs[i] for i in K))
        else:
            picked = [vs[i] for i in K]
            edge = picked + sorted(all_u.difference(us[i] for i in K))
        edges.append(tuple(sorted(edge)))
    return edges


def _check_core(core: UniformHypergraph, n: int) -> None:
    if n < 3:
        raise ValueError(f"target uniformity must be >= 3, got {n}")
    if core.n != n - 2:
        raise HypergraphError(
            f"core must be {n - 2}-uniform for target {n}, got {core.n}-uniform")
    if len(core) == 0:
        raise HypergraphError("core has no edges")


def _paired_core_edges(h: UniformHypergraph, core_edges: list[Edge], x_off: int,
                       u: int, v: int) -> None:
    for e in core_edges:
        h._insert(tuple(sorted((u, v, *(x + x_off for x in e)))))


def aht(core: UniformHypergraph, n: int) -> UniformHypergraph:
    """Pair every core edge with each matching pair (u_i, v_i) and add the cross family."""
    _check_core(core, n)
    h, (x_off, u_off, v_off) = disjoint_union_embed(
        [(Role.CORE, core), (Role.U, n), (Role.V, n)], n, name=f"aht(n={n})")
    core_edges = core.edges
    for i in range(n):
        _paired_core_edges(h, core_edges, x_off, u_off + i, v_off + i)
    for e in cross_family(n, u_off, v_off):
        h._insert(e)
    return h


def swap_construction(core: UniformHypergraph, n: int, with_origin: bool = False):
    """AHT variant that drops pair 1 from the core step and adds the cross
    family of every ordering V^p, p = 1..n.

    With ``with_origin=True`` also return ``{edge: smallest p}`` for the
    cross-family edges.
    """
    _check_core(core, n)
    h, (x_off, u_off, v_off) = disjoint_union_embed(
        [(Role.CORE, core), (Role.U, n), (Role.V, n)], n, name=f"swap(n={n})")
    core_edges = core.edges
    for i in range(1, n):
        _paired_core_edges(h, core_edges, x_off, u_off + i, v_off + i)
    origin: dict[Edge, int] = {}
    for p in range(1, n + 1):
        for e in cross_family(n, u_off, v_off, p):
            origin.setdefault(e, p)
            h._insert(e)
    if with_origin:
        return h, origin
    return h


def layered_construction(core: UniformHypergraph, n: int) -> UniformHypergraph:
    """Core paired with (u'_i, v'_i); the (n-2)-cross family on U', V' extended
    by each pair (u_i, v_i); and the n-cross family on U, V."""
    _check_core(core, n)
    h, (x_off, u_off, v_off, up_off, vp_off) = disjoint_union_embed(
        [(Role.CORE, core), (Role.U, n), (Role.V, n),
         (Role.U_PRIME, n - 2), (Role.V_PRIME, n - 2)], n, name=f"layered(n={n})")
    core_edges = core.edges
    for i in range(n - 2):
        _paired_core_edges(h, core_edges, x_off, up_off + i, vp_off + i)
    inner = cross_family(n - 2, up_off, vp_off)
    for i in range(n):
        for f in inner:
            h._insert(tuple(sorted((u_off + i, v_off + i, *f))))
    for e in cross_family(n, u_off, v_off):
        h._insert(e)
    return h


def product_construction(outer: UniformHypergraph, inner: UniformHypergraph) -> UniformHypergraph:
    """Replace every vertex of ``outer`` by a disjoint copy of ``inner``.

    Copy c sits on vertex c of the outer hypergraph.  Each outer edge
    {x_1..x_a} combined with one inner edge from each of the a copies gives
    an edge; there are |E(outer)| * |E(inner)|^a of them.
    """
    if len(outer) == 0 or len(inner) == 0:
        raise HypergraphError("product needs hypergraphs with at least one edge")
    width = inner.vertex_count
    total = outer.vertex_count * width
    h = UniformHypergraph(outer.n * inner.n, total, core_labels(total),
                          name=f"product({outer.n}x{inner.n})")
    inner_edges = inner.edges
    for e in outer.edges:
        shifted = [[tuple(v + c * width for v in f) for f in inner_edges] for c in e]
        for choice in product(*shifted):
            h._insert(tuple(sorted(v for f in choice for v in f)))
    return h


def m8_construction(a: UniformHypergraph | None = None, b: UniformHypergraph | None = None,
                    c: UniformHypergraph | None = None, with_steps: bool = False):
    """8-uniform non-2-colorable hypergraph with 1269 edges on 47 vertices.

    ``a`` defaults to the 51-edge 5-uniform AHT hypergraph over the Fano
    plane, ``b`` and ``c`` to Fano planes.  With ``with_steps=True`` also
    return the number of new edges contributed by each of the six steps.
    """
    from .atlas import fano

    if a is None:
        a = aht(fano(), 5)
    b = b if b is not None else fano()
    c = c if c is not None else fano()
    if (a.n, b.n, c.n) != (5, 3, 3):
        raise HypergraphError("m8 construction needs a 5-uniform and two 3-uniform parts")
    h, (a_off, b_off, c_off, u_off, v_off) = disjoint_union_embed(
        [(Role.SUB_A, a), (Role.SUB_B, b), (Role.SUB_C, c), (Role.U, 8), (Role.V, 8)],
        8, name="m8")
    ea = [tuple(x + a_off for x in e) for e in a.edges]
    eb = [tuple(x + b_off for x in e) for e in b.edges]
    ec = [tuple(x + c_off for x in e) for e in c.edges]

    steps = [0] * 6

    def add(step: int, edge) -> None:
        steps[step] += h._insert(tuple(sorted(edge)))

    for x in ea:
        for y in eb:
            add(0, x + y)
    for x in ea:
        for y in ec:
            add(1, x + y)
    for i in range(8):
        for y in eb:
            for z in ec:
                add(2, (u_off + i, v_off + i) + y + z)
    family = cross_family(8, u_off, v_off)
    add(3, family[0])
    for e in family[1:]:
        add(4 if len(set(e) & set(range(u_off, u_off + 8))) % 2 else 5, e)
    if with_steps:
        return h, steps
    return h


def observation_one_violations(n: int) -> list[tuple[int, Edge]]:
    """Edges of an ordering p >= 2 containing {u_1, u_p} or {v_1, v_p} that are
    missing from the p = 1 family.  Empty when the observation holds."""
    u_off, v_off = 0, n
    base = set(cross_family(n, u_off, v_off, 1))
    bad = []
    for p in range(2, n + 1):
        u_pair = {u_off, u_off + p - 1}
        v_pair = {v_off, v_off + p - 1}
        for e in cross_family(n, u_off, v_off, p):
            s = set(e)
            if (u_pair <= s or v_pair <= s) and e not in base:
                bad.append((p, e))
    return bad


def swap_new_edge_counts(n: int) -> dict[int, int]:
    """Per ordering p >= 2, the number of its cross-family edges absent from p = 1."""
    base = set(cross_family(n, 0, n, 1))
    return {p: len(set(cross_family(n, 0, n, p)) - base) for p in range(2, n + 1)}


def expected_count(kind: str, n: int, core_edges: int) -> int:
    """Closed-form edge count (upper bound for ``swap``)."""
    return {
        "aht": bounds.aht_count,
        "swap": bounds.swap_bound,
        "layered": bounds.layered_count,
    }[kind](n, core_edges)
