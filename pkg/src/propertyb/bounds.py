"""Closed-form edge counts of the recursive constructions.

Each function takes the target uniformity ``n`` and the edge count of the
(n-2)-uniform core (or of the factors) and returns the number of edges the
corresponding construction produces.  These double as the upper-bound
recurrences for m(n).
"""

from math import comb


def cross_family_size(n: int) -> int:
    """Edges U, U_K + V-bar_K (|K| odd) and V_K + U-bar_K (|K| even), |K| <= n/2."""
    return 1 + sum(comb(n, k) for k in range(1, n // 2 + 1))


def aht_count(n: int, core_edges: int) -> int:
    if n % 2:
        return 2 ** (n - 1) + n * core_edges
    return 2 ** (n - 1) + comb(n, n // 2) // 2 + n * core_edges


def swap_bound(n: int, core_edges: int) -> int:
    """Upper bound on the distinct edge count of the swap construction."""
    if n % 2:
        return (n + 1) * 2 ** (n - 2) + (n - 1) * core_edges
    return ((n + 1) * 2 ** (n - 2) + comb(n, n // 2) // 2
            + (n - 1) * (core_edges + comb(n - 2, (n - 2) // 2)))


def swap_naive_count(n: int, core_edges: int) -> int:
    """Edge count before any duplicate removal across orderings."""
    return n * cross_family_size(n) - (n - 1) + (n - 1) * core_edges


def swap_new_edges_per_ordering(n: int) -> int:
    """Bound on edges an ordering p >= 2 adds beyond the p = 1 family."""
    return 2 * sum(comb(n - 2, k) for k in range((n - 2) // 2 + 1))


def layered_count(n: int, core_edges: int) -> int:
    if n % 2:
        return (n + 4) * 2 ** (n - 3) + (n - 2) * core_edges
    return ((n + 4) * 2 ** (n - 3) + n * comb(n - 2, (n - 2) // 2) // 2
            + comb(n, n // 2) // 2 + (n - 2) * core_edges)


def product_count(outer_edges: int, inner_edges: int, a: int) -> int:
    """Edges of the product of an a-uniform outer and a b-uniform inner hypergraph."""
    return outer_edges * inner_edges ** a


M8_STEP_NAMES = ("A+B", "A+C", "pair+B+C", "U", "cross")


def m8_step_counts(m5: int = 51, m3: int = 7) -> tuple[int, ...]:
    return (m5 * m3, m5 * m3, 8 * m3 * m3, 1, sum(comb(8, k) for k in range(1, 5)))


def m8_count(m5: int = 51, m3: int = 7) -> int:
    return sum(m8_step_counts(m5, m3))
