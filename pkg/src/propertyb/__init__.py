"""Explicit non-2-colorable uniform hypergraphs and their verification."""

from .atlas import BoundEntry, Rule, best_bound, best_construction, fano, optimal_bound, single_vertex, table_entry, triangle
from .cnf import CnfFormula, SolveResult, Status, dpll_solve, parse_dimacs, solve_external, to_monotone_cnf, write_dimacs
from .constructions import aht, cross_family, layered_construction, m8_construction, product_construction, swap_construction
from .hypergraph import HypergraphError, Role, UniformHypergraph, VertexLabel, disjoint_union_embed
from .verifier import Verdict, find_proper_coloring, lemma1_condition_holds, minimality_probe, monochromatic_edge, verify_lemma1

__version__ = "0.1.0"
