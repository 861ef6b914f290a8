"""Finite diagnostics around homomorphism densities and hypergraph Lagrangians.

Limit objects are never represented; everything here works on one finite
k-graph at a time.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .embeddings import CapExceededError, count_homomorphisms, find_subgraph
from .lagrangian import LagrangianConfig, LagrangianResult, maximize_lagrangian
from .pattern import Hypergraph, hypergraph_pattern

HOM_CAP_F = int(os.environ.get("PATTERN_TURAN_HOM_CAP_F", 7))
HOM_CAP_G = int(os.environ.get("PATTERN_TURAN_HOM_CAP_G", 12))


@dataclass
class DensityReport:
    t_value: Fraction
    hom_count: int
    map_count: int

    def to_dict(self) -> dict:
        return {
            "t_value": float(self.t_value),
            "t_exact": str(self.t_value),
            "hom_count": self.hom_count,
            "map_count": self.map_count,
        }


def hom_density(f: Hypergraph, g: Hypergraph) -> DensityReport:
    """Probability that a uniform map V(f) -> V(g) sends every edge to an edge.

    An edge whose image has fewer than k distinct vertices is not mapped to
    an edge, so such maps never count.
    """
    if f.n > HOM_CAP_F or g.n > HOM_CAP_G:
        raise CapExceededError(f"hom_density caps are v(f) <= {HOM_CAP_F}, v(g) <= {HOM_CAP_G}")
    if f.k != g.k:
        raise ValueError("uniformity mismatch")
    homs = count_homomorphisms(f, g)
    maps = g.n ** f.n
    return DensityReport(Fraction(homs, maps) if maps else Fraction(0), homs, maps)


def edge_hom_density(g: Hypergraph) -> Fraction:
    """t(K_k^k, g) in closed form: k! |g| / v(g)^k."""
    from math import factorial

    return Fraction(factorial(g.k) * len(g), g.n**g.k) if g.n else Fraction(0)


def hypergraph_lagrangian(g: Hypergraph, cfg: LagrangianConfig | None = None) -> LagrangianResult:
    return maximize_lagrangian(hypergraph_pattern(g), cfg)


def ct_gap(g: Hypergraph, cfg: LagrangianConfig | None = None) -> float:
    """Edge density minus Lagrangian, signed."""
    return float(g.density) - hypergraph_lagrangian(g, cfg).value


def ct_condition3_check(g: Hypergraph, family) -> list:
    """Members denser (in t(K_k^k, .)) than g's edge density that still occur in g."""
    rho = g.density
    return [F for F in family if edge_hom_density(F) > rho and find_subgraph(F, g) is not None]
