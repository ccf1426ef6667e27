"""nbcc: a desk-scale laboratory for neighborhood clique cover numbers over
shallow graph minors.

The central parameter: take every depth-t minor H of a graph (contract
disjoint connected branch sets of radius at most t, delete vertices), take
the cheapest clique cover of any closed vertex neighborhood in H, and record
the worst case over all H. The package computes this exactly at small sizes,
alongside grad (max minor edge density), exact clique covers and independent
sets, generators for the graph classes of interest, geometric fat-object
scenes, and a fuzzing harness that verifies the structural inequalities
relating all of these.
"""

from .errors import InputError, ModelError, PreconditionError, SizeError
from .graph_core import (Graph, closed_neighborhood, complement,
                         connected_components, degeneracy, diameter_within,
                         graph_from_json_dict, graph_to_json_dict,
                         induced_subgraph, new_graph, radius_within,
                         read_dimacs, vertex_set, write_dimacs)
from .clique_cover import (CliqueCover, beta_tilde, exact_clique_cover,
                           greedy_clique_cover, verify_cover)
from .shallow_minor import (BetaHatWitness, MinorModel, beta_hat,
                            canonical_key, enumerate_minor_models, grad,
                            grad_hat, largest_clique_minor,
                            largest_star_minor, make_minor_model, quotient,
                            validate_model)
from .graph_families import (PosetInstance, gen_chordal, gen_erdos_renyi,
                             gen_family, gen_interval, gen_named,
                             gen_poset_incomparability, is_chordal,
                             make_poset, mirsky_clique_cover)
from .bounds_and_theorems import (CheckReport, PeelResult, check_peel,
                                  check_thm1_chordal,
                                  check_thm1_incomparability, check_thm2,
                                  check_thm3, peel_clique_cover, run_check,
                                  run_fuzz)
from .geometry import (AxisBox, Ball, FatScene, UnionGroup, cluster_union,
                       estimate_fatness, gen_scene, intersection_graph,
                       intersects, object_size, piercing_number)
from .separator_lab import (ConjectureInstance, SeparatorResult,
                            alpha_measure, conjecture_report,
                            find_alpha_separator, geometric_cut_separator,
                            max_independent_set)
from .rng import SplitMix64, derive_seeds

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
