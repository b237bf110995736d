"""Temporal link prediction: popularity and similarity scores on time-weighted networks."""

from .graph import (IngestError, TemporalEdgeList, TimeWeightParams, build_adjacency,
                    common_neighbor_weight, degrees, ingest_edges, normalize_times, time_weight)
from .scorers import (METHODS, QueryPairSet, score_aa, score_batch, score_cn, score_l3,
                      score_pa, score_ra)
from .evaluation import (auc, classify_pairs, combine, normalize_scores, optimize_epsilon,
                         optimize_theta)
from .analysis import degree_histogram, fit_power_law
from .synthgen import GrowthParams, generate_pa_network, make_benchmark

__version__ = "0.1.0"
