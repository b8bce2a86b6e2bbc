"""Evaluation metrics for entity-resolution clusterings."""
from .cluster import ClusterScores, closest_cluster, cluster_scores, exact_cluster, jaccard, purity_family
from .core import (AlignedPair, Clustering, Overlap, align, build_clustering, inter_pair_count,
                   intra_pair_count, overlap, overlap_of)
from .errors import (ConflictingAssignment, EmptyClustering, ErMetricsError, ParseError,
                     Unsatisfiable, UniverseMismatch)
from .files import parse_clustering_file, write_clustering
from .gmd import (CostFamily, GmdConfig, decomposition_cost, family_cost, gmd, pairwise_via_gmd,
                  vi_via_gmd)
from .info import (InfoScores, conditional_entropy, homogeneity_completeness, info_scores,
                   marginal_entropy, v_measure, variation_of_information)
from .pairwise import PairwiseScores, pairwise, shared_pair_count
from .rank import RankComparison, rank_compare, split_vs_merge
from .report import METRICS, EvalOptions, MetricReport, evaluate
from .synth import PerturbationLog, perturb, random_partition

__version__ = "0.1.0"
