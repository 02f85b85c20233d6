"""threshlab: subgraph expectation thresholds, spread certificates, and
Monte Carlo critical probabilities for small patterns in G(n,p)."""

from .census import LogScaledCount, SubgraphClass, copies_in_complete, subgraph_census
from .errors import CapacityError, InfeasibleError, InputError, ThreshlabError
from .graphs import (
    CanonicalForm,
    Graph,
    automorphism_count,
    canonical_form,
    contains_embedding,
    count_embeddings,
    edge_induced_subgraph,
    stripped,
)
from .graphio import parse_graph, serialize_graph
from .mclab import (
    PcEstimate,
    contains_copy,
    estimate_pc,
    exact_containment_probability,
    exact_pc,
    sample_gnp,
)
from .spread import SpreadCertificate, empirical_containment_rate, max_spread, verify_spread_certificate
from .thresholds import ThresholdReport, compute_thresholds, expectation_value
from .families import FamilySpec, analytic_census_cycle, analytic_census_matching, make_family, scaling_table

__all__ = [
    "CanonicalForm",
    "CapacityError",
    "FamilySpec",
    "Graph",
    "InfeasibleError",
    "InputError",
    "LogScaledCount",
    "PcEstimate",
    "SpreadCertificate",
    "SubgraphClass",
    "ThresholdReport",
    "ThreshlabError",
    "analytic_census_cycle",
    "analytic_census_matching",
    "automorphism_count",
    "canonical_form",
    "compute_thresholds",
    "contains_copy",
    "contains_embedding",
    "copies_in_complete",
    "count_embeddings",
    "edge_induced_subgraph",
    "empirical_containment_rate",
    "estimate_pc",
    "exact_containment_probability",
    "exact_pc",
    "expectation_value",
    "make_family",
    "max_spread",
    "parse_graph",
    "sample_gnp",
    "scaling_table",
    "serialize_graph",
    "stripped",
    "subgraph_census",
    "verify_spread_certificate",
]
