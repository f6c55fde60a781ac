"""Pultr templates on digraphs: left and central functors, right adjoints,
and brute-force homomorphism tools to audit them on small digraphs."""

from .digraph import (
    Digraph,
    VertexPartition,
    directed_path,
    disjoint_union,
    emit_digraph,
    induced_subgraph,
    is_oriented_tree,
    parse_digraph,
    quotient,
)
from .errors import (
    ConstructionError,
    DigraphParseError,
    InvalidPartitionError,
    InvalidTemplateError,
    PreconditionError,
    PultrError,
    ResourceLimitError,
)
from .hom import (
    Homomorphism,
    core,
    enumerate_homs,
    equiv_to_tree,
    hom_equivalent,
    hom_exists,
    rrightarrow,
)
from .templates import PultrTemplate, load_template, parse_template, emit_template, validate_template
from .functors import arc_graph, compose_templates, gamma_apply, lambda_apply

__version__ = "0.1.0"
