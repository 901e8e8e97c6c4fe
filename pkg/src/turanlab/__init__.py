"""Exact desk-scale laboratory for generalized Turán problems."""

__version__ = "0.1.0"

from .canon import CanonicalForm, automorphism_count, canonical_form, cert, is_isomorphic  # noqa: E402
from .chromatic import (  # noqa: E402
    ColoringPartition,
    chromatic_number,
    color_critical_edges,
    color_critical_vertices,
    has_unique_proper_coloring,
    proper_partitions,
)
from .counting import CopyCount, count_cliques, count_copies, count_copies_intersecting, is_free  # noqa: E402
from .errors import CapacityError, CapExceeded, Graph6Error, InputError, PreconditionError  # noqa: E402
from .extremal import ExtremalReport, Verdict, enumerate_free, ex_value, turan_count, turan_good_verdict  # noqa: E402
from .families import FamilySpec, build, parse_family, parse_graph  # noqa: E402
from .graph import Graph, disjoint_union, induced_subgraph, join  # noqa: E402
from .graph6 import from_graph6, to_graph6  # noqa: E402
from .hypotheses import (  # noqa: E402
    AttachmentSpec,
    HypothesisVerdict,
    build_attachment,
    check_critical_edge_preconditions,
    check_gpl,
    check_newturgoo,
    compl_instance,
    ma_qiu_good,
)
