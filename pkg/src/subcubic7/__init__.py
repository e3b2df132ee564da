"""Verification toolkit for 7-coloring squares of subcubic planar graphs.

The toolkit re-establishes mechanically that the square of every subcubic
planar graph is 7-colorable:

* ``configs`` rebuilds the 31 reducible configurations from a compact
  notation and prepares the squared, augmented instance graphs.
* ``engine`` decides precoloring extension with a canonical backtracking
  search (deterministically partitionable for parallel runs).
* ``reduce`` drives the per-configuration reducibility proofs.
* ``discharge`` checks the face-charge case analysis that makes the
  configuration set unavoidable.
* ``cli`` binds everything into reproducible command-line runs.
"""

from .engine import (
    ALL_EXTENDABLE,
    COUNTEREXAMPLE,
    ColorProblem,
    RootColoring,
    VerificationResult,
    brute_force_oracle,
    chromatic_number_upto,
    enumerate_precolorings,
    extend,
    partition_by_root,
    verify_all,
)
from .graphs import (
    EmbeddedGraph,
    Face,
    Graph,
    GraphError,
    format_graph_text,
    is_cubic,
    is_planar,
    is_subcubic,
    parse_graph_text,
    square,
)
from .configs import build_configuration, build_J, catalog, catalog_names
from .reduce import ReductionRecord, verify_configuration
from .discharge import (
    check_large_faces,
    check_unavoidability,
    discharge_graph,
    total_charge_check,
)

__version__ = "1.0.0"
