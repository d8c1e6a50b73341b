"""Exact two-parameter source-sink monotone max flow / min cut.

Builds the recursive family whose 2^n cuts are each a unique min cut
somewhere in the (lam, mu) unit square, certifies those cuts, and maps the
min-cut cells of arbitrary small networks.
"""
from .cells import (
    Box,
    CellDiagram,
    ConvexPolygon,
    SweepResult,
    cell_of,
    count_distinct_min_cuts,
    enumerate_cells,
    northeast_sweep,
)
from .certify import ScsReport, VerificationReport, check_feasible, check_scs, verify_growth_bounds, verify_theorem_main
from .construction import (
    Certificate,
    FamilyConstants,
    LimitExceeded,
    build_family,
    family_constants,
    family_flow,
    family_network,
    family_point,
)
from .core import (
    AffineExpr,
    Arc,
    CutSet,
    ParamNetwork,
    ParamPoint,
    SsmClass,
    affine_eval,
    arc_count_nonzero,
    cut_capacity,
    cut_capacity_affine,
    rat_cmp,
    validate_ssm,
)
from .maxflow import FlowResult, brute_force_min_cuts, max_flow, unique_min_cut

__version__ = "0.1.0"
