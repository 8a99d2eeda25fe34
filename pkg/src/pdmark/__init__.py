"""Shortest-path ranks and edge markings on pushdown configuration graphs."""

__version__ = "0.1.0"

from .pda import (BOTTOM, Config, FormatError, InputContractError, Pda, TransitionRule,
                  builtin_pda, config, parse_config, predecessors, step, successors, validate)
from .fragment import (Bounds, Edge, Fragment, MarkedFragment, decode_fragment, encode_fragment,
                       explore, export_dot)
from .rank import INF, level_sets, mark_fragment, prestar, accepts, rank_of, rank_via_saturation
from .marking import check_well_formed, sample_well_formed
from .gadget import build_gadget

__all__ = [
    "BOTTOM", "Config", "FormatError", "InputContractError", "Pda", "TransitionRule",
    "builtin_pda", "config", "parse_config", "predecessors", "step", "successors", "validate",
    "Bounds", "Edge", "Fragment", "MarkedFragment", "decode_fragment", "encode_fragment",
    "explore", "export_dot",
    "INF", "level_sets", "mark_fragment", "prestar", "accepts", "rank_of", "rank_via_saturation",
    "check_well_formed", "sample_well_formed", "build_gadget",
]
