"""Community structure characterisation on a transitivity x hub-dominance map."""
from .graph import (CommunityView, Graph, LoadReport, community_view, connected_components,
                    from_edges, load_edge_list, parse_edge_list, write_edge_list)
from .partition import Partition

__version__ = "0.1.0"

__all__ = [
    "CommunityView", "Graph", "LoadReport", "Partition", "community_view",
    "connected_components", "from_edges", "load_edge_list", "parse_edge_list",
    "write_edge_list", "__version__",
]
