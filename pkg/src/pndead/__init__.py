"""Dead places, dead transitions and concurrent places of place/transition nets."""

from .analysis import AnalysisReport, StructuralFacts, analyze, is_quasi_live, structural_dead
from .codec import compress, decompress, read_matrix, read_vector, write_matrix, write_vector
from .explicit import Budget, Observations, explore, visited_count
from .net import Marking, PetriNet, build_net, enabled, fire, preset
from .netio import format_text, load, parse, parse_pnml, parse_text
from .tristate import TriState

__all__ = [
    "AnalysisReport", "Budget", "Marking", "Observations", "PetriNet", "StructuralFacts", "TriState",
    "analyze", "build_net", "compress", "decompress", "enabled", "explore", "fire", "format_text",
    "is_quasi_live", "load", "parse", "parse_pnml", "parse_text", "preset", "read_matrix",
    "read_vector", "structural_dead", "visited_count", "write_matrix", "write_vector",
]
