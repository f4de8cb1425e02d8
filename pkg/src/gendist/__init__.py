"""Generator distances between finite algebras.

The main entry points are :func:`distance` for finite monounary algebras,
:func:`build_subalgebra_network` for operation-table algebras and
:func:`qz_distance` for subgroups of Q/Z given by choice sequences.
"""

__version__ = "0.1.0"

from .algebra import FiniteAlgebra, SubUniverse, builtin, closure, enumerate_subalgebras, fa_isomorphic, is_large_subalgebra, parse_fa
from .distance import connected_distance, distance, forest_distance, is_largely_embeddable, push_up_witness, tree_distance
from .errors import ContractViolation, ParseError
from .monounary import MonoAlg, canonical_code, is_isomorphic, mgen, parse_mua
from .network import Network, build_monounary_network, build_subalgebra_network, component_diameter, export_dot, network_distance, oracle_distance
from .qz import ChoiceSeq, parse_choice_seq, qz_diameter, qz_distance

__all__ = [
    "ChoiceSeq",
    "ContractViolation",
    "FiniteAlgebra",
    "MonoAlg",
    "Network",
    "ParseError",
    "SubUniverse",
    "build_monounary_network",
    "build_subalgebra_network",
    "builtin",
    "canonical_code",
    "closure",
    "component_diameter",
    "connected_distance",
    "distance",
    "enumerate_subalgebras",
    "export_dot",
    "fa_isomorphic",
    "forest_distance",
    "is_isomorphic",
    "is_large_subalgebra",
    "is_largely_embeddable",
    "mgen",
    "network_distance",
    "oracle_distance",
    "parse_choice_seq",
    "parse_fa",
    "parse_mua",
    "push_up_witness",
    "qz_diameter",
    "qz_distance",
    "tree_distance",
]
