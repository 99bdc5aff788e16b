"""Exact kernel for SL(n) webs, cobwebs, and the state-sum map between them."""

from .scalar import LaurentScalar, quantum_integer
from .diagram import Layer, LinComb, SlicedDiagram, StrandEnd
from .cobweb import CobwebInvariant, Root, apply_relation, evaluate, reduce_oracle
from .statesum import State, cable, enumerate_states, map_web
from .web import delete_n_strands, relation_instances
from .verify import (fuzz_invariance, verify_catalog, verify_consequences,
                     verify_double_square, verify_relation, verify_symmetry)

__all__ = [
    "LaurentScalar", "quantum_integer",
    "Layer", "LinComb", "SlicedDiagram", "StrandEnd",
    "CobwebInvariant", "Root", "apply_relation", "evaluate", "reduce_oracle",
    "State", "cable", "enumerate_states", "map_web",
    "delete_n_strands", "relation_instances",
    "fuzz_invariance", "verify_catalog", "verify_consequences",
    "verify_double_square", "verify_relation", "verify_symmetry",
]

__version__ = "0.1.0"
