"""Ologs: finitely presented categories with labeled types and aspects,
path-equation facts, sketch annotations, instance data, and information flow.
"""

from .core import (
    Aspect,
    Fact,
    Graph,
    Path,
    Specification,
    TypeNode,
    compose_paths,
    enumerate_paths,
    format_fact,
    format_path,
    identity_path,
    relation_to_span,
    validate_specification,
)
from .entail import (
    DEFAULT_BOUND,
    ENTAILED,
    NOT_DERIVABLE,
    Congruence,
    consequence,
    entails,
    enumerate_equations,
    saturate,
    spec_leq,
)
from .errors import OlogError
from .flow import (
    GraphMorphism,
    dir_flow,
    identity_morphism,
    inv_flow,
    is_spec_morphism,
    lot_analogy,
    lot_contract,
    lot_expand,
    lot_revise,
    pullback_instances,
    translate_fact,
    translate_path,
)
from .instances import (
    KeyDiagram,
    SatisfactionReport,
    eval_path,
    intent,
    key_diagram,
    load_instances,
    satisfies_fact,
    satisfies_spec,
)
from .system import (
    Channel,
    DistributedSystem,
    InformationSystem,
    Shape,
    SystemMorphism,
    check_channel_cover,
    check_refinement,
    check_system_morphism,
    fusion,
    induced_refinement,
    optimal_channel,
    system_consequence,
)

__version__ = "0.1.0"

__all__ = [
    "Aspect",
    "Channel",
    "Congruence",
    "DEFAULT_BOUND",
    "DistributedSystem",
    "ENTAILED",
    "Fact",
    "Graph",
    "GraphMorphism",
    "InformationSystem",
    "KeyDiagram",
    "NOT_DERIVABLE",
    "OlogError",
    "Path",
    "SatisfactionReport",
    "Shape",
    "Specification",
    "SystemMorphism",
    "TypeNode",
    "check_channel_cover",
    "check_refinement",
    "check_system_morphism",
    "compose_paths",
    "consequence",
    "dir_flow",
    "entails",
    "enumerate_equations",
    "enumerate_paths",
    "eval_path",
    "format_fact",
    "format_path",
    "fusion",
    "identity_morphism",
    "identity_path",
    "induced_refinement",
    "intent",
    "inv_flow",
    "is_spec_morphism",
    "key_diagram",
    "load_instances",
    "lot_analogy",
    "lot_contract",
    "lot_expand",
    "lot_revise",
    "optimal_channel",
    "pullback_instances",
    "relation_to_span",
    "satisfies_fact",
    "satisfies_spec",
    "saturate",
    "spec_leq",
    "system_consequence",
    "translate_fact",
    "translate_path",
    "validate_specification",
    "__version__",
]
