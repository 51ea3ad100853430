"""Adinkra graphs: chromotopologies, height patterns, and their superfield side.

The package splits along the objects it manipulates:

* :mod:`adinkra.core` defines topologies, edge parity, height patterns, and
  the engineerability test for orientations.
* :mod:`adinkra.cube` builds color cubes and the four-color antipodal
  quotient.
* :mod:`adinkra.hanging` rehangs a topology from chosen extreme vertices.
* :mod:`adinkra.mutation` raises and lowers vertices, enumerates families,
  traces raising sequences, and decides isomorphism.
* :mod:`adinkra.superspace` is an exact symbolic engine for superfields,
  superderivatives, and component transformation rules.
* :mod:`adinkra.constraints` turns derivative batteries into Adinkras and
  constraint systems, and back.
* :mod:`adinkra.document` and :mod:`adinkra.cli` move everything through
  JSON documents and a command line.
"""

from .core import (
    BOSON,
    FERMION,
    Adinkra,
    AdinkraError,
    EngineerResult,
    ParityResult,
    Topology,
    engineerable,
    net_ascent,
    normalize_heights,
    orientation_from_heights,
    parity_violations,
    solve_edge_parity,
    validate_topology,
)
from .cube import (
    SCALAR,
    SPINOR,
    antipodal_quotient,
    cube_signature,
    cube_statistics,
    cube_topology,
    dist0,
    hgt0,
    standard_parity,
    subset_label,
)
from .hanging import SOURCES, TARGETS, HookSet, check_hooks, hang, hooks_of, one_hooked
from .mutation import (
    FamilyGraph,
    SequenceStep,
    SequenceTrace,
    automorphic_dual,
    base_adinkra,
    enumerate_family,
    isomorphic,
    isomorphism_classes,
    kinship_distance,
    lower_vertex,
    lowering_sequence_to_one_hooked,
    main_sequence,
    member_key,
    raise_vertex,
    sources,
    targets,
)
from .superspace import (
    DTAU,
    D,
    Phase,
    Q,
    RuleSet,
    SuperOp,
    SuperfieldExpr,
    anticommutator,
    apply_op,
    check_identity,
    closure_violations,
    descending_product,
    generic_superfield,
    project,
    transformation_rules,
)
from .constraints import (
    Constraint,
    ConstraintSystem,
    Identification,
    SourceSpec,
    check_annihilation,
    dimension_vector,
    emit_constraints,
    format_dimension_vector,
    identify,
    image_adinkra,
    kernel_orders,
    mu,
    verify_presentation,
)
from .document import Document, DocumentError, deserialize, export_dot, serialize

__version__ = "0.1.0"

__all__ = [
    "BOSON",
    "FERMION",
    "SCALAR",
    "SPINOR",
    "SOURCES",
    "TARGETS",
    "Adinkra",
    "AdinkraError",
    "Constraint",
    "ConstraintSystem",
    "D",
    "DTAU",
    "Document",
    "DocumentError",
    "EngineerResult",
    "FamilyGraph",
    "HookSet",
    "Identification",
    "ParityResult",
    "Phase",
    "Q",
    "RuleSet",
    "SequenceStep",
    "SequenceTrace",
    "SourceSpec",
    "SuperOp",
    "SuperfieldExpr",
    "Topology",
    "anticommutator",
    "antipodal_quotient",
    "apply_op",
    "automorphic_dual",
    "base_adinkra",
    "check_annihilation",
    "check_hooks",
    "check_identity",
    "closure_violations",
    "cube_signature",
    "cube_statistics",
    "cube_topology",
    "descending_product",
    "deserialize",
    "dimension_vector",
    "dist0",
    "emit_constraints",
    "engineerable",
    "enumerate_family",
    "export_dot",
    "format_dimension_vector",
    "generic_superfield",
    "hang",
    "hgt0",
    "hooks_of",
    "identify",
    "image_adinkra",
    "isomorphic",
    "isomorphism_classes",
    "kernel_orders",
    "kinship_distance",
    "lower_vertex",
    "lowering_sequence_to_one_hooked",
    "main_sequence",
    "member_key",
    "mu",
    "net_ascent",
    "normalize_heights",
    "one_hooked",
    "orientation_from_heights",
    "parity_violations",
    "project",
    "raise_vertex",
    "serialize",
    "solve_edge_parity",
    "sources",
    "standard_parity",
    "subset_label",
    "targets",
    "transformation_rules",
    "validate_topology",
]
