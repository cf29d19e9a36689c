"""Exact-arithmetic analysis of additive group actions on complete toric
varieties, working from the rays of their fans: Demazure root enumeration,
existence and uniqueness verdicts, and explicit witness derivations when
the action is not unique."""

from .analyze import Analysis, analyze, verify_consistency
from .cox import (
    Derivation,
    Poly,
    apply,
    commutator,
    exponentiate,
    homogeneous_component,
    is_locally_nilpotent,
    root_derivation,
)
from .errors import (
    DegenerateSystemError,
    DimensionError,
    InfiniteRootSetError,
    InputError,
    InternalInvariantError,
    NoAdditiveActionError,
    ToricError,
    UniquenessHoldsError,
)
from .fanfile import FanFile, fan_to_text, parse_fan_file
from .fixtures import FIXTURES, fixture, fixture_names, write_fixtures
from .lattice import (
    Basis,
    basis_coordinates,
    det,
    dual_basis,
    is_lattice_basis,
    pairing,
    primitive,
)
from .rays import (
    AdditiveStructure,
    DegreeMap,
    PreorderSummary,
    RaySystem,
    additive_bases,
    degree_map,
    detect_additive_structure,
    positively_spanning,
    ray_preorder,
)
from .report import emit_report, load_report, report_dict, render_text
from .roots import (
    CompleteCollection,
    DemazureRoot,
    RootCatalog,
    brute_force_roots,
    complete_collections,
    enumerate_roots,
    positive_system,
    unipotent_dimension,
)
from .uniqueness import (
    UniquenessVerdict,
    dimension_criterion,
    projection_wideness_all_pairs,
    surface_wideness,
    uniqueness_verdict,
)
from .witness import (
    DerivationTuple,
    SeparationCertificate,
    WitnessData,
    annihilator_rank,
    build_witness_tuples,
    certify_tuple,
    minor_equations,
    separating_invariant,
    verify_additive_tuple,
)

__version__ = "0.1.0"
