"""Grid-diagram link Floer homology (tilde flavor) and the transverse
invariant theta, with pentagon chain maps realizing crossing resolutions."""

from .braid import (BraidWord, ComponentPartition, SelfLinkingData,
                    algebraic_length, component_partition, conjugate,
                    connected_sum_word, destabilize, exchange_move,
                    negative_flype_pair, parse_word, quasipositive_witness,
                    resolve_positive_letter, restrict_to_strands, self_linking,
                    self_linking_data, stabilize, translate_psi)
from .config import RunConfig
from .errors import (GridThetaError, InputError, InternalInvariantError,
                     NotACycleError, ResourceCapError)
from .grid import (GridDiagram, GridState, braid_to_grid, format_grid,
                   grid_to_braid, lookup_example, named_examples, parse_grid,
                   validate, z_plus)
from .homology import (Bigrading, Rect, SparseBitMatrix, UMonomial,
                       empty_rectangles, enumerate_states, gradings,
                       homology_ranks, is_boundary, minus_differential,
                       rectangles, tilde_differential)
from .pentagon import (Pentagon, ResolutionPair, build_resolution,
                       compose_resolutions, comultiplication_check, pentagons,
                       phi_tilde, verify_theta_pentagon)
from .transverse import (ThetaCertificate, check_negative_stabilization,
                         check_nonzero_propagation, theta,
                         theta_alexander_consistency)

__version__ = "0.1.0"
