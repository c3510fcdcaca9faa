"""Sequent proofs of nonsymmetric multiplicative linear logic as
combinatorial 3d surface diagrams."""

from .formulas import (
    Atom, Formula, Par, ParseError, Sequent, StarL, StarR, Tensor, UnitBot,
    UnitI, hom_left, hom_right, parse_formula, parse_sequent, print_formula,
    print_sequent,
)
from .proofs import (
    Proof, RuleError, apply_rule, axiom, cut, expand_derived, make,
    open_premises, parse_proof, premise, print_proof, validate_proof,
)
from .diagrams import (
    Diagram2, DiagramError, canonical_label, interface, is_simple, iso_equal,
    match_subdiagram, sequent_diagram, sequent_to_diagram, signature,
)
from .surfaces import (
    Event, Surface, SurfaceError, apply_event, bottom_slice,
    canonical_event_order, compose_vertical, identity_surface, juxtapose,
    surface_key, validate_surface,
)
from .compiler import CompileError, axiom_surface, compile_proof, cut_surface
from .equivalence import (
    Move, MoveError, Verdict, Witness, apply_move, check_witness,
    coherence_normalize, decide, equivalent, normalize, snake_reduce,
)
from .proofnets import ProofNet, ProjectionError, emit_net, project

__all__ = [name for name in dir() if not name.startswith("_")]
