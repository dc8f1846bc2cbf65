"""pebbletk: pebble transducers, factorization forests, pumpability and
recursion-height minimization."""

from .errors import (AlphabetError, BudgetExceeded, DivergenceError,
                     ExplicationError, MachineError, ParseError,
                     PebbletkError, PumpableViolation, RejectionError,
                     SemanticError)
from .monoid import (Context, FiniteMonoid, MonoidMorphism, eval_morphism,
                     image_submonoid, is_idempotent, make_monoid,
                     make_morphism, product_morphism)
from .twoway import (Run, TwoWayTransducer, crossing_sequence, make_transducer,
                     output, production, production_on_context, run,
                     transition_morphism)
from .pebble import (BLIND, LAST, LASTLAST, MarkedWord, PebbleMachine,
                     eval_blind, eval_last, eval_lastlast, height, mark)

__all__ = [n for n in dir() if not n.startswith("_")]
