"""Exact genetic and evolution algebras of Gibbs measures on lattice spin systems."""

from .clusters import (AtomicPartition, BlockPartition, FiniteListPartition, UniquePartition, UnionPartition,
                       clusters_meeting, offspring)
from .errors import (ClassMismatch, GibbsAlgebraError, IncompatibleTransform, InfiniteRange, NotFertile,
                     NotOffspring, ParseError, SpinMismatch, SupportTooLarge, TooLarge, UnknownSuite,
                     UnsupportedTail, ValidationError)
from .evolution import (PairElement, check_iso_coefficients, evo_coefficient_matrix, evo_product,
                        fertile_ideal_iso_inverse, fertile_ideal_iso_map, is_idempotent, is_markov_pair)
from .genetic import (AlgebraElement, associator, coefficient_vector, embed_finite_subalgebra,
                      express_in_principal_ideal, fertile_class_id, pi_functional, product)
from .lattice import Configuration, Lattice, PeriodicTail, SpinSet, discrepancy, tails_agree_cofinitely
from .model import GibbsModel, ising_model, potts_model, star_model, translation_example_model
from .oracle import FiniteModel, compare_finite_equivalence, enumeration_cap, gibbs_conditional
from .potential import (INFINITE, direct_sum_potentials, ising_potential, potts_potential, shift_potential,
                        tau_image_potential)
from .spec_io import parse_model_data, parse_model_spec
from .suites import Report, run_suite
from .transforms import TauTransform, apply_tau, build_product_model, transform_model

__version__ = "0.1.0"
