"""Spacetime algebra Cl(1,3), pair and impair forms, and Maxwell electrodynamics."""

from .errors import DegenerateInputError, DomainError, NumericError
from .kernel import (
    ETA, G5, ONE, Multivector, gamma, gamma_lower, geometric_product, grade_project,
    left_contract, outer, reverse, scalar_product,
)
from .forms import (
    NEGATIVE, POSITIVE, ImpairForm, LinearChart, PairForm, VolumeElement, axion_convert,
    coframe_orientation, impair_hodge, impair_hodge_imp, integrate_in_chart, integrate_top_form,
    orientation_scalar, pair_hodge, pair_hodge_inverse, transform_components,
)
from .calculus import FieldMap, StencilConfig, coderivative, coderivative_hodge, dirac, exterior_d, partial
from .electrodynamics import (
    ConstitutiveTensor, MaxwellResidual, ParticleCurrent, SmoothCurrent, assemble_F, charge_integral,
    constitutive_apply, constitutive_decompose, effective_metric_constitutive, excitation_form,
    gaussian_blob, generalized_residual, maxwell_residual, retarded_field, retarded_potential, split_F,
)
from .mechanics import (
    ChargedParticle, StressEnergy, Worldline, divergence_check, force_density, lorentz_push,
    matter_stress_energy, orientation_flip_experiment, stress_energy, total_momentum,
)
from .pauli import (
    PauliElement, RelativeVector, cross, curl, div, dot, engineering_residuals, flip_spatial_orientation,
    grad, join_EB, split_EB, wedge3,
)

__version__ = "0.1.0"
