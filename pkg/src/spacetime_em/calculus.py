"""
Fields on Minkowski spacetime and the operators d, delta and the Dirac
operator ``gamma^mu d/dx^mu``, evaluated by central differences or from
user-supplied exact partial derivatives.

Points are arrays ``(x^0, x^1, x^2, x^3)`` with ``x^0 = t`` and ``c = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, NumericError
from .forms import POSITIVE, PairForm, pair_hodge, pair_hodge_inverse
from .kernel import Multivector, gamma, grade_project

__all__ = [
    "StencilConfig", "FieldMap", "DEFAULT_STENCIL",
    "partial", "gradient", "dirac", "exterior_d", "coderivative", "coderivative_hodge",
]


@dataclass(frozen=True)
class StencilConfig:
    """Central-difference step ``h`` and order (2 or 4)."""

    h: float = 1e-3
    order: int = 2

    def __post_init__(self):
        if not (np.isfinite(self.h) and self.h > 0):
            raise ValueError("stencil step h must be positive and finite")
        if self.order not in (2, 4):
            raise ValueError("stencil order must be 2 or 4")

    @property
    def reach(self):
        return self.h * (1 if self.order == 2 else 2)


DEFAULT_STENCIL = StencilConfig()

_WEIGHTS = {
    2: ((1, 0.5), (-1, -0.5)),
    4: ((2, -1 / 12), (1, 8 / 12), (-1, -8 / 12), (-2, 1 / 12)),
}


@dataclass(frozen=True)
class FieldMap:
    """A multivector-valued field ``x -> Multivector``.

    ``exact_partials(x)``, when given, returns the four partial derivatives
    ``d/dx^mu`` and is used instead of finite differences. ``domain(x)``
    returns False where the field may not be sampled. ``grade`` declares the
    homogeneous grade of a form field.
    """

    func: Callable
    exact_partials: Optional[Callable] = None
    domain: Optional[Callable] = None
    grade: Optional[int] = None

    def __call__(self, x):
        x = _point(x)
        if self.domain is not None and not self.domain(x):
            raise DomainError(f"field sampled outside its domain at {x}")
        value = self.func(x)
        return value if isinstance(value, Multivector) else Multivector(value)

    def map(self, linear, grade=None):
        """Compose with a pointwise linear map; exact partials are carried through."""
        partials = None
        if self.exact_partials is not None:
            partials = lambda x: [linear(d) for d in self.exact_partials(_point(x))]
        return FieldMap(lambda x: linear(self(x)), partials, self.domain, grade)

    def __neg__(self):
        return self.map(lambda v: -v, self.grade)

    def __add__(self, other):
        partials = None
        if self.exact_partials is not None and other.exact_partials is not None:
            partials = lambda x: [a + b for a, b in zip(self.exact_partials(x), other.exact_partials(x))]

        def domain(x):
            return (self.domain is None or self.domain(x)) and (other.domain is None or other.domain(x))

        grade = self.grade if self.grade == other.grade else None
        return FieldMap(lambda x: self(x) + other(x), partials, domain, grade)

    @classmethod
    def constant(cls, value, grade=None):
        value = value if isinstance(value, Multivector) else Multivector(value)
        zero = Multivector.zero()
        return cls(lambda x: value, lambda x: [zero] * 4, None, grade)


def _point(x):
    x = np.asarray(x, dtype=float)
    if x.shape != (4,):
        raise ValueError(f"spacetime point must have 4 coordinates, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NumericError("spacetime point must be finite")
    return x


def partial(field, mu, point, stencil=None):
    """Partial derivative ``d field / d x^mu`` at ``point``."""
    point = _point(point)
    if field.exact_partials is not None:
        return field.exact_partials(point)[mu]
    stencil = stencil or DEFAULT_STENCIL
    step = np.zeros(4)
    step[mu] = stencil.h
    acc = np.zeros(16)
    for k, w in _WEIGHTS[stencil.order]:
        acc = acc + w * field(point + k * step).coeffs
    return Multivector(acc / stencil.h)


def gradient(field, point, stencil=None):
    """All four partials as a list ``[d_0 F, ..., d_3 F]``."""
    point = _point(point)
    if field.exact_partials is not None:
        return list(field.exact_partials(point))
    return [partial(field, mu, point, stencil) for mu in range(4)]


def _dirac_from(partials):
    out = Multivector.zero()
    for mu, d in enumerate(partials):
        out = out + gamma(mu) * d
    return out


def dirac(field, point, stencil=None):
    """``gamma^mu d_mu F`` at ``point``."""
    return _dirac_from(gradient(field, point, stencil))


def _field_grade(field, point, grade):
    if grade is not None:
        return grade
    if field.grade is not None:
        return field.grade
    value = field(point)
    scale = max(1.0, float(np.max(np.abs(value.coeffs), initial=0.0)))
    present = value.grades(1e-12 * scale)
    if len(present) > 1:
        raise ValueError(f"field is not grade-homogeneous at {point}: grades {sorted(present)}")
    if not present:
        raise ValueError("field vanishes at the point; pass its grade explicitly")
    return present.pop()


def exterior_d(field, point, stencil=None, grade=None):
    """``dA`` for a p-form field: the grade p+1 part of the Dirac operator."""
    p = _field_grade(field, point, grade)
    if p == 4:
        return PairForm(Multivector.zero(), 4)
    return PairForm(grade_project(dirac(field, point, stencil), p + 1), p + 1)


def coderivative(field, point, stencil=None, grade=None):
    """``delta A`` for a p-form field: minus the grade p-1 part of the Dirac operator."""
    p = _field_grade(field, point, grade)
    if p == 0:
        return PairForm(Multivector.zero(), 0)
    return PairForm(-grade_project(dirac(field, point, stencil), p - 1), p - 1)


def coderivative_hodge(field, point, stencil=None, grade=None, tau=POSITIVE):
    """``delta A = (-1)^p star^-1 d star A``, computed through the Hodge star."""
    p = _field_grade(field, point, grade)
    if p == 0:
        return PairForm(Multivector.zero(), 0)
    starred = field.map(lambda v: pair_hodge(PairForm(v, p), tau), 4 - p)
    d_star = exterior_d(starred, point, stencil, grade=4 - p)
    return PairForm((-1) ** p * pair_hodge_inverse(d_star, tau).coeffs, p - 1)
