"""
Pair and impair forms, volume elements, Hodge stars, chart transformation
laws and top-form integration on Minkowski space.

Orientation tags on impair forms are always measured against the fixed
reference ``+gamma^5``; the spacetime orientation chosen for the pair Hodge
star lives in :class:`VolumeElement`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DegenerateInputError, NumericError
from .kernel import G5, GRADE, NBLADES, Multivector, reverse, scalar_product

__all__ = [
    "PairForm", "ImpairForm", "VolumeElement", "LinearChart",
    "POSITIVE", "NEGATIVE", "QUADRATURE_POINTS",
    "as_pair", "coframe_orientation", "pair_hodge", "pair_hodge_inverse",
    "impair_hodge", "impair_hodge_imp", "orientation_scalar", "axion_convert",
    "transform_components", "integrate_top_form", "integrate_in_chart",
]

QUADRATURE_POINTS = 32
_HOMOGENEITY_TOL = 1e-12


class PairForm(Multivector):
    """A grade-homogeneous multivector, i.e. an ordinary p-form."""

    __slots__ = ("_grade",)

    def __init__(self, value, grade):
        value = value.coeffs if isinstance(value, Multivector) else np.asarray(value, dtype=float)
        if not isinstance(grade, (int, np.integer)) or not 0 <= grade <= 4:
            raise ValueError(f"grade must be in 0..4, got {grade!r}")
        stray = np.where(GRADE == grade, 0.0, value)
        scale = max(1.0, float(np.max(np.abs(value), initial=0.0)))
        if np.max(np.abs(stray), initial=0.0) > _HOMOGENEITY_TOL * scale:
            raise ValueError(f"value is not homogeneous of grade {grade}")
        super().__init__(np.where(GRADE == grade, value, 0.0))
        object.__setattr__(self, "_grade", int(grade))

    @property
    def degree(self):
        return self._grade

    @property
    def value(self):
        return Multivector(self.coeffs)

    @classmethod
    def infer(cls, value, tol=_HOMOGENEITY_TOL):
        """Wrap ``value`` as a PairForm, inferring its single grade."""
        value = value if isinstance(value, Multivector) else Multivector(value)
        present = value.grades(tol * max(1.0, float(np.max(np.abs(value.coeffs), initial=0.0))))
        if len(present) > 1:
            raise ValueError(f"multivector mixes grades {sorted(present)}")
        return cls(value, present.pop() if present else 0)

    def __repr__(self):
        return f"PairForm(grade={self._grade}, {Multivector.__repr__(self)})"


def as_pair(a, grade=None):
    if isinstance(a, PairForm) and (grade is None or a.degree == grade):
        return a
    if grade is None:
        return PairForm.infer(a)
    return PairForm(a, grade)


@dataclass(frozen=True, eq=False)
class ImpairForm:
    """Equivalence class of (representative, coframe orientation) pairs.

    ``(rep, o)`` and ``(-rep, -o)`` denote the same impair form; comparisons
    go through :attr:`canonical`, the representative in a positively oriented
    coframe.
    """

    representative: PairForm
    orientation: int = 1

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if not isinstance(self.representative, PairForm):
            object.__setattr__(self, "representative", as_pair(self.representative))

    @property
    def degree(self):
        return self.representative.degree

    @property
    def canonical(self):
        return PairForm(self.orientation * self.representative.coeffs, self.degree)

    def in_chart(self, orientation):
        """The equivalent pair whose representative is expressed in a coframe of the given orientation."""
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        return ImpairForm(PairForm(orientation * self.canonical.coeffs, self.degree), orientation)

    def __eq__(self, other):
        if not isinstance(other, ImpairForm):
            return NotImplemented
        return self.canonical == other.canonical

    __hash__ = None

    def isclose(self, other, atol=1e-12):
        return self.canonical.isclose(other.canonical, atol=atol)

    def __add__(self, other):
        return ImpairForm(PairForm(self.canonical.coeffs + other.canonical.coeffs, self.degree), 1)

    def __neg__(self):
        return ImpairForm(PairForm(-self.representative.coeffs, self.degree), self.orientation)


@dataclass(frozen=True)
class VolumeElement:
    """Pair volume ``sign * gamma^5`` together with the impair volume.

    The impair volume is the same object for both signs: its representative
    in any positively oriented coframe has top component +1.
    """

    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("volume sign must be +1 or -1")

    @property
    def pair(self):
        return PairForm(self.sign * G5.coeffs, 4)

    @property
    def impair(self):
        return ImpairForm(PairForm(G5.coeffs, 4), 1)

    def flipped(self):
        return VolumeElement(-self.sign)


POSITIVE = VolumeElement(1)
NEGATIVE = VolumeElement(-1)


def coframe_orientation(omega, tau=POSITIVE):
    """Sign of ``-omega . tau``: +1 for a right-handed coframe relative to ``tau``."""
    omega = as_pair(omega, 4)
    value = -float(scalar_product(omega, tau.pair))
    if value == 0.0:
        raise DegenerateInputError("coframe 4-form is zero; orientation undefined")
    return 1 if value > 0 else -1


def _tau_inverse(tau):
    # tau = s gamma^5 with tau^2 = -1, hence tau^-1 = -tau
    return -tau.pair.value


def pair_hodge(a, tau=POSITIVE):
    """``reverse(A) tau`` for a p-form A; returns a (4-p)-form."""
    a = as_pair(a)
    return PairForm(reverse(a) * tau.pair, 4 - a.degree)


def pair_hodge_inverse(b, tau=POSITIVE):
    """Solve ``reverse(A) tau = B`` for A."""
    b = as_pair(b)
    return PairForm(reverse(b.value * _tau_inverse(tau)), 4 - b.degree)


def impair_hodge(a, tau=POSITIVE, chart_orientation=1):
    """Impair Hodge star of a pair form, expressed in a chart of the given orientation."""
    a = as_pair(a)
    vol = tau.impair.in_chart(chart_orientation).representative
    return ImpairForm(PairForm(reverse(a) * vol, 4 - a.degree), chart_orientation)


def impair_hodge_imp(b, tau=POSITIVE, chart_orientation=None):
    """Impair Hodge star of an impair form; the result is a pair form.

    Both representatives are taken in the same chart, so the chart choice
    cancels.
    """
    o = b.orientation if chart_orientation is None else chart_orientation
    rep = b.in_chart(o).representative
    vol = tau.impair.in_chart(o).representative
    return PairForm(reverse(rep) * vol, 4 - b.degree)


def orientation_scalar(tau=POSITIVE):
    """The impair 0-form that equals +1 in coframes positively oriented relative to ``tau``.

    Computed from the two volume elements as ``-(impair volume) . (pair volume)``.
    """
    value = -float(scalar_product(tau.impair.canonical, tau.pair))
    return ImpairForm(PairForm(Multivector.scalar(value), 0), 1)


def axion_convert(b, eps):
    """Multiply an impair form by an impair scalar; the product is a pair form."""
    if eps.degree != 0:
        raise ValueError("eps must be an impair 0-form")
    o = b.orientation
    rep_b = b.in_chart(o).representative
    rep_eps = eps.in_chart(o).representative.scalar_part
    return PairForm(float(rep_eps) * rep_b.coeffs, b.degree)


@dataclass(frozen=True, eq=False)
class LinearChart:
    """Constant linear change of coordinates on Minkowski space.

    ``lam[i, j] = d x^i / d x'^j``: old coordinates as functions of new ones,
    ``x = lam @ x'``.
    """

    lam: np.ndarray

    def __post_init__(self):
        lam = np.array(self.lam, dtype=float)
        if lam.shape != (4, 4):
            raise ValueError("chart matrix must be 4x4")
        if not np.all(np.isfinite(lam)):
            raise NumericError("chart matrix must be finite")
        det = np.linalg.det(lam)
        if abs(det) <= 1e-14 * max(1.0, np.linalg.norm(lam)) ** 4:
            raise ValueError("chart matrix is singular")
        lam.flags.writeable = False
        object.__setattr__(self, "lam", lam)

    @property
    def det(self):
        return float(np.linalg.det(self.lam))

    @property
    def det_sign(self):
        return 1 if self.det > 0 else -1

    def then(self, other):
        """Apply this change first, then ``other`` (x -> x' -> x'')."""
        return LinearChart(self.lam @ other.lam)

    def __matmul__(self, other):
        # a @ b: apply b first, then a
        return other.then(self)

    def compound(self):
        """16x16 matrix ``C`` with ``C[I, J] = det(lam[I, J])`` on equal-grade blades."""
        c = np.zeros((NBLADES, NBLADES))
        c[0, 0] = 1.0
        for p in range(1, 5):
            for rows in combinations(range(4), p):
                i = sum(1 << r for r in rows)
                for cols in combinations(range(4), p):
                    j = sum(1 << k for k in cols)
                    c[i, j] = np.linalg.det(self.lam[np.ix_(rows, cols)])
        return c


def transform_components(form, chart, parity="pair"):
    """Components of ``form`` in the primed coordinate basis.

    Pair p-forms pick up one factor of ``lam`` per index; impair forms carry
    the extra factor ``sign(det lam)``. Returned as a Multivector whose blade
    ``J`` coefficient multiplies ``dx'^J``.
    """
    if parity not in ("pair", "impair"):
        raise ValueError("parity must be 'pair' or 'impair'")
    coeffs = form.coeffs if isinstance(form, Multivector) else np.asarray(form, dtype=float)
    out = coeffs @ chart.compound()
    if parity == "impair":
        out = chart.det_sign * out
    return Multivector(out)


def _midpoint_grid(box, n):
    axes = []
    cell = 1.0
    for lo, hi in box:
        if not hi > lo:
            raise ValueError("box bounds must satisfy lo < hi")
        h = (hi - lo) / n
        axes.append(lo + h * (np.arange(n) + 0.5))
        cell *= h
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1), cell


def _sum_density(density, points, cell):
    values = np.asarray(density(points), dtype=float)
    if values.shape != (points.shape[0],):
        values = np.broadcast_to(values, (points.shape[0],))
    if not np.all(np.isfinite(values)):
        raise NumericError("density returned non-finite samples")
    return float(np.sum(values) * cell)


def integrate_top_form(density, box, orientation=1, parity="pair", n=None):
    """Integrate a top form over an axis-aligned box by the midpoint rule.

    ``density(points)`` receives an ``(N, d)`` array and returns the top
    component of the form in a positively oriented chart. The integral is
    evaluated in a chart of the given ``orientation``: a pair form picks up
    that sign, an impair form does not.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    if parity not in ("pair", "impair"):
        raise ValueError("parity must be 'pair' or 'impair'")
    points, cell = _midpoint_grid(box, n or QUADRATURE_POINTS)
    total = _sum_density(density, points, cell)
    return orientation * total if parity == "pair" else total


def integrate_in_chart(density, chart, box_prime, parity="pair", n=None):
    """Integrate a 4-form after re-expressing it in the primed chart.

    The top component is transformed with :func:`transform_components`
    (``det lam`` for pair, ``|det lam|`` for impair) and integrated over
    ``box_prime`` in primed coordinates as an ordinary multiple integral.
    The impair result equals the integral over the image region; the pair
    result picks up ``sign(det lam)``.
    """
    factor = transform_components(Multivector.blade(0b1111), chart, parity).coeffs[0b1111]
    lam = chart.lam

    def pulled(points):
        return factor * np.asarray(density(points @ lam.T), dtype=float)

    points, cell = _midpoint_grid(box_prime, n or QUADRATURE_POINTS)
    return _sum_density(pulled, points, cell)
