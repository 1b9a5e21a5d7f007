"""
Relative-vector (Pauli) split of the even subalgebra with respect to
``gamma^0``: ``sigma_k = gamma_k gamma_0``, ``i = -gamma^5`` and
``F = E + i B``.

Every operation that depends on the spatial orientation takes ``i_sign``;
``i_sign = -1`` replaces ``i`` by ``-i``, which negates cross products,
curls and the stored magnetic vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import FieldMap, partial
from .electrodynamics import wire_field, split_F
from .forms import PairForm
from .kernel import G5, Multivector, gamma, gamma_lower

__all__ = [
    "SIGMA", "I_UNIT", "pseudoscalar_i", "RelativeVector", "PauliElement",
    "split_EB", "join_EB", "dot", "wedge3", "cross",
    "vector_field", "div", "curl", "grad",
    "engineering_residuals", "pauli_graded_components",
    "WireScenario", "SpatialFlipReport", "flip_spatial_orientation",
]

SIGMA = tuple(gamma_lower(k) * gamma_lower(0) for k in (1, 2, 3))
I_UNIT = -G5
_G0 = gamma(0)


def pseudoscalar_i(i_sign=1):
    if i_sign not in (1, -1):
        raise ValueError("i_sign must be +1 or -1")
    return i_sign * I_UNIT


@dataclass(frozen=True, eq=False)
class RelativeVector:
    """``c_k sigma_k`` with Cartesian components ``c``."""

    components: np.ndarray

    def __post_init__(self):
        c = np.array(self.components, dtype=float)
        if c.shape != (3,):
            raise ValueError("relative vector needs 3 components")
        c.flags.writeable = False
        object.__setattr__(self, "components", c)

    @property
    def mv(self):
        out = Multivector.zero()
        for k in range(3):
            out = out + self.components[k] * SIGMA[k]
        return out

    @classmethod
    def from_mv(cls, m):
        return cls([float((m * SIGMA[k]).scalar_part) for k in range(3)])

    def __eq__(self, other):
        if not isinstance(other, RelativeVector):
            return NotImplemented
        return bool(np.all(self.components == other.components))

    __hash__ = None

    def __neg__(self):
        return RelativeVector(-self.components)

    def isclose(self, other, atol=1e-12):
        other = other.components if isinstance(other, RelativeVector) else np.asarray(other)
        return bool(np.allclose(self.components, other, atol=atol, rtol=0.0))


@dataclass(frozen=True)
class PauliElement:
    """Even element ``s + v_k sigma_k + b_k (i sigma_k) + p i`` for a chosen ``i``."""

    scalar: float
    vector: np.ndarray
    bivector: np.ndarray
    pseudoscalar: float
    i_sign: int = 1

    @classmethod
    def from_mv(cls, m, i_sign=1):
        i = pseudoscalar_i(i_sign)
        # every basis element squares to +1 or -1, so components are <m e^-1>_0
        vec = [float((m * SIGMA[k]).scalar_part) for k in range(3)]
        biv = [-float((m * (i * SIGMA[k])).scalar_part) for k in range(3)]
        ps = -float((m * i).scalar_part)
        return cls(float(m.scalar_part), np.array(vec), np.array(biv), ps, i_sign)

    @property
    def mv(self):
        i = pseudoscalar_i(self.i_sign)
        out = Multivector.scalar(self.scalar) + self.pseudoscalar * i
        for k in range(3):
            out = out + self.vector[k] * SIGMA[k] + self.bivector[k] * (i * SIGMA[k])
        return out


def split_EB(F, i_sign=1):
    """``(E, B)`` relative vectors with ``F = E + i B``."""
    F = F.value if isinstance(F, PairForm) else F
    conj = _G0 * F * _G0
    e_part = 0.5 * (F - conj)
    ib_part = 0.5 * (F + conj)
    b_part = -pseudoscalar_i(i_sign) * ib_part
    return RelativeVector.from_mv(e_part), RelativeVector.from_mv(b_part)


def join_EB(E, B, i_sign=1):
    """Inverse of :func:`split_EB`."""
    E = E if isinstance(E, RelativeVector) else RelativeVector(E)
    B = B if isinstance(B, RelativeVector) else RelativeVector(B)
    return PairForm(E.mv + pseudoscalar_i(i_sign) * B.mv, 2)


def _rv(a):
    return a if isinstance(a, RelativeVector) else RelativeVector(a)


def dot(a, b):
    a, b = _rv(a).mv, _rv(b).mv
    return float((0.5 * (a * b + b * a)).scalar_part)


def wedge3(a, b, i_sign=1):
    """``1/2 (a b - b a)``: a pure ``i sigma`` element."""
    a, b = _rv(a).mv, _rv(b).mv
    return PauliElement.from_mv(0.5 * (a * b - b * a), i_sign)


def cross(a, b, i_sign=1):
    """``-i (a ^ b)``; negates when ``i`` is replaced by ``-i``."""
    a, b = _rv(a).mv, _rv(b).mv
    w = 0.5 * (a * b - b * a)
    return RelativeVector.from_mv(-pseudoscalar_i(i_sign) * w)


# -- vector calculus ----------------------------------------------------------

def vector_field(func):
    """Wrap ``x -> 3 components`` as a FieldMap of relative vectors."""
    if isinstance(func, FieldMap):
        return func
    return FieldMap(lambda x: _rv(func(x)).mv, grade=2)


def _scalar_field(func):
    if isinstance(func, FieldMap):
        return func
    return FieldMap(lambda x: Multivector.scalar(float(func(x))), grade=0)


def _nabla_product(field, point, stencil):
    # sum_k sigma_k d_k A
    out = Multivector.zero()
    for k in range(3):
        out = out + SIGMA[k] * partial(field, k + 1, point, stencil)
    return out


def div(field3, point, stencil=None):
    """``sigma_k . d_k A``."""
    f = vector_field(field3)
    return float(sum(dot(RelativeVector(np.eye(3)[k]), RelativeVector.from_mv(partial(f, k + 1, point, stencil)))
                     for k in range(3)))


def curl(field3, point, stencil=None, i_sign=1):
    """``-i (nabla ^ A)``."""
    f = vector_field(field3)
    parts = [RelativeVector.from_mv(partial(f, k + 1, point, stencil)) for k in range(3)]
    out = np.zeros(3)
    for k in range(3):
        out += cross(np.eye(3)[k], parts[k], i_sign).components
    return RelativeVector(out)


def grad(scalar_field, point, stencil=None):
    f = _scalar_field(scalar_field)
    return RelativeVector([float(partial(f, k + 1, point, stencil).scalar_part) for k in range(3)])


def engineering_residuals(E, B, rho=None, j=None, point=None, stencil=None, i_sign=1):
    """The four vector-calculus Maxwell residuals at ``point``.

    Returns ``(div E - rho, curl B - d_t E - j, curl E + d_t B, div B)``
    with curls taken for the given ``i_sign``. ``E`` and ``B`` are callables
    ``x -> 3 components`` (or relative-vector FieldMaps); ``rho`` and ``j``
    default to zero.
    """
    x = np.asarray(point, dtype=float)
    ef, bf = vector_field(E), vector_field(B)
    rho_v = 0.0 if rho is None else float(rho(x))
    j_v = np.zeros(3) if j is None else np.asarray(j(x), dtype=float)
    dt_e = RelativeVector.from_mv(partial(ef, 0, x, stencil)).components
    dt_b = RelativeVector.from_mv(partial(bf, 0, x, stencil)).components
    gauss = div(ef, x, stencil) - rho_v
    ampere = curl(bf, x, stencil, i_sign).components - dt_e - j_v
    faraday = curl(ef, x, stencil, i_sign).components + dt_b
    monopole = div(bf, x, stencil)
    return gauss, ampere, faraday, monopole


def pauli_graded_components(F, J=None, point=None, stencil=None, i_sign=1):
    """Graded parts of ``gamma_0 (dirac F - J)`` matched to :func:`engineering_residuals`.

    The scalar part, the ``i sigma_k`` part and the ``i`` part equal the
    Gauss, Faraday and monopole residuals. The ``sigma_k`` part equals minus
    the Ampere residual, so it is negated here.
    """
    from .calculus import dirac

    x = np.asarray(point, dtype=float)
    jv = Multivector.zero() if J is None else (J(x) if callable(J) else J)
    m = _G0 * (dirac(F, x, stencil) - jv)
    pe = PauliElement.from_mv(m, i_sign)
    return pe.scalar, -pe.vector, pe.bivector, pe.pseudoscalar


# -- spatial orientation flip ---------------------------------------------------------

@dataclass(frozen=True)
class WireScenario:
    """Straight current ``I`` along z, a loop of radius ``r`` and a test charge."""

    current: float = 1.0
    radius: float = 1.0
    charge: float = 1.0
    position: tuple = (1.0, 0.0, 0.0)
    velocity: tuple = (0.0, 0.0, 0.5)
    segments: int = 720
    residual_points: tuple = ((0.0, 0.7, -0.4, 0.3), (1.0, -1.2, 0.5, 2.0))


@dataclass(frozen=True)
class SpatialFlipReport:
    circulation: tuple
    residual_norms: tuple
    force: tuple
    residual_deviation: float
    force_deviation: float

    def as_dict(self):
        return {
            "circulation": list(self.circulation),
            "residual_norms": [list(r) for r in self.residual_norms],
            "force": [list(f) for f in self.force],
            "residual_deviation": self.residual_deviation,
            "force_deviation": self.force_deviation,
        }


def _circulation(bfunc, radius, segments, i_sign):
    # midpoint rule around the loop counter-clockwise in the (x1, x2) plane
    phi = 2 * np.pi * (np.arange(segments) + 0.5) / segments
    dl = 2 * np.pi * radius / segments
    total = 0.0
    for p in phi:
        x = np.array([0.0, radius * np.cos(p), radius * np.sin(p), 0.0])
        tangent = np.array([-np.sin(p), np.cos(p), 0.0])
        total += dot(bfunc(x), tangent) * dl
    return total


def flip_spatial_orientation(scenario=None, stencil=None):
    """Evaluate the wire scenario with ``i`` and with ``-i`` (and ``B -> -B``).

    Physical content (residual norms, test-charge force) is unchanged while
    the circulation of ``B`` changes sign.
    """
    sc = scenario or WireScenario()
    wire = wire_field(sc.current)
    zero = np.zeros(3)
    circ, norms, forces = [], [], []
    for s in (1, -1):
        def bfunc(x, s=s):
            return s * split_F(wire(x))[1]

        def efunc(x):
            return zero

        res = [engineering_residuals(efunc, bfunc, None, None, p, stencil, s)
               for p in sc.residual_points]
        norms.append(tuple(float(np.linalg.norm(np.concatenate([[r[0]], r[1], r[2], [r[3]]])))
                           for r in res))
        circ.append(_circulation(bfunc, sc.radius, sc.segments, s))
        x = np.concatenate([[0.0], sc.position])
        force = sc.charge * (efunc(x) + cross(sc.velocity, bfunc(x), s).components)
        forces.append(tuple(float(f) for f in force))
    return SpatialFlipReport(
        tuple(circ), tuple(norms), tuple(forces),
        float(np.max(np.abs(np.subtract(norms[0], norms[1])))),
        float(np.max(np.abs(np.subtract(forces[0], forces[1])))),
    )
