"""
Maxwell's equations in three equivalent forms, currents and charge
integrals, linear constitutive tensors and a retarded-potential solver.

Units are Heaviside-Lorentz with ``c = 1``: ``div E = rho`` and the scalar
retarded Green function carries ``1 / (4 pi)``.

Field strength convention: ``F = 1/2 F_{mu nu} gamma^mu ^ gamma^nu`` with
``F_{0i} = E_i`` and ``F_{ij} = -eps_{ijk} B_k``. A current is the 1-form
``J = J_mu gamma^mu = rho gamma^0 - j^i gamma^i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np
from scipy.optimize import brentq
from scipy.special import erf

from .calculus import DEFAULT_STENCIL, FieldMap, dirac, exterior_d
from .errors import DomainError, NumericError
from .forms import (
    POSITIVE, ImpairForm, PairForm, axion_convert, impair_hodge,
    integrate_top_form, orientation_scalar, pair_hodge, pair_hodge_inverse,
)
from .kernel import ETA, Multivector, grade_project

__all__ = [
    "BIVECTOR_PAIRS", "EPS6", "VACUUM_CHI",
    "assemble_F", "split_F", "field_tensor", "faraday_contravariant", "field_from_EB",
    "SmoothCurrent", "ParticleCurrent", "ZERO_CURRENT", "gaussian_blob", "point_charges",
    "coulomb_field", "blob_field", "plane_wave", "uniform_field", "boosted_coulomb_field",
    "magnetic_blob_field", "wire_field", "PRESETS",
    "MaxwellResidual", "maxwell_residual", "generalized_residual", "charge_integral",
    "ConstitutiveTensor", "levi_civita", "constitutive_apply", "excitation_form",
    "constitutive_decompose", "decomposition_projectors", "effective_metric_constitutive",
    "retarded_potential", "retarded_field", "retarded_field_map", "check_conservation",
]

# -- field strength packing ---------------------------------------------------

# blade masks for gamma^0 gamma^i and the sign taking E_i / B_k to coefficients
_E_BLADES = (0b0011, 0b0101, 0b1001)
_B_BLADES = (0b1100, 0b1010, 0b0110)  # gamma^23, gamma^13, gamma^12
_B_SIGNS = np.array([-1.0, 1.0, -1.0])


def assemble_F(E, B):
    """Field strength 2-form from Cartesian ``E`` and ``B``; broadcasts over leading axes."""
    E = np.asarray(E, dtype=float)
    B = np.asarray(B, dtype=float)
    shape = np.broadcast_shapes(E.shape, B.shape)
    if shape[-1:] != (3,):
        raise ValueError("E and B must have trailing dimension 3")
    c = np.zeros(shape[:-1] + (16,))
    for k in range(3):
        c[..., _E_BLADES[k]] = E[..., k]
        c[..., _B_BLADES[k]] = _B_SIGNS[k] * B[..., k]
    return PairForm(c, 2)


def split_F(F):
    """Inverse of :func:`assemble_F`: returns ``(E, B)`` arrays."""
    c = F.coeffs
    E = np.stack([c[..., m] for m in _E_BLADES], axis=-1)
    B = np.stack([_B_SIGNS[k] * c[..., _B_BLADES[k]] for k in range(3)], axis=-1)
    return E, B


def field_tensor(F):
    """Covariant components ``F_{mu nu}`` as a (..., 4, 4) antisymmetric array."""
    c = F.coeffs
    out = np.zeros(c.shape[:-1] + (4, 4))
    for mu in range(4):
        for nu in range(mu + 1, 4):
            v = c[..., (1 << mu) | (1 << nu)]
            out[..., mu, nu] = v
            out[..., nu, mu] = -v
    return out


def faraday_contravariant(E, B):
    """``F^{mu nu}`` with ``F^{i0} = E_i`` and ``F^{ij} = -eps_{ijk} B_k``."""
    low = field_tensor(assemble_F(E, B))
    return ETA @ low @ ETA


def field_from_EB(efunc, bfunc=None, domain=None):
    """FieldMap of ``F`` from callables ``x -> E`` and ``x -> B`` (``x`` a spacetime point)."""
    zero = np.zeros(3)
    bfunc = bfunc or (lambda x: zero)
    efunc = efunc or (lambda x: zero)
    return FieldMap(lambda x: assemble_F(efunc(x), bfunc(x)), domain=domain, grade=2)


# -- currents -----------------------------------------------------------------

class SmoothCurrent:
    """Smooth current given by its contravariant components ``J^mu`` (vectorized).

    ``density(points)`` maps an ``(..., 4)`` array of spacetime points to
    ``(..., 4)`` components ``(rho, j^1, j^2, j^3)``. ``center(t)`` and
    ``support_radius`` bound the spatial support at each time; ``speed`` bounds
    the support's velocity.
    """

    def __init__(self, density, center=None, support_radius=None, speed=0.0, charge=None):
        self.density = density
        self.center = center
        self.support_radius = support_radius
        self.speed = float(speed)
        self.charge = charge
        if self.speed >= 1.0:
            raise ValueError("support must move slower than light")

    @property
    def is_zero(self):
        return self.center is None

    def contravariant(self, points):
        points = np.asarray(points, dtype=float)
        out = np.asarray(self.density(points), dtype=float)
        return np.broadcast_to(out, points.shape[:-1] + (4,))

    def at(self, x, margin=0.0):
        """The 1-form ``J_mu gamma^mu`` at ``x``."""
        up = self.contravariant(np.asarray(x, dtype=float))
        return Multivector.vector(up * np.diag(ETA))

    def field(self):
        return FieldMap(lambda x: self.at(x), grade=1)

    def __neg__(self):
        return SmoothCurrent(lambda p: -self.contravariant(p), self.center, self.support_radius,
                             self.speed, None if self.charge is None else -self.charge)


ZERO_CURRENT = SmoothCurrent(lambda p: np.zeros(np.shape(p)[:-1] + (4,)), charge=0.0)


def gaussian_blob(q=1.0, sigma=1.0, center=(0.0, 0.0, 0.0), velocity=(0.0, 0.0, 0.0)):
    """Rigidly moving Gaussian charge cloud of total charge ``q``.

    In its rest frame the charge density is an isotropic Gaussian of width
    ``sigma``; in the lab it is Lorentz-contracted along ``velocity`` and
    carries ``J = rho (1, v)``.
    """
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    c0 = np.asarray(center, dtype=float)
    v = np.asarray(velocity, dtype=float)
    speed = float(np.linalg.norm(v))
    if speed >= 1.0:
        raise ValueError("blob speed must be below 1")
    gam = 1.0 / np.sqrt(1.0 - speed ** 2)
    vhat = v / speed if speed > 0 else np.zeros(3)
    norm = q / ((2 * np.pi) ** 1.5 * sigma ** 3)

    def density(points):
        t = points[..., 0]
        r = points[..., 1:] - c0 - t[..., None] * v
        par = r @ vhat
        rest2 = np.sum(r * r, axis=-1) + (gam ** 2 - 1) * par ** 2
        rho = gam * norm * np.exp(-0.5 * rest2 / sigma ** 2)
        return np.concatenate([rho[..., None], rho[..., None] * v], axis=-1)

    return SmoothCurrent(density, lambda t: c0 + t * v, 6.0 * sigma, speed, q)


class ParticleCurrent:
    """Current of point charges; zero everywhere except on the worldlines.

    ``trajectories`` are callables ``t -> position`` (3 reals). Sampling
    within ``margin`` of a charge raises :class:`DomainError` since the current
    is distributional there.
    """

    def __init__(self, charges, trajectories):
        self.charges = [float(q) for q in charges]
        self.trajectories = list(trajectories)
        if len(self.charges) != len(self.trajectories):
            raise ValueError("one trajectory per charge is required")

    @property
    def charge(self):
        return sum(self.charges)

    def positions(self, t):
        return [np.asarray(z(t), dtype=float) for z in self.trajectories]

    def at(self, x, margin=0.0):
        x = np.asarray(x, dtype=float)
        for z in self.positions(x[0]):
            if np.linalg.norm(x[1:] - z) <= margin:
                raise DomainError(f"point {x} lies on the support of a point charge")
        return Multivector.zero()


def point_charges(charges, positions):
    """Static point charges at fixed positions."""
    return ParticleCurrent(charges, [lambda t, p=np.asarray(p, dtype=float): p for p in positions])


# -- analytic field presets ---------------------------------------------------

def _radial(x, center):
    r = np.asarray(x[1:], dtype=float) - np.asarray(center, dtype=float)
    return r, float(np.linalg.norm(r))


def coulomb_field(q=1.0, center=(0.0, 0.0, 0.0)):
    """Static point charge: ``E = q r / (4 pi |r|^3)``, undefined at the charge."""
    def efield(x):
        r, d = _radial(x, center)
        return q * r / (4 * np.pi * d ** 3)

    return field_from_EB(efield, domain=lambda x: _radial(x, center)[1] > 0.0)


def _enclosed_fraction(d, sigma):
    s = d / sigma
    return erf(s / np.sqrt(2.0)) - np.sqrt(2.0 / np.pi) * s * np.exp(-0.5 * s * s)


def _blob_efield(q, sigma, center):
    rho0 = q / ((2 * np.pi) ** 1.5 * sigma ** 3)

    def efield(x):
        r, d = _radial(x, center)
        if d < 1e-3 * sigma:
            return rho0 * r / 3.0 * (1 - 0.3 * (d / sigma) ** 2)
        return q * _enclosed_fraction(d, sigma) * r / (4 * np.pi * d ** 3)

    return efield


def blob_field(q=1.0, sigma=1.0, center=(0.0, 0.0, 0.0)):
    """Static field of :func:`gaussian_blob` at rest, inside and outside the cloud."""
    return field_from_EB(_blob_efield(q, sigma, center))


def magnetic_blob_field(qm=1.0, sigma=1.0, center=(0.0, 0.0, 0.0)):
    """Field of a Gaussian magnetic charge: the blob field with E and B exchanged."""
    return field_from_EB(None, _blob_efield(qm, sigma, center))


def plane_wave(amplitude=1.0):
    """Vacuum plane wave along z: ``E = A cos(t - z) x``, ``B = A cos(t - z) y``."""
    def efield(x):
        return np.array([amplitude * np.cos(x[0] - x[3]), 0.0, 0.0])

    def bfield(x):
        return np.array([0.0, amplitude * np.cos(x[0] - x[3]), 0.0])

    return field_from_EB(efield, bfield)


def uniform_field(E=(0.0, 0.0, 0.0), B=(0.0, 0.0, 0.0)):
    F = assemble_F(E, B)
    return FieldMap.constant(F, grade=2)


def boosted_coulomb_field(q=1.0, velocity=(0.0, 0.0, 0.0), center=(0.0, 0.0, 0.0)):
    """Field of a point charge in uniform motion, passing ``center`` at ``t = 0``."""
    v = np.asarray(velocity, dtype=float)
    c0 = np.asarray(center, dtype=float)
    v2 = float(v @ v)
    if v2 >= 1.0:
        raise ValueError("speed must be below 1")

    def present(x):
        return np.asarray(x[1:], dtype=float) - c0 - x[0] * v

    def efield(x):
        R = present(x)
        denom = float(R @ R - np.cross(v, R) @ np.cross(v, R)) ** 1.5
        return q * (1 - v2) * R / (4 * np.pi * denom)

    return field_from_EB(efield, lambda x: np.cross(v, efield(x)),
                         domain=lambda x: np.linalg.norm(present(x)) > 0.0)


def wire_field(current=1.0):
    """Magnetic field of an infinite straight current along the z axis, ``B = I/(2 pi r) phi``."""
    def bfield(x):
        rx, ry = x[1], x[2]
        r2 = rx * rx + ry * ry
        return current / (2 * np.pi * r2) * np.array([-ry, rx, 0.0])

    return field_from_EB(None, bfield, domain=lambda x: x[1] ** 2 + x[2] ** 2 > 0.0)


PRESETS = {
    "coulomb": coulomb_field,
    "blob": blob_field,
    "plane_wave": plane_wave,
    "uniform_EB": uniform_field,
    "boosted_coulomb": boosted_coulomb_field,
    "magnetic_blob": magnetic_blob_field,
    "wire": wire_field,
}


# -- Maxwell residuals ----------------------------------------------------------

@dataclass(frozen=True)
class MaxwellResidual:
    """Residuals of ``dF = 0``, ``delta F + J = 0`` and ``dF - delta F = J``.

    ``impair_inhomogeneous`` is the residual of ``d G + J_3`` computed with
    the impair Hodge star, converted to a pair form with the orientation
    scalar and mapped back to a 1-form; it must equal ``inhomogeneous``.
    """

    homogeneous: Multivector
    inhomogeneous: Multivector
    clifford: Multivector
    impair_inhomogeneous: Multivector

    @property
    def homogeneous_norm(self):
        return float(self.homogeneous.norm())

    @property
    def inhomogeneous_norm(self):
        return float(self.inhomogeneous.norm())

    @property
    def clifford_norm(self):
        return float(self.clifford.norm())

    @property
    def impair_norm(self):
        return float(self.impair_inhomogeneous.norm())

    @property
    def impair_mismatch(self):
        return float((self.impair_inhomogeneous - self.inhomogeneous).norm())

    @property
    def max_norm(self):
        return max(self.homogeneous_norm, self.inhomogeneous_norm, self.clifford_norm, self.impair_norm)


def _current_at(J, point, stencil):
    J = ZERO_CURRENT if J is None else J
    return J.at(point, margin=2 * stencil.reach)


def maxwell_residual(F, J=None, point=None, tau=POSITIVE, stencil=None, chart_orientation=1):
    """All Maxwell residuals of the field ``F`` with current ``J`` at ``point``."""
    stencil = stencil or DEFAULT_STENCIL
    point = np.asarray(point, dtype=float)
    j = _current_at(J, point, stencil)
    full = dirac(F, point, stencil)
    homogeneous = grade_project(full, 3)
    inhomogeneous = -grade_project(full, 1) + j
    clifford = full - j

    # impair route: representatives in a chart of the given orientation
    o = chart_orientation
    g_rep = F.map(lambda v: impair_hodge(PairForm(v, 2), tau, o).representative, 2)
    dg = exterior_d(g_rep, point, stencil, grade=2)
    j3 = impair_hodge(PairForm(j.coeffs, 1), tau, o).representative
    imp = ImpairForm(PairForm(dg.coeffs + j3.coeffs, 3), o)
    pair3 = axion_convert(imp, orientation_scalar(tau))
    impair_inh = pair_hodge_inverse(pair3, tau).value
    return MaxwellResidual(homogeneous, inhomogeneous, clifford, impair_inh)


def generalized_residual(F, J_e=None, J_m=None, point=None, tau=POSITIVE, stencil=None):
    """``dirac F - J_e + star J_m`` with an optional magnetic current."""
    stencil = stencil or DEFAULT_STENCIL
    point = np.asarray(point, dtype=float)
    je = _current_at(J_e, point, stencil)
    jm = _current_at(J_m, point, stencil)
    return dirac(F, point, stencil) - je + pair_hodge(PairForm(jm.coeffs, 1), tau)


def charge_integral(J, box, t=0.0, chart_orientation=1, parity="pair", n=None):
    """Integral of the 3-form ``star J`` over the slice ``{t} x box``.

    The slice is integrated in a spatial chart of the given orientation; the
    pair result follows the chart, the impair result does not.
    """
    box = [tuple(map(float, b)) for b in box]
    if len(box) != 3:
        raise ValueError("slice box needs three (lo, hi) ranges")
    if isinstance(J, ParticleCurrent):
        total = sum(q for q, z in zip(J.charges, J.positions(t))
                    if all(lo < zi < hi for zi, (lo, hi) in zip(z, box)))
        return chart_orientation * total if parity == "pair" else total
    if not J.is_zero:
        c = np.asarray(J.center(t), dtype=float)
        r = J.support_radius
        if any(c[k] - r < box[k][0] or c[k] + r > box[k][1] for k in range(3)):
            raise ValueError("slice box does not contain the current's support")

    def density(points):
        x = np.concatenate([np.full((points.shape[0], 1), t), points], axis=1)
        star_j = pair_hodge(PairForm(J.at(x).coeffs, 1), POSITIVE)
        return star_j.coeffs[:, 0b1110]

    return integrate_top_form(density, box, chart_orientation, parity, n)


# -- constitutive tensors -------------------------------------------------------

BIVECTOR_PAIRS = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))
EPS6 = np.block([[np.zeros((3, 3)), np.eye(3)], [np.eye(3), np.zeros((3, 3))]])
VACUUM_CHI = np.diag([-1.0, -1.0, -1.0, 1.0, 1.0, 1.0])


def levi_civita():
    """Permutation symbol with ``eps[0, 1, 2, 3] = +1``."""
    eps = np.zeros((4, 4, 4, 4))
    for perm in permutations(range(4)):
        inversions = sum(perm[i] > perm[j] for i in range(4) for j in range(i + 1, 4))
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


@dataclass(frozen=True, eq=False)
class ConstitutiveTensor:
    """``chi^{mu nu rho sigma}`` stored as 6x6 over the pairs (01,02,03,23,31,12)."""

    chi: np.ndarray

    def __post_init__(self):
        chi = np.array(self.chi, dtype=float)
        if chi.shape != (6, 6):
            raise ValueError("constitutive array must be 6x6")
        if not np.all(np.isfinite(chi)):
            raise NumericError("constitutive array must be finite")
        chi.flags.writeable = False
        object.__setattr__(self, "chi", chi)

    @classmethod
    def from_tensor(cls, t):
        t = np.asarray(t, dtype=float)
        return cls(np.array([[t[a + b] for b in BIVECTOR_PAIRS] for a in BIVECTOR_PAIRS]))

    def to_tensor(self):
        """Rank-4 array antisymmetric in each index pair."""
        t = np.zeros((4, 4, 4, 4))
        for i, (a, b) in enumerate(BIVECTOR_PAIRS):
            for j, (c, d) in enumerate(BIVECTOR_PAIRS):
                v = self.chi[i, j]
                t[a, b, c, d] = v
                t[b, a, c, d] = -v
                t[a, b, d, c] = -v
                t[b, a, d, c] = v
        return t

    @classmethod
    def vacuum(cls):
        return cls(VACUUM_CHI)

    @classmethod
    def axion(cls, a=1.0):
        return cls(a * EPS6)


def _six(F):
    low = field_tensor(F)
    return np.array([low[..., a, b] for a, b in BIVECTOR_PAIRS]).T


def _from_six(v):
    v = np.asarray(v, dtype=float)
    low = np.zeros(v.shape[:-1] + (4, 4))
    for k, (a, b) in enumerate(BIVECTOR_PAIRS):
        low[..., a, b] = v[..., k]
        low[..., b, a] = -v[..., k]
    c = np.zeros(v.shape[:-1] + (16,))
    for mu in range(4):
        for nu in range(mu + 1, 4):
            c[..., (1 << mu) | (1 << nu)] = low[..., mu, nu]
    return PairForm(c, 2)


def _as_chi(chi):
    return chi.chi if isinstance(chi, ConstitutiveTensor) else np.asarray(chi, dtype=float)


def constitutive_apply(chi, F):
    """Linear constitutive map ``G^A = chi^{AB} F_B`` on the six bivector slots.

    The result holds the raw density components ``G^{mu nu}`` in the slots
    where a 2-form holds ``F_{mu nu}``.
    """
    return _from_six(_six(F) @ _as_chi(chi).T)


def excitation_form(chi, F):
    """Excitation 2-form ``G_{ab} = 1/2 eps_{ab mu nu} G^{mu nu}`` from the raw densities."""
    raw = _six(constitutive_apply(chi, F))
    return _from_six(raw @ EPS6.T)


def constitutive_decompose(chi):
    """Split into ``(principal, skewon, axion)`` with ``principal + skewon + axion * EPS6 == chi``."""
    c = _as_chi(chi)
    skewon = 0.5 * (c - c.T)
    sym = 0.5 * (c + c.T)
    axion = float(np.trace(EPS6 @ c) / 6.0)
    principal = sym - axion * EPS6
    return principal, skewon, axion


def decomposition_projectors():
    """The three 36x36 projectors onto principal, skewon and axion parts of a flattened chi."""
    basis = np.eye(36)
    mats = [[], [], []]
    for e in basis:
        p, s, a = constitutive_decompose(e.reshape(6, 6))
        mats[0].append(p.ravel())
        mats[1].append(s.ravel())
        mats[2].append((a * EPS6).ravel())
    return tuple(np.array(m).T for m in mats)


def effective_metric_constitutive(g):
    """``chi^{l n s k} = sqrt|det g| (g^{ls} g^{nk} - g^{lk} g^{ns})`` for a Lorentzian metric."""
    g = np.asarray(g, dtype=float)
    if g.shape != (4, 4) or not np.all(np.isfinite(g)):
        raise ValueError("metric must be a finite 4x4 array")
    if not np.allclose(g, g.T, atol=1e-12 * max(1.0, np.abs(g).max())):
        raise ValueError("metric must be symmetric")
    eig = np.linalg.eigvalsh(g)
    scale = np.abs(eig).max()
    if scale == 0.0 or np.abs(eig).min() <= 1e-12 * scale:
        raise ValueError("metric is singular")
    npos = int(np.sum(eig > 0))
    if npos not in (1, 3):
        raise ValueError("metric is not Lorentzian")
    ginv = np.linalg.inv(g)
    t = np.sqrt(abs(np.linalg.det(g))) * (
        np.einsum("ls,nk->lnsk", ginv, ginv) - np.einsum("lk,ns->lnsk", ginv, ginv))
    return ConstitutiveTensor.from_tensor(t)


# -- retarded solver -----------------------------------------------------------

RETARDED_POINTS = 48
CONSERVATION_RTOL = 1e-6


def check_conservation(J, t, rtol=CONSERVATION_RTOL):
    """Sample ``d_mu J^mu`` around the support at time ``t``; raise ValueError if too large."""
    if J.is_zero:
        return 0.0
    c = np.asarray(J.center(t), dtype=float)
    r = J.support_radius
    offsets = [np.zeros(3)] + [s * r / 6.0 * e for e in np.eye(3) for s in (1, -1)]
    offsets += [r / 6.0 * np.array([1.0, 1.0, 1.0]) / np.sqrt(3)]
    h = r * 1e-3
    weights = ((2, -1 / 12), (1, 8 / 12), (-1, -8 / 12), (-2, 1 / 12))
    peak = 0.0
    worst = 0.0
    for off in offsets:
        x = np.concatenate([[t], c + off])
        peak = max(peak, float(np.abs(J.contravariant(x)).max()))
        div = 0.0
        for mu in range(4):
            step = np.zeros(4)
            step[mu] = h
            div += sum(w * J.contravariant(x + k * step)[mu] for k, w in weights) / h
        worst = max(worst, abs(div))
    if worst > rtol * peak:
        raise ValueError(f"current is not conserved: sampled |div J| = {worst:.3e} "
                         f"exceeds {rtol:g} x peak |J| = {rtol * peak:.3e}")
    return worst


def _retarded_box(J, x):
    """Bounding box of the source points that can influence the event ``x``."""
    t, pos = x[0], x[1:]
    r = J.support_radius

    def g(tp):
        return tp + np.linalg.norm(pos - J.center(tp))

    span = (np.linalg.norm(pos - J.center(t)) + 2 * r) / (1.0 - J.speed) + 1.0
    lo_t = brentq(lambda tp: g(tp) - (t - r), t - span, t + r)
    hi_t = brentq(lambda tp: g(tp) - (t + r), t - span, t + r)
    times = np.linspace(lo_t, hi_t, 33)
    centers = np.array([J.center(tp) for tp in times])
    return list(zip(centers.min(axis=0) - r, centers.max(axis=0) + r))


@dataclass(frozen=True)
class _RetardedGrid:
    points: np.ndarray
    cell: float


def _make_grid(box, n):
    axes = []
    cell = 1.0
    for lo, hi in box:
        h = (hi - lo) / n
        axes.append(lo + h * (np.arange(n) + 0.5))
        cell *= h
    mesh = np.meshgrid(*axes, indexing="ij")
    return _RetardedGrid(np.stack([m.ravel() for m in mesh], axis=-1), cell)


def _potential_on_grid(J, grid, x):
    d = np.linalg.norm(grid.points - x[1:], axis=1)
    if np.any(d == 0.0):
        raise NumericError("field point coincides with a quadrature node")
    src = np.concatenate([(x[0] - d)[:, None], grid.points], axis=1)
    up = J.contravariant(src)
    a_up = grid.cell / (4 * np.pi) * np.sum(up / d[:, None], axis=0)
    if not np.all(np.isfinite(a_up)):
        raise NumericError("retarded quadrature produced non-finite values")
    return Multivector.vector(a_up * np.diag(ETA))


def retarded_potential(J, point, n=None, check=True):
    """Retarded potential 1-form ``A_mu gamma^mu`` at ``point`` by midpoint quadrature."""
    x = np.asarray(point, dtype=float)
    if J.is_zero:
        return Multivector.zero()
    if check:
        check_conservation(J, x[0])
    grid = _make_grid(_retarded_box(J, x), n or RETARDED_POINTS)
    return _potential_on_grid(J, grid, x)


def retarded_field_map(J, anchor, n=None, stencil=None, check=True):
    """FieldMap of ``F = dA`` near ``anchor`` using one quadrature grid for all samples.

    Freezing the grid keeps the sampled potential a smooth function of the
    field point, so finite differences of it are meaningful.
    """
    anchor = np.asarray(anchor, dtype=float)
    if J.is_zero:
        return FieldMap.constant(Multivector.zero(), grade=2)
    if check:
        check_conservation(J, anchor[0])
    grid = _make_grid(_retarded_box(J, anchor), n or RETARDED_POINTS)
    potential = FieldMap(lambda x: _potential_on_grid(J, grid, x), grade=1)
    inner = stencil or DEFAULT_STENCIL
    return FieldMap(lambda x: exterior_d(potential, x, inner, grade=1), grade=2)


def retarded_field(J, point, n=None, stencil=None, check=True):
    """Field strength of the retarded potential at ``point``."""
    x = np.asarray(point, dtype=float)
    return retarded_field_map(J, x, n, stencil, check)(x)
