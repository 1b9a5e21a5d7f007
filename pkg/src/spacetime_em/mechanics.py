"""
Electromagnetic stress-energy, force density, charged-particle dynamics and
the joint charge/field sign-flip experiment.

Velocities and momenta are handled as contravariant component arrays
``u^mu``; the matching grade-1 multivector is ``u^mu gamma_mu``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicHermiteSpline, CubicSpline

from .calculus import DEFAULT_STENCIL, FieldMap
from .electrodynamics import ZERO_CURRENT, charge_integral, field_tensor, gaussian_blob
from .errors import NumericError
from .forms import POSITIVE, ImpairForm, PairForm
from .kernel import ETA, Multivector, gamma, left_contract, reverse, scalar_product

__all__ = [
    "StressEnergy", "stress_energy", "stress_energy_components",
    "force_components", "force_density", "divergence_check",
    "Worldline", "ChargedParticle", "lorentz_push",
    "FlipReport", "orientation_flip_experiment",
    "matter_stress_energy", "total_momentum",
]

_ETA_DIAG = np.diag(ETA)


def _lower(u):
    return np.asarray(u, dtype=float) * _ETA_DIAG


# -- stress-energy --------------------------------------------------------------

@dataclass(frozen=True)
class StressEnergy:
    """Energy-momentum 1-forms ``T^alpha`` and components ``T^{alpha beta}``.

    ``forms`` is a Multivector batch of shape ``(..., 4)``; ``components``
    has shape ``(..., 4, 4)``.
    """

    forms: Multivector
    components: np.ndarray

    @property
    def trace(self):
        return np.sum(ETA * self.components, axis=(-2, -1))


def stress_energy(F, tau=POSITIVE):
    """``T^alpha = 1/2 F gamma^alpha reverse(F)`` and ``T^{alpha beta} = T^alpha . gamma^beta``.

    Broadcasts over a batch of field strengths. The result does not depend
    on the orientation ``tau``; the argument is accepted so callers can pass
    their volume element uniformly.
    """
    F = Multivector(F.coeffs)
    Frev = reverse(F)
    forms = Multivector(np.stack([(0.5 * (F * gamma(a) * Frev)).coeffs for a in range(4)], axis=-2))
    comps = np.stack([scalar_product(forms, gamma(b)) for b in range(4)], axis=-1)
    return StressEnergy(forms, comps)


def stress_energy_components(F):
    """Closed form ``eta^{am} F_{ml} F^{lb} + 1/4 eta^{ab} F_{mn} F^{mn}``; broadcasts."""
    low = field_tensor(F)
    up = ETA @ low @ ETA
    inv = np.einsum("...mn,...mn->...", low, up)
    return np.einsum("am,...ml,...lb->...ab", ETA, low, up) + 0.25 * ETA * inv[..., None, None]


# -- force density ----------------------------------------------------------------

def force_components(F, J):
    """``f^alpha = (gamma^alpha _| F) . J = F^{alpha nu} J_nu`` for a 2-form F and 1-form J."""
    return np.array([float(scalar_product(left_contract(gamma(a), F), J)) for a in range(4)])


def force_density(F, J, tau=POSITIVE, parity="pair"):
    """Force density 4-forms ``f^alpha`` with the pair or impair volume of ``tau``.

    Pair: a batch PairForm of shape (4,). Impair: an ImpairForm whose
    representative is that batch in a positively oriented chart.
    """
    f = force_components(F, J)
    if parity == "pair":
        vol = tau.pair
    elif parity == "impair":
        vol = tau.impair.canonical
    else:
        raise ValueError("parity must be 'pair' or 'impair'")
    form = PairForm(f[:, None] * vol.coeffs[None, :], 4)
    return form if parity == "pair" else ImpairForm(form, 1)


def divergence_check(F, J=None, point=None, stencil=None):
    """``max_alpha |d_nu T^{alpha nu} - J_nu F^{nu alpha}|`` at ``point``."""
    stencil = stencil or DEFAULT_STENCIL
    x = np.asarray(point, dtype=float)
    J = ZERO_CURRENT if J is None else J
    weights = ((1, 0.5), (-1, -0.5)) if stencil.order == 2 else (
        (2, -1 / 12), (1, 8 / 12), (-1, -8 / 12), (-2, 1 / 12))
    div = np.zeros(4)
    for nu in range(4):
        step = np.zeros(4)
        step[nu] = stencil.h
        d = sum(w * stress_energy_components(F(x + k * step))[:, nu] for k, w in weights)
        div += d / stencil.h
    j = J.at(x, margin=2 * stencil.reach)
    source = -force_components(F(x), j)
    return float(np.max(np.abs(div - source)))


# -- worldlines and pushing ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Worldline:
    """Samples ``(s, x^mu, u^mu)`` of a future-pointing timelike curve with ``u.u = 1``."""

    s: np.ndarray
    x: np.ndarray
    u: np.ndarray
    tol: float = 1e-9

    def __post_init__(self):
        s = np.atleast_1d(np.asarray(self.s, dtype=float))
        x = np.atleast_2d(np.asarray(self.x, dtype=float))
        u = np.atleast_2d(np.asarray(self.u, dtype=float))
        if x.shape != (s.size, 4) or u.shape != (s.size, 4):
            raise ValueError("worldline needs matching (N,), (N,4), (N,4) samples")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(u)) and np.all(np.isfinite(s))):
            raise NumericError("worldline samples must be finite")
        norm = u[:, 0] ** 2 - np.sum(u[:, 1:] ** 2, axis=1)
        if np.any(np.abs(norm - 1.0) > self.tol) or np.any(u[:, 0] <= 0):
            raise ValueError("worldline velocity must be future-pointing with u.u = 1")
        if s.size > 1 and np.any(np.diff(s) <= 0):
            raise ValueError("proper time samples must increase")
        for name, arr in (("s", s), ("x", x), ("u", u)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def __len__(self):
        return self.s.size

    def velocity(self, i):
        """Grade-1 multivector ``u^mu gamma_mu`` at sample ``i``."""
        return Multivector.vector(_lower(self.u[i]))

    @property
    def t_range(self):
        return float(self.x[0, 0]), float(self.x[-1, 0])

    def _check_time(self, t):
        lo, hi = self.t_range
        if not lo <= t <= hi:
            raise ValueError(f"t = {t} outside the sampled range [{lo}, {hi}]")

    def position_at(self, t):
        """Spatial position at coordinate time ``t`` (cubic Hermite in t)."""
        self._check_time(t)
        if len(self) == 1:
            return self.x[0, 1:].copy()
        spline = CubicHermiteSpline(self.x[:, 0], self.x[:, 1:], self.u[:, 1:] / self.u[:, :1])
        return spline(t)

    def velocity_at(self, t):
        """Contravariant four-velocity at coordinate time ``t``."""
        self._check_time(t)
        if len(self) == 1:
            return self.u[0].copy()
        spatial = CubicSpline(self.x[:, 0], self.u[:, 1:])(t)
        return np.concatenate([[np.sqrt(1.0 + spatial @ spatial)], spatial])


@dataclass(frozen=True, eq=False)
class ChargedParticle:
    """Mass ``m > 0``, charge ``q`` and a worldline; pushes start from its last sample."""

    m: float
    q: float
    worldline: Worldline

    def __post_init__(self):
        if not (np.isfinite(self.m) and self.m > 0):
            raise ValueError("mass must be positive")
        if not np.isfinite(self.q):
            raise ValueError("charge must be finite")

    @classmethod
    def from_state(cls, m, q, position=(0.0, 0.0, 0.0, 0.0), momentum=(0.0, 0.0, 0.0)):
        """Particle with spacetime ``position`` and spatial ``momentum`` at ``s = 0``."""
        if not (np.isfinite(m) and m > 0):
            raise ValueError("mass must be positive")
        p = np.asarray(momentum, dtype=float) / m
        u = np.concatenate([[np.sqrt(1.0 + p @ p)], p])
        return cls(m, q, Worldline([0.0], [position], [u]))

    def with_charge(self, q):
        return ChargedParticle(self.m, q, self.worldline)

    def momentum(self, i=-1):
        return self.m * self.worldline.u[i]


def _field_up(F_ext, x):
    return ETA @ field_tensor(F_ext(x)) @ ETA


def lorentz_push(particle, F_ext, s_end, ds=1e-3):
    """Integrate ``dp^a/ds = q F^{a nu} u_nu`` with classical RK4.

    After every step the time component is reset to ``sqrt(m^2 + |p|^2)``
    so the momentum stays on the mass shell. Returns the new Worldline,
    starting at the particle's last sample.
    """
    if not ds > 0:
        raise ValueError("ds must be positive")
    m, q = particle.m, particle.q
    wl = particle.worldline
    s0 = float(wl.s[-1])
    if s_end <= s0:
        raise ValueError("s_end must exceed the particle's current proper time")
    nsteps = int(np.ceil((s_end - s0) / ds - 1e-9))
    h = (s_end - s0) / nsteps

    def rhs(x, p):
        return p / m, q * (_field_up(F_ext, x) @ _lower(p)) / m

    x = wl.x[-1].copy()
    p = m * wl.u[-1]
    xs = [x.copy()]
    us = [p / m]
    for _ in range(nsteps):
        k1x, k1p = rhs(x, p)
        k2x, k2p = rhs(x + 0.5 * h * k1x, p + 0.5 * h * k1p)
        k3x, k3p = rhs(x + 0.5 * h * k2x, p + 0.5 * h * k2p)
        k4x, k4p = rhs(x + h * k3x, p + h * k3p)
        x = x + h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
        p = p + h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p)
        p[0] = np.sqrt(m * m + p[1:] @ p[1:])
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(p))):
            raise NumericError("particle push produced non-finite state")
        xs.append(x.copy())
        us.append(p / m)
    s = s0 + h * np.arange(nsteps + 1)
    return Worldline(s, np.array(xs), np.array(us))


# -- orientation flip -----------------------------------------------------------------

@dataclass(frozen=True)
class FlipReport:
    max_deviation: float
    charge_pair: float
    charge_pair_flipped: float
    charge_impair: float
    charge_impair_flipped: float
    original: Worldline = field(repr=False)
    flipped: Worldline = field(repr=False)

    def as_dict(self):
        return {
            "max_deviation": self.max_deviation,
            "charge_pair": self.charge_pair,
            "charge_pair_flipped": self.charge_pair_flipped,
            "charge_impair": self.charge_impair,
            "charge_impair_flipped": self.charge_impair_flipped,
        }


def orientation_flip_experiment(particle, F_ext, s_end, ds=1e-3, blob=None):
    """Push with ``(q, F)`` and ``(-q, -F)``; compare worldlines and blob charge integrals.

    Reversing the orientation convention negates both the charge and the
    field strength, so the trajectory must not move. The blob's pair charge
    integral follows the chart orientation while the impair one does not.
    """
    original = lorentz_push(particle, F_ext, s_end, ds)
    flipped = lorentz_push(particle.with_charge(-particle.q), -F_ext, s_end, ds)
    deviation = float(max(np.abs(original.x - flipped.x).max(), np.abs(original.u - flipped.u).max()))
    blob = blob or gaussian_blob(q=1.0, sigma=0.5)
    c = blob.center(0.0)
    box = [(ci - blob.support_radius - 1.0, ci + blob.support_radius + 1.0) for ci in c]
    return FlipReport(
        deviation,
        charge_integral(blob, box, 0.0, 1, "pair"),
        charge_integral(blob, box, 0.0, -1, "pair"),
        charge_integral(blob, box, 0.0, 1, "impair"),
        charge_integral(blob, box, 0.0, -1, "impair"),
        original, flipped,
    )


# -- matter ----------------------------------------------------------------------------

def matter_stress_energy(particles, sigma=0.1):
    """Mollified matter stress-energy ``sum m u^a u^b / u^0 * G_sigma(x - z(t))``.

    The FieldMap value is a batch Multivector of shape (4,) whose entry
    ``alpha`` is the 1-form ``T^{alpha beta} gamma_beta``.
    """
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    norm = 1.0 / ((2 * np.pi) ** 1.5 * sigma ** 3)

    def value(x):
        t = x[0]
        T = np.zeros((4, 4))
        for part in particles:
            z = part.worldline.position_at(t)
            u = part.worldline.velocity_at(t)
            r2 = float(np.sum((x[1:] - z) ** 2))
            T += part.m * np.outer(u, u) / u[0] * norm * np.exp(-0.5 * r2 / sigma ** 2)
        return Multivector.vector(T * _ETA_DIAG[None, :])

    return FieldMap(value)


def total_momentum(particles, t):
    """Sum of ``m u`` at coordinate time ``t`` as the 1-form ``p^mu gamma_mu``."""
    p = np.zeros(4)
    for part in particles:
        p += part.m * part.worldline.velocity_at(t)
    return Multivector.vector(_lower(p))
