"""
Clifford algebra Cl(1,3) with metric diag(+1, -1, -1, -1).

A multivector is stored as 16 real coefficients indexed by blade bitmask:
bit ``mu`` set means the blade contains the factor gamma^mu, factors taken in
ascending index order. ``coeffs[0]`` is the scalar part and ``coeffs[0b1111]``
multiplies the pseudoscalar gamma^5 = gamma^0 gamma^1 gamma^2 gamma^3.

Coefficient arrays may carry leading batch dimensions, ``(..., 16)``; every
operation broadcasts over them.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericError

__all__ = [
    "ETA", "NBLADES", "GRADE", "Multivector",
    "blade_product_naive", "blade_product_table",
    "geometric_product", "outer", "left_contract", "scalar_product",
    "reverse", "grade_project", "gamma", "gamma_lower", "G5", "ONE",
]

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
_ETA_DIAG = (1, -1, -1, -1)
NBLADES = 16

GRADE = np.array([bin(b).count("1") for b in range(NBLADES)])
_REVERSE_SIGN = np.array([(-1) ** (g * (g - 1) // 2) for g in GRADE], dtype=float)


def _reorder_sign(a, b):
    # parity of the swaps needed to merge the factors of b past those of a
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def _metric_sign(common):
    s = 1
    for mu in range(4):
        if common >> mu & 1:
            s *= _ETA_DIAG[mu]
    return s


def blade_product_table():
    """Return ``(index, sign)`` arrays of shape (16, 16) for blade products.

    ``e_a e_b = sign[a, b] * e_{index[a, b]}``.
    """
    index = np.empty((NBLADES, NBLADES), dtype=int)
    sign = np.empty((NBLADES, NBLADES), dtype=float)
    for a in range(NBLADES):
        for b in range(NBLADES):
            index[a, b] = a ^ b
            sign[a, b] = _reorder_sign(a, b) * _metric_sign(a & b)
    return index, sign


def blade_product_naive(a, b):
    """Multiply two basis blades symbol by symbol.

    The factor lists are concatenated and bubble-sorted; every adjacent swap
    of distinct factors flips the sign and every adjacent equal pair is
    contracted with the metric. Independent of the bit-twiddling table and
    used to verify it.
    """
    factors = [mu for mu in range(4) if a >> mu & 1] + [mu for mu in range(4) if b >> mu & 1]
    sign = 1
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(factors) - 1:
            if factors[i] > factors[i + 1]:
                factors[i], factors[i + 1] = factors[i + 1], factors[i]
                sign = -sign
                changed = True
            elif factors[i] == factors[i + 1]:
                sign *= _ETA_DIAG[factors[i]]
                del factors[i:i + 2]
                changed = True
                continue
            i += 1
    mask = 0
    for mu in factors:
        mask |= 1 << mu
    return mask, sign


_INDEX, _SIGN = blade_product_table()


def _dense(select):
    # (256, 16) matrix M with (a (x) b).ravel() @ M == product restricted to `select`
    m = np.zeros((NBLADES * NBLADES, NBLADES))
    for a in range(NBLADES):
        for b in range(NBLADES):
            if select(a, b):
                m[a * NBLADES + b, _INDEX[a, b]] = _SIGN[a, b]
    return m


_GP = _dense(lambda a, b: True)
# blade-level forms of <A_p B_q>_{p+q} and <A_p B_q>_{q-p}
_OUTER = _dense(lambda a, b: a & b == 0)
_LEFT = _dense(lambda a, b: a & b == a)


def _bilinear(matrix, a, b):
    outer_ab = a[..., :, None] * b[..., None, :]
    shape = outer_ab.shape[:-2]
    return (outer_ab.reshape(shape + (NBLADES * NBLADES,)) @ matrix)


class Multivector:
    """An element of Cl(1,3); immutable.

    Supports ``+``, ``-``, scalar ``*`` and ``/``, ``a * b`` (geometric
    product), ``a ^ b`` (outer product) and ``a << b`` (left contraction).
    """

    __slots__ = ("coeffs",)
    __array_priority__ = 100  # keep numpy scalars from hijacking __rmul__

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=float)
        if arr.ndim == 0 or arr.shape[-1] != NBLADES:
            raise ValueError(f"expected trailing dimension 16, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise NumericError("multivector coefficients must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @classmethod
    def zero(cls, batch=()):
        return cls(np.zeros(tuple(batch) + (NBLADES,)))

    @classmethod
    def scalar(cls, value):
        c = np.zeros(NBLADES)
        c[0] = value
        return cls(c)

    @classmethod
    def blade(cls, mask, value=1.0):
        c = np.zeros(NBLADES)
        c[mask] = value
        return cls(c)

    @classmethod
    def vector(cls, components):
        """Grade-1 element ``components[mu] * gamma^mu`` (covariant components)."""
        comps = np.asarray(components, dtype=float)
        c = np.zeros(comps.shape[:-1] + (NBLADES,))
        for mu in range(4):
            c[..., 1 << mu] = comps[..., mu]
        return cls(c)

    # -- structure -----------------------------------------------------------
    @property
    def shape(self):
        return self.coeffs.shape[:-1]

    def __getitem__(self, key):
        return Multivector(self.coeffs[key])

    def grade(self, p):
        return grade_project(self, p)

    def reverse(self):
        return reverse(self)

    @property
    def scalar_part(self):
        return self.coeffs[..., 0]

    def vector_components(self):
        """Covariant components ``a_mu`` of the grade-1 part, ``a = a_mu gamma^mu``."""
        return np.stack([self.coeffs[..., 1 << mu] for mu in range(4)], axis=-1)

    def grades(self, tol=0.0):
        """Set of grades whose coefficients exceed ``tol`` in absolute value."""
        return {int(g) for g in range(5)
                if np.any(np.abs(self.coeffs[..., GRADE == g]) > tol)}

    def norm(self):
        """Euclidean norm of the coefficient vector."""
        return np.linalg.norm(self.coeffs, axis=-1)

    def isclose(self, other, atol=1e-12, rtol=0.0):
        other = _as_mv(other)
        return bool(np.allclose(self.coeffs, other.coeffs, atol=atol, rtol=rtol))

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = _as_mv(other)
        return Multivector(self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_mv(other)
        return Multivector(self.coeffs - other.coeffs)

    def __rsub__(self, other):
        return _as_mv(other) - self

    def __neg__(self):
        return Multivector(-self.coeffs)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return Multivector(self.coeffs * _scalar_factor(other, self))

    def __rmul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(other, self)
        return Multivector(self.coeffs * _scalar_factor(other, self))

    def __truediv__(self, other):
        if isinstance(other, Multivector):
            raise TypeError("division by a multivector is not supported")
        return Multivector(self.coeffs / _scalar_factor(other, self))

    def __xor__(self, other):
        return outer(self, other)

    def __lshift__(self, other):
        return left_contract(self, other)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(np.all(self.coeffs == other.coeffs))

    __hash__ = None

    def __repr__(self):
        if self.coeffs.ndim > 1:
            return f"Multivector(batch={self.shape})"
        terms = []
        for b in range(NBLADES):
            v = self.coeffs[b]
            if v != 0.0:
                name = "" if b == 0 else "*g" + "".join(str(mu) for mu in range(4) if b >> mu & 1)
                terms.append(f"{v:g}{name}")
        return "Multivector(" + (" + ".join(terms) if terms else "0") + ")"


def _scalar_factor(x, mv):
    x = np.asarray(x, dtype=float)
    # batched scalars broadcast against the blade axis
    return x[..., None] if x.ndim else x


def _as_mv(x):
    if isinstance(x, Multivector):
        return x
    x = np.asarray(x, dtype=float)
    c = np.zeros(x.shape + (NBLADES,))
    c[..., 0] = x
    return Multivector(c)


def geometric_product(a, b):
    a, b = _as_mv(a), _as_mv(b)
    return Multivector(_bilinear(_GP, a.coeffs, b.coeffs))


def outer(a, b):
    """Exterior product: sum over grades of ``<A_p B_q>_{p+q}``."""
    a, b = _as_mv(a), _as_mv(b)
    return Multivector(_bilinear(_OUTER, a.coeffs, b.coeffs))


def left_contract(a, b):
    """Left contraction: sum over grades of ``<A_p B_q>_{q-p}`` (zero for p > q)."""
    a, b = _as_mv(a), _as_mv(b)
    return Multivector(_bilinear(_LEFT, a.coeffs, b.coeffs))


def scalar_product(a, b):
    """``<reverse(a) b>_0``; for equal-grade blades this is the metric inner product."""
    a, b = _as_mv(a), _as_mv(b)
    # <e_a~ e_b>_0 is non-zero only for a == b
    self_sign = np.array([_REVERSE_SIGN[k] * _SIGN[k, k] for k in range(NBLADES)])
    return np.sum(a.coeffs * b.coeffs * self_sign, axis=-1)


def reverse(a):
    a = _as_mv(a)
    return Multivector(a.coeffs * _REVERSE_SIGN)


def grade_project(a, p):
    if not isinstance(p, (int, np.integer)) or not 0 <= p <= 4:
        raise ValueError(f"grade must be an integer in 0..4, got {p!r}")
    a = _as_mv(a)
    return Multivector(np.where(GRADE == p, a.coeffs, 0.0))


def gamma(mu):
    """Basis 1-form gamma^mu = dx^mu."""
    return Multivector.blade(1 << mu)


def gamma_lower(mu):
    """Reciprocal basis gamma_mu = eta_{mu nu} gamma^nu."""
    return Multivector.blade(1 << mu, _ETA_DIAG[mu])


G5 = Multivector.blade(0b1111)
ONE = Multivector.scalar(1.0)
