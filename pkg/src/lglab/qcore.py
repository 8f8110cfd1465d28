"""Exact small-dimension complex linear algebra: states, operators, projectors.

Everything here is double precision and pure. States and operators are
immutable after construction and every operation returns a new value, so the
whole module is safe for concurrent use without synchronization.

Two tolerance regimes are used throughout:

* ``STRUCT_TOL`` (1e-12) for structural identities we compute ourselves
  (hermiticity, unitarity, projector algebra, norms after construction);
* ``INPUT_TOL`` (1e-9) for validating user-supplied data, which may carry
  accumulated rounding from whatever produced it.
"""

from __future__ import annotations

import numpy as np

STRUCT_TOL = 1e-12
INPUT_TOL = 1e-9


class DimensionMismatch(ValueError):
    """Raised when two objects live on Hilbert spaces of different dimension."""


def _check_dims(a, b):
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} vs {b.dim}")


class StateVector:
    """Normalized pure state over a small Hilbert space.

    By default inputs whose norm deviates from 1 by more than ``INPUT_TOL``
    are rejected; pass ``normalize=True`` to renormalize instead. Either way
    the stored amplitudes are divided by their exact norm, so
    ``sum(|amp|^2) == 1`` holds to ``STRUCT_TOL`` after construction.
    """

    __slots__ = ("amps",)

    def __init__(self, amps, normalize: bool = False):
        a = np.asarray(amps, dtype=complex).reshape(-1)
        if a.size == 0:
            raise ValueError("state must have at least one amplitude")
        if not np.all(np.isfinite(a)):
            raise ValueError("state amplitudes must be finite")
        norm = float(np.linalg.norm(a))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        if not normalize and abs(norm - 1.0) > INPUT_TOL:
            raise ValueError(
                f"state norm {norm!r} deviates from 1 by more than {INPUT_TOL}"
            )
        a = a / norm
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    def density(self) -> np.ndarray:
        """Pure-state density matrix |s><s| as a plain ndarray."""
        return np.outer(self.amps, self.amps.conj())

    def __repr__(self):
        return f"StateVector({self.amps.tolist()!r})"


class Operator:
    """Square complex matrix with a structural kind tag.

    ``kind`` is one of ``"hermitian"``, ``"unitary"`` or ``"general"``; the
    declared structure is verified at construction to ``STRUCT_TOL``.
    """

    __slots__ = ("entries", "kind")

    KINDS = ("hermitian", "unitary", "general")

    def __init__(self, entries, kind: str = "general"):
        m = np.asarray(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator must be a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        if kind not in self.KINDS:
            raise ValueError(f"unknown operator kind {kind!r}")
        if kind == "hermitian" and not np.allclose(m, m.conj().T, atol=STRUCT_TOL, rtol=0):
            raise ValueError("operator declared hermitian but M != M^dagger")
        if kind == "unitary":
            eye = np.eye(m.shape[0])
            if not np.allclose(m.conj().T @ m, eye, atol=STRUCT_TOL, rtol=0):
                raise ValueError("operator declared unitary but U^dagger U != I")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("Operator is immutable")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def dagger(self) -> "Operator":
        return Operator(self.entries.conj().T, kind=self.kind)

    def is_projector(self) -> bool:
        m = self.entries
        return bool(
            np.allclose(m, m.conj().T, atol=STRUCT_TOL, rtol=0)
            and np.allclose(m @ m, m, atol=STRUCT_TOL, rtol=0)
        )

    def __matmul__(self, other):
        if isinstance(other, Operator):
            if self.dim != other.dim:
                raise DimensionMismatch(f"dimension mismatch: {self.dim} vs {other.dim}")
            return Operator(self.entries @ other.entries)
        return NotImplemented

    def __repr__(self):
        return f"Operator({self.entries.tolist()!r}, kind={self.kind!r})"


def identity(dim: int) -> Operator:
    return Operator(np.eye(dim), kind="unitary")


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    _check_dims(a, b)
    return complex(np.vdot(a.amps, b.amps))


def apply(U: Operator, s: StateVector) -> StateVector:
    """Apply a unitary to a state; the output is exactly renormalized."""
    if U.kind != "unitary":
        raise ValueError("apply requires a unitary operator")
    _check_dims(U, s)
    return StateVector(U.entries @ s.amps, normalize=True)


def expectation(M: Operator, s: StateVector) -> float:
    """<s|M|s> for Hermitian M; the (vanishing) imaginary part is asserted away."""
    if M.kind != "hermitian" and not np.allclose(
        M.entries, M.entries.conj().T, atol=STRUCT_TOL, rtol=0
    ):
        raise ValueError("expectation requires a Hermitian operator")
    _check_dims(M, s)
    val = complex(np.vdot(s.amps, M.entries @ s.amps))
    if abs(val.imag) >= STRUCT_TOL:
        raise AssertionError(f"Hermitian expectation has imaginary part {val.imag}")
    return val.real


def born_probability(P: Operator, s: StateVector) -> float:
    """<s|P|s> for a projector P, clipped to [0, 1] within STRUCT_TOL."""
    if not P.is_projector():
        raise ValueError("born_probability requires a projector")
    _check_dims(P, s)
    p = expectation(Operator(P.entries, kind="hermitian"), s)
    if p < -STRUCT_TOL or p > 1.0 + STRUCT_TOL:
        raise AssertionError(f"Born probability {p} outside [0, 1]")
    return float(min(max(p, 0.0), 1.0))


def projector_onto(s: StateVector) -> Operator:
    """Rank-1 projector |s><s|."""
    return Operator(s.density(), kind="hermitian")


class DichotomicObservable:
    """Hermitian observable with spectrum {+1, -1}, stored as a projector pair.

    The pair must satisfy the full projector algebra (idempotent, mutually
    orthogonal, complete) and the reconstructed M = P_plus - P_minus squares
    to the identity; all checks at ``STRUCT_TOL``.
    """

    __slots__ = ("plus_proj", "minus_proj")

    def __init__(self, plus_proj: Operator, minus_proj: Operator):
        if plus_proj.dim != minus_proj.dim:
            raise DimensionMismatch("projector dimensions differ")
        for name, p in (("plus", plus_proj), ("minus", minus_proj)):
            if not p.is_projector():
                raise ValueError(f"{name} projector fails P^2 = P = P^dagger")
        pp, pm = plus_proj.entries, minus_proj.entries
        if not np.allclose(pp @ pm, 0.0, atol=STRUCT_TOL, rtol=0):
            raise ValueError("projectors are not mutually orthogonal")
        eye = np.eye(plus_proj.dim)
        if not np.allclose(pp + pm, eye, atol=STRUCT_TOL, rtol=0):
            raise ValueError("projectors do not sum to the identity")
        m = pp - pm
        if not np.allclose(m @ m, eye, atol=STRUCT_TOL, rtol=0):
            raise ValueError("reconstructed observable does not satisfy M^2 = I")
        object.__setattr__(self, "plus_proj", plus_proj)
        object.__setattr__(self, "minus_proj", minus_proj)

    def __setattr__(self, name, value):
        raise AttributeError("DichotomicObservable is immutable")

    @property
    def dim(self) -> int:
        return self.plus_proj.dim

    @property
    def labels(self):
        return (+1, -1)

    def projector(self, outcome: int) -> Operator:
        if outcome == +1:
            return self.plus_proj
        if outcome == -1:
            return self.minus_proj
        raise ValueError(f"outcome must be +1 or -1, got {outcome}")

    def operator(self) -> Operator:
        """M = P_plus - P_minus."""
        return Operator(self.plus_proj.entries - self.minus_proj.entries, kind="hermitian")


def dichotomic_from_hermitian(M: Operator) -> DichotomicObservable:
    """Build a DichotomicObservable from Hermitian M with M^2 = I via P_pm = (I pm M)/2."""
    m = M.entries
    if not np.allclose(m, m.conj().T, atol=STRUCT_TOL, rtol=0):
        raise ValueError("observable must be Hermitian")
    eye = np.eye(M.dim)
    if not np.allclose(m @ m, eye, atol=STRUCT_TOL, rtol=0):
        raise ValueError("observable must satisfy M^2 = I (eigenvalues +-1)")
    plus = Operator((eye + m) / 2.0, kind="hermitian")
    minus = Operator((eye - m) / 2.0, kind="hermitian")
    return DichotomicObservable(plus, minus)
