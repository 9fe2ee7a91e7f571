"""Pydantic schemas for state vectors, operators and spectra.

Arrays are copied on construction and frozen, so instances can be shared
freely between workers.
"""

from typing import Annotated

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, model_validator

NORM_TOLERANCE = 1e-12
HERMITIAN_TOLERANCE = 1e-8
TRACE_TOLERANCE = 1e-6


def _frozen_complex(value: object) -> np.ndarray:
    array = np.array(value, dtype=np.complex128, copy=True)
    array.setflags(write=False)
    return array


def _frozen_real(value: object) -> np.ndarray:
    array = np.array(value, dtype=np.float64, copy=True)
    array.setflags(write=False)
    return array


ComplexArray = Annotated[np.ndarray, BeforeValidator(_frozen_complex)]
RealArray = Annotated[np.ndarray, BeforeValidator(_frozen_real)]


def composite_dimension(n_max: int) -> int:
    """Dimension of the two-mode, two-atom space truncated at n_max photons per mode."""
    return 4 * (n_max + 1) ** 2


def factor_dims(n_max: int) -> tuple[int, int, int, int]:
    """Tensor factor sizes (mode A, atom A, mode B, atom B)."""
    return (n_max + 1, 2, n_max + 1, 2)


class StateVector(BaseModel):
    """Normalized amplitudes over the composite product basis."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    amplitudes: ComplexArray = Field(description="Amplitudes indexed by the dense basis index")
    n_max: int = Field(ge=0, description="Photon truncation per mode")

    @model_validator(mode="after")
    def check_shape_and_norm(self) -> "StateVector":
        """Validate dimension and unit norm."""
        if self.amplitudes.shape != (composite_dimension(self.n_max),):
            raise ValueError(
                f"Expected {composite_dimension(self.n_max)} amplitudes for n_max={self.n_max}, "
                f"got shape {self.amplitudes.shape}"
            )
        norm = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"State is not normalized: squared norm {norm!r}")
        return self

    @classmethod
    def normalized(cls, amplitudes: object, n_max: int) -> "StateVector":
        """Build a state after rescaling the amplitudes to unit norm."""
        vector = np.asarray(amplitudes, dtype=np.complex128)
        norm = np.linalg.norm(vector)
        if norm == 0:
            raise ValueError("Cannot normalize the zero vector")
        return cls(amplitudes=vector / norm, n_max=n_max)

    @property
    def dimension(self) -> int:
        return self.amplitudes.shape[0]

    def overlap(self, other: "StateVector") -> complex:
        """Inner product <self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def projector(self) -> np.ndarray:
        """Outer product |psi><psi| as a plain array."""
        return np.outer(self.amplitudes, self.amplitudes.conj())


class MatrixOperator(BaseModel):
    """Dense square operator over the composite basis."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: ComplexArray = Field(description="Dense matrix entries")
    n_max: int = Field(ge=0, description="Photon truncation per mode")

    @model_validator(mode="after")
    def check_shape(self) -> "MatrixOperator":
        """Validate that the matrix matches the truncation."""
        dim = composite_dimension(self.n_max)
        if self.entries.shape != (dim, dim):
            raise ValueError(f"Expected a {dim}x{dim} matrix, got shape {self.entries.shape}")
        return self

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def hermiticity_defect(self) -> float:
        """Largest entry of |O - O^dagger|."""
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def __matmul__(self, other: "MatrixOperator") -> "MatrixOperator":
        return MatrixOperator(entries=self.entries @ other.entries, n_max=self.n_max)

    def __add__(self, other: "MatrixOperator") -> "MatrixOperator":
        return MatrixOperator(entries=self.entries + other.entries, n_max=self.n_max)

    def scaled(self, factor: complex) -> "MatrixOperator":
        """Return factor * O."""
        return MatrixOperator(entries=factor * self.entries, n_max=self.n_max)

    def dagger(self) -> "MatrixOperator":
        """Conjugate transpose."""
        return MatrixOperator(entries=self.entries.conj().T, n_max=self.n_max)


class DensityOperator(BaseModel):
    """Hermitian, unit-trace operator over a product of tensor factors."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: ComplexArray = Field(description="Dense matrix entries")
    dims: tuple[int, ...] = Field(description="Sizes of the tensor factors, in basis order")

    @model_validator(mode="after")
    def check_density(self) -> "DensityOperator":
        """Validate shape, Hermiticity and trace."""
        dim = int(np.prod(self.dims))
        if self.entries.shape != (dim, dim):
            raise ValueError(f"Expected a {dim}x{dim} matrix for dims {self.dims}")
        if np.max(np.abs(self.entries - self.entries.conj().T)) > HERMITIAN_TOLERANCE:
            raise ValueError("Density operator is not Hermitian")
        trace = complex(np.trace(self.entries))
        if abs(trace - 1.0) > TRACE_TOLERANCE:
            raise ValueError(f"Density operator trace is {trace!r}, expected 1")
        return self

    @classmethod
    def from_state(cls, state: StateVector) -> "DensityOperator":
        """Pure-state density operator |psi><psi|."""
        return cls(entries=state.projector(), dims=factor_dims(state.n_max))

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    @property
    def purity(self) -> float:
        """tr(rho^2)."""
        return float(np.real(np.sum(self.entries * self.entries.T)))

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues of the Hermitian part."""
        hermitian = 0.5 * (self.entries + self.entries.conj().T)
        return np.linalg.eigvalsh(hermitian)


class Spectrum(BaseModel):
    """Eigen-decomposition of a Hermitian operator."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eigenvalues: RealArray = Field(description="Ascending eigenvalues")
    eigenvectors: ComplexArray = Field(description="Unitary matrix, column k <-> eigenvalue k")

    @model_validator(mode="after")
    def check_consistency(self) -> "Spectrum":
        """Validate ordering and matching sizes."""
        dim = self.eigenvalues.shape[0]
        if self.eigenvectors.shape != (dim, dim):
            raise ValueError("Eigenvector matrix does not match the number of eigenvalues")
        if dim > 1 and np.any(np.diff(self.eigenvalues) < 0):
            raise ValueError("Eigenvalues must be ascending")
        return self

    def cluster(self, energy: float, tolerance: float) -> np.ndarray:
        """Eigenvectors whose eigenvalues lie within tolerance of energy."""
        mask = np.abs(self.eigenvalues - energy) <= tolerance
        return self.eigenvectors[:, mask]
