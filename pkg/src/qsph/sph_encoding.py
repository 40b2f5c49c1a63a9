"""Encoding of the SPH summation as an inner product of register states.

The classical approximation at a query point r is

    f(r) ~= sum_k f_k dx_k W(r - r_k, h)

over particles k with values f_k, widths dx_k and positions r_k. It is
split into two vectors: a = [f_k dx_k] and the kernel samples
W_k = W(r - r_k, h). Both are packed into unit-norm register states:

* |a> is a / ||a|| (real amplitudes), zero-padded to the register length.
* |W> scales each kernel sample by 1 / (c N) -- c = max |W| and N the
  register length -- so its magnitude fits inside the uniform amplitude
  budget 1/N, then adds a nonnegative imaginary closure term
  sqrt(1/N - (W_k / cN)^2) that makes every slot carry squared modulus
  exactly 1/N. Padding slots hold the pure-imaginary value i/sqrt(N).

The sum is then recovered from the overlap alone:

    sum_k f_k dx_k W_k = c N ||a|| Re <a|W>

which holds for ANY register length N >= particle count because the c N
factor cancels the 1 / (c N) scaling inside |W>. The imaginary closure
never leaks into the real part since |a> is real.

``classical_sph_sum`` performs the direct summation and is the ground
truth every encoded reconstruction is tested against.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .discretization import Domain, ParticleDiscretisation
from .kernels import KernelSpec, evaluate, scaling_constant
from .quantum_state import StateVector, inner_product, normalize


@dataclass(frozen=True)
class FunctionSamples:
    """Function values at the particle positions of a discretisation."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("samples must be a nonempty 1-D vector")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, disc: ParticleDiscretisation, f: Callable[[np.ndarray], np.ndarray],
                      boundary: str = "analytic") -> "FunctionSamples":
        """Sample f at all particle positions.

        boundary="analytic" evaluates f at the ghost positions as well
        (f extends beyond the domain); boundary="zero" forces ghost values
        to 0.
        """
        if boundary not in ("analytic", "zero"):
            raise ValueError(f"boundary must be 'analytic' or 'zero', got {boundary!r}")
        values = np.asarray(f(disc.positions), dtype=float).copy()
        if boundary == "zero" and disc.n_boundary_each_end > 0:
            nb = disc.n_boundary_each_end
            values[:nb] = 0.0
            values[disc.total_count - nb:] = 0.0
        return cls(values)


@dataclass(frozen=True)
class EncodedPair:
    """The two register states plus the classical scalars that undo them.

    ``norm_a`` may be the exact Euclidean norm of a or an approximation of
    it; ``state_a`` itself is always exactly normalized, so an approximate
    norm shows up purely as a multiplicative reconstruction error.
    ``padding`` counts the register slots beyond the particle count.
    """

    state_a: StateVector
    state_w: StateVector
    norm_a: float
    c: float
    n_register: int
    padding: int

    def __post_init__(self):
        if self.state_a.dim != self.state_w.dim:
            raise ValueError("encoded states must share the register length")
        if self.state_a.dim != self.n_register:
            raise ValueError("register length must match the state dimension")
        if not self.norm_a > 0.0 or not self.c > 0.0:
            raise ValueError("norm_a and c must be positive")


def register_length(count: int) -> int:
    """Smallest power of two >= count (the register holds 2^m amplitudes)."""
    if count < 1:
        raise ValueError("register must hold at least one value")
    return 1 << (count - 1).bit_length()


def build_a(disc: ParticleDiscretisation, samples: FunctionSamples,
            approx_norm: float | None = None) -> tuple[StateVector, float]:
    """Register state |a> = a / ||a|| for a = [f_k dx_k], zero-padded.

    With ``approx_norm`` set, the returned norm is that approximation (the
    state is still exactly normalized); otherwise the exact Euclidean norm.
    """
    values = samples.values
    if values.size != disc.total_count:
        raise ValueError(f"got {values.size} samples for {disc.total_count} particles")
    raw = values * disc.widths
    if not np.any(raw):
        raise ValueError("all-zero samples cannot be encoded as a state")
    padded = np.zeros(register_length(disc.total_count), dtype=complex)
    padded[:raw.size] = raw
    state, exact_norm = normalize(padded)
    if approx_norm is not None:
        if not approx_norm > 0.0:
            raise ValueError("approximate norm must be positive")
        return state, float(approx_norm)
    return state, exact_norm


def integral_norm_estimate(domain: Domain, f: Callable[[np.ndarray], np.ndarray],
                           n_subintervals: int, quadrature_points: int = 1001) -> float:
    """Integral approximation of ||a|| for a uniform N-subinterval grid:

        ||a||^2 = sum f_k^2 dx^2 ~= ((b - a) / N) * integral_a^b |f|^2 dx

    evaluated with composite trapezoid quadrature. Cheap relative to
    touching all N particle values, and increasingly accurate as N grows.
    """
    if quadrature_points < 2:
        raise ValueError("need at least 2 quadrature points")
    if n_subintervals < 1:
        raise ValueError("need at least 1 subinterval")
    xs = np.linspace(domain.a, domain.b, quadrature_points)
    fsq = np.asarray(f(xs), dtype=float) ** 2
    integral = float(np.trapezoid(fsq, xs))
    return float(np.sqrt(domain.length / n_subintervals * integral))


def build_w(disc: ParticleDiscretisation, spec: KernelSpec, eval_point: float,
            register_len: int) -> tuple[StateVector, float]:
    """Register state |W> holding the scaled kernel samples for one query point.

    Slot k carries W(eval_point - r_k, h) / (c N) plus the imaginary closure
    term that tops its squared modulus up to exactly 1/N; padding slots are
    purely imaginary i/sqrt(N). The state is unit-norm by construction.
    """
    count = disc.total_count
    if register_len < count:
        raise ValueError(f"register length {register_len} below particle count {count}")
    if register_len & (register_len - 1):
        raise ValueError(f"register length must be a power of two, got {register_len}")

    c = scaling_constant(spec)
    n = register_len
    scaled = evaluate(spec, eval_point - disc.positions) / (c * n)
    radicand = 1.0 / n - scaled ** 2
    # |W| <= c makes |scaled| <= 1/N, so the radicand cannot go negative
    assert radicand.min() >= 0.0, "kernel scaling must keep |W/(cN)| within 1/N"
    amps = np.full(n, 1j / np.sqrt(n), dtype=complex)
    amps[:count] = scaled + 1j * np.sqrt(radicand)
    return StateVector(amps), c


def encode(disc: ParticleDiscretisation, samples: FunctionSamples, spec: KernelSpec,
           eval_point: float, approx_norm: float | None = None) -> EncodedPair:
    """Build the full (|a>, |W>) pair for one query point."""
    state_a, norm_a = build_a(disc, samples, approx_norm)
    state_w, c = build_w(disc, spec, eval_point, state_a.dim)
    return EncodedPair(state_a, state_w, norm_a, c, state_a.dim,
                       padding=state_a.dim - disc.total_count)


def reconstruct(pair: EncodedPair, overlap_real: float | None = None) -> float:
    """Recover the SPH sum: c N ||a|| Re <a|W>.

    ``overlap_real`` substitutes an externally estimated Re <a|W> (from a
    sampled or phase-estimated readout); by default the overlap is computed
    exactly from the amplitudes.
    """
    if overlap_real is None:
        overlap_real = inner_product(pair.state_a, pair.state_w).real
    return pair.c * pair.n_register * pair.norm_a * float(overlap_real)


def classical_sph_sum(disc: ParticleDiscretisation, samples: FunctionSamples,
                      spec: KernelSpec, eval_point: float) -> float:
    """Direct summation sum_k f_k dx_k W(eval_point - r_k, h), all particles.

    This is the oracle the register encoding must reproduce.
    """
    values = samples.values
    if values.size != disc.total_count:
        raise ValueError(f"got {values.size} samples for {disc.total_count} particles")
    w = evaluate(spec, eval_point - disc.positions)
    return float(np.sum(values * disc.widths * w))
