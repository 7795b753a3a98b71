"""Deterministic, counter-based pseudorandom generator.

Every randomized routine in the package draws from :class:`Rng`, which is a
counter-based variant of the splitmix64 generator.  The algorithm is fixed so
that results are reproducible bit-for-bit across runs and easy to port:

* finalizer ``mix64``: ``z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
  z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31`` (all mod 2**64),
* stream state ``s0 = mix64(mix64(seed) + stream)``,
* i-th output (i >= 1) ``u64_i = mix64(s0 + i * 0x9E3779B97F4A7C15)``.

Uniform doubles take the top 53 bits: ``(u >> 11) * 2**-53``.  Normals are
produced from consecutive uniform pairs by the Box-Muller transform.  A
``(seed, stream)`` pair names an independent sequence; batched trials use
stream = trial index so that enlarging a trial budget never perturbs the
draws of earlier trials.
"""

import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB

_U = np.uint64


def _mix64_int(x: int) -> int:
    x &= _MASK
    x = ((x ^ (x >> 30)) * _MUL1) & _MASK
    x = ((x ^ (x >> 27)) * _MUL2) & _MASK
    return x ^ (x >> 31)


def _mix64(z: np.ndarray) -> np.ndarray:
    # uint64 arithmetic wraps mod 2**64, matching _mix64_int
    z = (z ^ (z >> _U(30))) * _U(_MUL1)
    z = (z ^ (z >> _U(27))) * _U(_MUL2)
    return z ^ (z >> _U(31))


class Rng:
    """Seeded deterministic generator; see module docstring for the algorithm.

    Parameters
    ----------
    seed : int
        64-bit master seed.
    stream : int, optional
        Independent stream index (trial / sample number).
    """

    def __init__(self, seed: int, stream: int = 0):
        self._s0 = _mix64_int((_mix64_int(int(seed)) + int(stream)) & _MASK)
        self._count = 0

    def u64(self, count: int) -> np.ndarray:
        """Next `count` raw 64-bit words."""
        idx = np.arange(self._count + 1, self._count + count + 1, dtype=_U)
        self._count += count
        return _mix64(_U(self._s0) + idx * _U(_GOLDEN))

    def uniform(self, count: int) -> np.ndarray:
        """Doubles in [0, 1)."""
        return (self.u64(count) >> _U(11)).astype(np.float64) * 2.0**-53

    def standard_normal(self, count: int) -> np.ndarray:
        """Standard normals via Box-Muller."""
        u1 = ((self.u64(count) >> _U(11)).astype(np.float64) + 1.0) * 2.0**-53
        u2 = self.uniform(count)
        return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)

    def complex_normal(self, shape) -> np.ndarray:
        """Standard complex normals, E|z|^2 = 1."""
        count = int(np.prod(shape)) if not np.isscalar(shape) else int(shape)
        x = self.standard_normal(count)
        y = self.standard_normal(count)
        z = (x + 1j * y) / np.sqrt(2.0)
        return z.reshape(shape)

    def unit_vector(self, n: int) -> np.ndarray:
        z = self.complex_normal(n)
        return z / np.linalg.norm(z)

    def unitary(self, n: int) -> np.ndarray:
        """Haar-like unitary: QR of a complex Gaussian with positive R diagonal."""
        q, r = np.linalg.qr(self.complex_normal((n, n)))
        d = np.diagonal(r)
        phase = d / np.abs(d)
        return q * phase.conj()

    def orthonormal(self, n: int, d: int) -> np.ndarray:
        """n x d matrix with orthonormal columns."""
        return self.unitary(n)[:, :d]

    def symmetric(self, n: int) -> np.ndarray:
        """Random complex symmetric matrix (Gaussian entries)."""
        m = self.complex_normal((n, n))
        return (m + m.T) / 2.0
