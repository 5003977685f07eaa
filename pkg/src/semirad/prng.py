"""Counter-based deterministic pseudo-random streams.

The generator is SplitMix64: output k of a stream with base b is
``mix64(b + (k + 1) * GAMMA)`` where ``mix64`` is the standard 64-bit
finalizer.  Streams are addressed by a seed plus a tuple of labels hashed
with FNV-1a, so adding a new labelled stream never perturbs existing ones,
and regeneration from (seed, labels, position) is exact.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3

_U_GAMMA = np.uint64(_GAMMA)
_C1 = np.uint64(0xBF58476D1CE4E5B9)
_C2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = float(2.0**-53)


def mix64(x: int) -> int:
    """SplitMix64 finalizer on python ints (reference path)."""
    z = x & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def fnv1a(text: str) -> int:
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & _MASK
    return h


def derive_seed(base: int, *parts) -> int:
    """Deterministically combine a base seed with labels/indices into a seed."""
    state = mix64(base & _MASK)
    for part in parts:
        if isinstance(part, str):
            val = fnv1a(part)
        else:
            val = int(part) & _MASK
        state = mix64((state ^ val) + _GAMMA & _MASK)
    return state


def _mix64_vec(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _S30)) * _C1
    z = (z ^ (z >> _S27)) * _C2
    return z ^ (z >> _S31)


class Stream:
    """A named, position-counted stream of deterministic draws."""

    def __init__(self, seed: int, *labels):
        self.base = derive_seed(seed, *labels)
        self.pos = 0

    def raw(self, count: int) -> np.ndarray:
        idx = np.arange(self.pos + 1, self.pos + count + 1, dtype=np.uint64)
        self.pos += count
        return _mix64_vec(np.uint64(self.base) + idx * _U_GAMMA)

    def uniforms(self, count: int) -> np.ndarray:
        """Uniform doubles in (0, 1]."""
        return ((self.raw(count) >> _S11) + np.uint64(1)).astype(np.float64) * _INV53

    def gaussians(self, count: int) -> np.ndarray:
        """Standard normals via Box-Muller."""
        pairs = (count + 1) // 2
        u1 = self.uniforms(pairs)
        u2 = self.uniforms(pairs)
        r = np.sqrt(-2.0 * np.log(u1))
        ang = (2.0 * np.pi) * u2
        out = np.concatenate([r * np.cos(ang), r * np.sin(ang)])
        return out[:count]

    def complex_gaussians(self, *shape: int) -> np.ndarray:
        """Standard complex normals (unit total variance), any shape."""
        n = int(np.prod(shape)) if shape else 1
        re = self.gaussians(n)
        im = self.gaussians(n)
        return ((re + 1j * im) / np.sqrt(2.0)).reshape(shape)


def unitary_from_gaussian(g: np.ndarray) -> np.ndarray:
    """Deterministic unitary via two-pass modified Gram-Schmidt on g."""
    n = g.shape[0]
    q = np.array(g, dtype=np.complex128, copy=True)
    for _ in range(2):
        for j in range(n):
            for i in range(j):
                q[:, j] -= (q[:, i].conj() @ q[:, j]) * q[:, i]
            nrm = float(np.linalg.norm(q[:, j]))
            if nrm < 1e-12:
                # essentially-dependent draw: fall back to a basis vector
                q[:, j] = 0.0
                q[j, j] = 1.0
                for i in range(j):
                    q[:, j] -= (q[:, i].conj() @ q[:, j]) * q[:, i]
                nrm = float(np.linalg.norm(q[:, j]))
            q[:, j] /= nrm
    return q
