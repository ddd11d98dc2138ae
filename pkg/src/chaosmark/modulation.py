"""Spread-spectrum message modulation over a carrier family.

Three classical schemes are expressed as strategy builders for the
phase-space map: plain additive spread spectrum (ss), improved spread
spectrum with host-projection rejection (iss), and the normalized
host-rejecting variant (nw).  Each scheme turns (host, message,
carriers) into a finite strategy whose terms the embedding map adds to
the host one iteration at a time; the stego vector is the media
component after nc iterations.

Decoding is correlation against the same key-derived carriers: the
sign of the projection of the received vector onto carrier i yields
bit i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .phase_space import (
    DimensionMismatch,
    PhasePoint,
    SpaceConfig,
    Strategy,
    as_vector,
    check_strategy_bounds,
    iterate_g,
)

SCHEMES = ("ss", "iss", "nw")

_MAX_KEY = 2**64


class CarrierError(ValueError):
    """Carrier generation cannot satisfy the requested configuration."""


class ZeroProjectionError(ValueError):
    """Host is orthogonal to a carrier; the nw coefficient sign is undefined."""


@dataclass(frozen=True)
class SchemeConfig:
    """Embedding parameters shared by all schemes.

    nv             host/carrier dimension
    nc             number of carriers = message length in bits
    gamma          ss amplitude per carrier
    alpha          iss amplitude per carrier
    lam            iss host-rejection factor in [0, 1]
    eta            nw distortion factor (positive)
    key            64-bit unsigned seed for carrier generation
    orthonormalize Gram-Schmidt the carriers (requires nc <= nv)
    bound_n        strategy component bound N of the ambient phase space
    """

    nv: int
    nc: int
    gamma: float = 1.0
    alpha: float = 1.0
    lam: float = 1.0
    eta: float = 1.0
    key: int = 0
    orthonormalize: bool = True
    bound_n: float = 10.0

    def __post_init__(self) -> None:
        if not isinstance(self.nv, int) or self.nv < 1:
            raise ValueError(f"nv must be a positive integer, got {self.nv!r}")
        if not isinstance(self.nc, int) or self.nc < 1:
            raise ValueError(f"nc must be a positive integer, got {self.nc!r}")
        if self.orthonormalize and self.nc > self.nv:
            raise CarrierError(
                f"cannot orthonormalize {self.nc} carriers in dimension {self.nv}")
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError(f"gamma must be positive, got {self.gamma!r}")
        if not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha!r}")
        if not (0.0 <= self.lam <= 1.0):
            raise ValueError(f"lam must lie in [0, 1], got {self.lam!r}")
        if not (math.isfinite(self.eta) and self.eta > 0):
            raise ValueError(f"eta must be positive, got {self.eta!r}")
        if not isinstance(self.key, int) or not 0 <= self.key < _MAX_KEY:
            raise ValueError("key must be an unsigned 64-bit integer")
        if not (math.isfinite(self.bound_n) and self.bound_n > 0):
            raise ValueError(f"bound_n must be positive, got {self.bound_n!r}")

    def space(self) -> SpaceConfig:
        """Phase-space configuration this scheme embeds into."""
        return SpaceConfig(nv=self.nv, bound_n=self.bound_n)


@dataclass(frozen=True, eq=False)
class CarrierSet:
    """nc carrier vectors of dimension nv, one per message bit."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=np.float64)
        if mat.ndim != 2 or mat.shape[0] < 1 or mat.shape[1] < 1:
            raise CarrierError(f"expected a (nc, nv) matrix, got shape {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise CarrierError("carrier components must be finite")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def nc(self) -> int:
        return self.matrix.shape[0]

    @property
    def nv(self) -> int:
        return self.matrix.shape[1]

    def __len__(self) -> int:
        return self.nc

    def __getitem__(self, i: int) -> np.ndarray:
        return self.matrix[i]


def as_message(bits, nc: int | None = None) -> np.ndarray:
    """Validate a bit sequence and return it as a read-only uint8 array."""
    arr = np.array(list(bits), dtype=np.int64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("message must be a non-empty bit sequence")
    if not np.all((arr == 0) | (arr == 1)):
        raise ValueError("message bits must be 0 or 1")
    if nc is not None and arr.size != nc:
        raise ValueError(f"message length {arr.size} does not match nc {nc}")
    out = arr.astype(np.uint8)
    out.setflags(write=False)
    return out


def _signs(m: np.ndarray) -> np.ndarray:
    # bit 0 -> +1, bit 1 -> -1
    return 1.0 - 2.0 * np.asarray(m, dtype=np.float64)


def generate_carriers(cfg: SchemeConfig) -> CarrierSet:
    """Draw the carrier family deterministically from cfg.key.

    Components come from a counter-based keyed generator, so the same
    (key, nv, nc, orthonormalize) always reproduces the same carriers.
    With orthonormalize set the rows are Gram-Schmidt orthonormalized
    (two passes, for numerical orthogonality well under 1e-9).
    """
    if cfg.orthonormalize and cfg.nc > cfg.nv:
        raise CarrierError(
            f"cannot orthonormalize {cfg.nc} carriers in dimension {cfg.nv}")
    rng = np.random.Generator(np.random.Philox(key=cfg.key))
    mat = rng.standard_normal((cfg.nc, cfg.nv))
    if cfg.orthonormalize:
        for i in range(cfg.nc):
            v = mat[i]
            for _ in range(2):
                for j in range(i):
                    v = v - (v @ mat[j]) * mat[j]
            norm = float(np.linalg.norm(v))
            if norm < 1e-12:
                raise CarrierError("drawn carriers are not linearly independent")
            mat[i] = v / norm
    return CarrierSet(mat)


# ---------- strategy builders ----------

def ss_watermark(m, c: CarrierSet, cfg: SchemeConfig) -> np.ndarray:
    """Additive spread-spectrum mark: sum_i gamma * (-1)^{m_i} * u_i."""
    bits = as_message(m, c.nc)
    w = (cfg.gamma * _signs(bits)) @ c.matrix
    w.setflags(write=False)
    return w


def ss_strategy(m, c: CarrierSet, cfg: SchemeConfig) -> Strategy:
    """Plain spread spectrum: term i is gamma * (-1)^{m_i} * u_i, then zeros."""
    bits = as_message(m, c.nc)
    terms = [s * cfg.gamma * u for s, u in zip(_signs(bits), c.matrix)]
    out = Strategy.from_terms(terms, dim=c.nv)
    check_strategy_bounds(out, cfg.bound_n,
                          context="ss term (gamma inconsistent with bound_n)")
    return out


def _squared_norms(c: CarrierSet) -> np.ndarray:
    norms2 = np.einsum("ij,ij->i", c.matrix, c.matrix)
    if np.any(norms2 == 0.0):
        raise CarrierError("zero-norm carrier")
    return norms2


def iss_strategy(x, m, c: CarrierSet, cfg: SchemeConfig) -> Strategy:
    """Improved spread spectrum.

    Term i is c_i * u_i with
        c_i = (-1)^{m_i} * alpha - lam * <x, u_i> / ||u_i||^2
    so at lam = 1 (orthonormal carriers) the host component along each
    carrier is fully replaced by the message amplitude.
    """
    host = as_vector(x, c.nv)
    bits = as_message(m, c.nc)
    norms2 = _squared_norms(c)
    proj = c.matrix @ host
    coef = _signs(bits) * cfg.alpha - cfg.lam * proj / norms2
    out = Strategy.from_terms([ci * u for ci, u in zip(coef, c.matrix)], dim=c.nv)
    check_strategy_bounds(out, cfg.bound_n,
                          context="iss term (alpha/lam inconsistent with bound_n)")
    return out


def nw_strategy(x, m, c: CarrierSet, cfg: SchemeConfig) -> Strategy:
    """Normalized host-rejecting scheme.

    Term i is c_i * u_i with
        c_i = -(1 + eta * (-1)^{m_i} * sign(<x, u_i>)) * <x, u_i> / ||u_i||^2
    which flips the host projection onto carrier i to the side selected
    by bit i, with magnitude eta * |<x, u_i>|.  Hosts orthogonal to any
    carrier are rejected (the coefficient sign would be undefined).
    """
    host = as_vector(x, c.nv)
    bits = as_message(m, c.nc)
    norms2 = _squared_norms(c)
    proj = c.matrix @ host
    if np.any(proj == 0.0):
        bad = int(np.nonzero(proj == 0.0)[0][0])
        raise ZeroProjectionError(
            f"host is orthogonal to carrier {bad}; nw cannot encode against it")
    coef = -(1.0 + cfg.eta * _signs(bits) * np.sign(proj)) * proj / norms2
    out = Strategy.from_terms([ci * u for ci, u in zip(coef, c.matrix)], dim=c.nv)
    check_strategy_bounds(out, cfg.bound_n,
                          context="nw term (eta/host inconsistent with bound_n)")
    return out


def watermark_strategy(scheme: str, x, m, c: CarrierSet,
                       cfg: SchemeConfig) -> Strategy:
    """Dispatch to the scheme's strategy builder (ss ignores the host)."""
    if scheme == "ss":
        return ss_strategy(m, c, cfg)
    if scheme == "iss":
        return iss_strategy(x, m, c, cfg)
    if scheme == "nw":
        return nw_strategy(x, m, c, cfg)
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")


# ---------- embed / decode ----------

def embed(x, m, c: CarrierSet, cfg: SchemeConfig, scheme: str) -> np.ndarray:
    """Embed message m into host x by running the phase-space map.

    The scheme's strategy seeds a phase point (strategy, x); nc
    applications of the map absorb one term per step, and the media
    component of the final point is the stego vector.

    Returns the stego vector (read-only, same dimension as x).
    """
    host = as_vector(x, cfg.nv)
    if c.nv != cfg.nv or c.nc != cfg.nc:
        raise DimensionMismatch(
            f"carriers are ({c.nc}, {c.nv}) but config expects ({cfg.nc}, {cfg.nv})")
    strategy = watermark_strategy(scheme, host, m, c, cfg)
    start = PhasePoint(strategy, host)
    return iterate_g(start, cfg.nc).media


@dataclass(frozen=True, eq=False)
class DecodeResult:
    """Recovered bits plus the carrier indices that decoded from a tie.

    A tie (projection exactly zero) carries no sign information; such
    bits decode to 0 and their indices are listed in ``ties``.
    """

    bits: np.ndarray
    ties: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", as_message(self.bits))
        object.__setattr__(self, "ties", tuple(int(i) for i in self.ties))


def decode(y, c: CarrierSet, cfg: SchemeConfig, scheme: str) -> DecodeResult:
    """Recover the message from a received vector by projection signs.

    ss/iss place bit 0 on the positive side of each carrier; nw places
    bit 0 on the negative side (it flips the host projection).
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    received = as_vector(y, c.nv)
    proj = c.matrix @ received
    if scheme == "nw":
        bits = np.where(proj < 0.0, 0, np.where(proj > 0.0, 1, 0))
    else:
        bits = np.where(proj > 0.0, 0, np.where(proj < 0.0, 1, 0))
    ties = tuple(int(i) for i in np.nonzero(proj == 0.0)[0])
    return DecodeResult(bits=bits.astype(np.uint8), ties=ties)
