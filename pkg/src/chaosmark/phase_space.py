"""Phase space for iterated watermark embedding.

A phase point pairs an infinite sequence of bounded update vectors (the
strategy) with a finite media vector.  One application of the system map
consumes the head of the strategy: the media absorbs the first strategy
term and the strategy shifts left.  Strategies are eventually periodic,
stored as a finite prefix plus a tail that is either all-zero or a
repeating block; that representation is closed under shifting and lets
the strategy metric be evaluated in closed form.

Distances:

    d_inf(a, b)        sup-norm distance between two media vectors
    d_strategy(s, t)   (9/N) * sum_k d_inf(s_k, t_k) / 10^k
    d_phase(x, y)      d_inf on media plus d_strategy on strategies

The 10^-k weighting means the strategy distance encodes, decimal digit
by decimal digit, how deep the first disagreement between two
strategies lies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class DimensionMismatch(ValueError):
    """Vector or strategy dimensions do not agree."""


class BoundViolation(ValueError):
    """A strategy term leaves the configured [-N, N] component range."""


def as_vector(values, dim: int | None = None) -> np.ndarray:
    """Copy ``values`` into a read-only 1-D float64 array.

    Rejects empty vectors, non-finite components, and (when ``dim`` is
    given) length mismatches.
    """
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatch(
            f"expected a non-empty 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector components must be finite")
    if dim is not None and arr.size != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {arr.size}")
    arr.setflags(write=False)
    return arr


def zeros_vector(dim: int) -> np.ndarray:
    arr = np.zeros(dim, dtype=np.float64)
    arr.setflags(write=False)
    return arr


def basis_vector(dim: int, index: int, value: float = 1.0) -> np.ndarray:
    """Standard basis vector e_index scaled by ``value`` (0-based index)."""
    if not 0 <= index < dim:
        raise IndexError(f"basis index {index} out of range for dim {dim}")
    arr = np.zeros(dim, dtype=np.float64)
    arr[index] = value
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SpaceConfig:
    """Phase-space parameters.

    nv                media dimension (and strategy term dimension)
    bound_n           component bound N: strategy terms live in [-N, N]
    series_truncation terms kept by the truncated strategy-distance
                      evaluator (the exact evaluator ignores it)
    """

    nv: int
    bound_n: float = 10.0
    series_truncation: int = 64

    def __post_init__(self) -> None:
        if not isinstance(self.nv, int) or self.nv < 1:
            raise ValueError(f"nv must be a positive integer, got {self.nv!r}")
        if not (math.isfinite(self.bound_n) and self.bound_n > 0):
            raise ValueError(f"bound_n must be finite and positive, got {self.bound_n!r}")
        if not isinstance(self.series_truncation, int) or self.series_truncation < 1:
            raise ValueError("series_truncation must be a positive integer")


@dataclass(frozen=True, eq=False)
class Strategy:
    """Eventually periodic sequence of update vectors.

    ``prefix`` holds the leading terms explicitly.  ``tail`` is the
    repeating block that follows; an empty tail means the sequence is
    zero from the end of the prefix on.  Instances are immutable; all
    editing helpers return new strategies.
    """

    dim: int
    prefix: tuple[np.ndarray, ...] = ()
    tail: tuple[np.ndarray, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.dim, int) or self.dim < 1:
            raise DimensionMismatch(f"dim must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "prefix",
                           tuple(as_vector(t, self.dim) for t in self.prefix))
        object.__setattr__(self, "tail",
                           tuple(as_vector(t, self.dim) for t in self.tail))
        object.__setattr__(self, "_zero", zeros_vector(self.dim))

    # ---------- constructors ----------

    @classmethod
    def zero(cls, dim: int) -> Strategy:
        """The all-zero sequence."""
        return cls(dim=dim)

    @classmethod
    def from_terms(cls, terms, dim: int | None = None,
                   tail=()) -> Strategy:
        """Strategy with the given leading terms and optional repeating tail."""
        terms = [np.asarray(t, dtype=np.float64) for t in terms]
        tail = [np.asarray(t, dtype=np.float64) for t in tail]
        if dim is None:
            if terms:
                dim = len(terms[0])
            elif tail:
                dim = len(tail[0])
            else:
                raise DimensionMismatch("dim required when no terms are given")
        return cls(dim=dim, prefix=tuple(terms), tail=tuple(tail))

    # ---------- sequence access ----------

    @property
    def period(self) -> int:
        """Length of the repeating block (1 for the zero tail)."""
        return len(self.tail) if self.tail else 1

    def term(self, k: int) -> np.ndarray:
        """The k-th sequence element (0-based), total over all k >= 0."""
        if k < 0:
            raise IndexError(f"term index must be non-negative, got {k}")
        if k < len(self.prefix):
            return self.prefix[k]
        if self.tail:
            return self.tail[(k - len(self.prefix)) % len(self.tail)]
        return self._zero

    def terms(self, count: int) -> list[np.ndarray]:
        """The first ``count`` sequence elements."""
        return [self.term(k) for k in range(count)]

    def is_zero_tail(self) -> bool:
        return not self.tail

    # ---------- re-representation ----------

    def unroll(self, count: int) -> Strategy:
        """Materialize ``count`` tail terms into the prefix.

        Represents the same abstract sequence: term(k) is unchanged for
        every k.
        """
        if count < 0:
            raise ValueError("count must be non-negative")
        if count == 0:
            return self
        extra = tuple(self.term(len(self.prefix) + i) for i in range(count))
        if self.tail:
            rot = count % len(self.tail)
            new_tail = self.tail[rot:] + self.tail[:rot]
        else:
            new_tail = ()
        return Strategy(self.dim, self.prefix + extra, new_tail)

    def with_term(self, k: int, value) -> Strategy:
        """New strategy equal to this one except term k is ``value``.

        A tail term is first unrolled into the prefix so the change
        stays local to index k.
        """
        base = self
        if k >= len(base.prefix):
            base = base.unroll(k - len(base.prefix) + 1)
        new_prefix = list(base.prefix)
        new_prefix[k] = as_vector(value, self.dim)
        return Strategy(self.dim, tuple(new_prefix), base.tail)

    def max_abs(self) -> float:
        """Largest absolute component over prefix and tail."""
        out = 0.0
        for t in self.prefix + self.tail:
            if t.size:
                out = max(out, float(np.max(np.abs(t))))
        return out


def check_strategy_bounds(s: Strategy, bound_n: float,
                          context: str = "strategy") -> None:
    """Raise BoundViolation if any term component leaves [-N, N]."""
    worst = s.max_abs()
    if worst > bound_n:
        raise BoundViolation(
            f"{context} term component {worst!r} exceeds bound {bound_n!r}")


def shift(s: Strategy) -> Strategy:
    """Drop the first sequence element.

    With an empty prefix the periodic tail rotates by one; the zero
    strategy is a fixed point.
    """
    if s.prefix:
        return Strategy(s.dim, s.prefix[1:], s.tail)
    if s.tail:
        return Strategy(s.dim, (), s.tail[1:] + s.tail[:1])
    return s


def initial(s: Strategy) -> np.ndarray:
    """The first sequence element."""
    return s.term(0)


@dataclass(frozen=True, eq=False)
class PhasePoint:
    """A (strategy, media) pair; the state of the embedding system."""

    strategy: Strategy
    media: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "media", as_vector(self.media))
        if self.media.size != self.strategy.dim:
            raise DimensionMismatch(
                f"media dimension {self.media.size} does not match "
                f"strategy dimension {self.strategy.dim}")

    @property
    def dim(self) -> int:
        return self.strategy.dim


def apply_g(x: PhasePoint) -> PhasePoint:
    """One step of the embedding map: absorb the head strategy term.

    Returns (shift(S), S_0 + E) for x = (S, E).
    """
    media = x.strategy.term(0) + x.media
    return PhasePoint(shift(x.strategy), media)


def iterate_g(x: PhasePoint, n: int) -> PhasePoint:
    """n-fold composition of apply_g (n = 0 returns x unchanged)."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"iteration count must be a non-negative integer, got {n!r}")
    for _ in range(n):
        x = apply_g(x)
    return x


# ---------- metric ----------

def d_inf(a: np.ndarray, b: np.ndarray) -> float:
    """Sup-norm distance max_i |a_i - b_i| between equal-length vectors."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b)))


def _series_exact(s: Strategy, t: Strategy) -> Fraction:
    """sum_k d_inf(s_k, t_k) / 10^k as an exact rational.

    Past both prefixes the termwise distances repeat with period
    lcm(period_s, period_t), so the remaining series is one block
    scaled by the geometric factor 10^p / (10^p - 1).
    """
    head_len = max(len(s.prefix), len(t.prefix))
    p = math.lcm(s.period, t.period)
    total = Fraction(0)
    for k in range(head_len):
        dk = d_inf(s.term(k), t.term(k))
        if dk:
            total += Fraction(dk) / 10**k
    block = Fraction(0)
    for j in range(p):
        k = head_len + j
        dk = d_inf(s.term(k), t.term(k))
        if dk:
            block += Fraction(dk) / 10**k
    if block:
        total += block * 10**p / (10**p - 1)
    return total


def d_strategy(s: Strategy, t: Strategy, space: SpaceConfig) -> float:
    """Weighted series distance between two strategies, evaluated exactly.

    The value is (9/N) * sum_k d_inf(s_k, t_k) / 10^k.  Both sequences
    are eventually periodic, so the series is summed in exact rational
    arithmetic and rounded once on return; distances between distinct
    strategies that differ only hundreds of terms deep can still
    underflow to 0.0 in float64.
    """
    if s.dim != t.dim:
        raise DimensionMismatch(
            f"strategy dimensions differ: {s.dim} vs {t.dim}")
    scale = Fraction(9) / Fraction(float(space.bound_n))
    return float(scale * _series_exact(s, t))


def d_strategy_truncated(s: Strategy, t: Strategy,
                         space: SpaceConfig) -> tuple[float, float]:
    """Strategy distance summed term by term up to K = series_truncation.

    Returns (value, tail_bound).  Termwise distances never exceed 2N,
    so the discarded tail is at most (9/N) * 2N * 10^(1-K) / 9, i.e.
    2 * 10^(1-K).
    """
    if s.dim != t.dim:
        raise DimensionMismatch(
            f"strategy dimensions differ: {s.dim} vs {t.dim}")
    k_max = space.series_truncation
    acc = 0.0
    for k in range(k_max):
        acc += d_inf(s.term(k), t.term(k)) * 10.0 ** (-k)
    tail_bound = 2.0 * 10.0 ** (-(k_max - 1))
    return (9.0 / space.bound_n) * acc, tail_bound


def d_phase(x: PhasePoint, y: PhasePoint, space: SpaceConfig) -> float:
    """Phase-space distance: media sup-norm plus strategy series distance."""
    return d_inf(x.media, y.media) + d_strategy(x.strategy, y.strategy, space)
