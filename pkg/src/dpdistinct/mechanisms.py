"""Laplace noise, the exponential mechanism and the generalized exponential mechanism.

The generalized mechanism normalises each candidate's score by its own
sensitivity. Computing those scores naively is quadratic; here they come from
the upper envelope of the lines ``y = q_j + x * delta_j`` in O(m log m).
"""

from __future__ import annotations

import bisect
import dataclasses
import math
from typing import Sequence

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(master: int, index: int) -> int:
    """64-bit per-trial seed from a master seed and a counter (splitmix64 finaliser)."""
    z = (master + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class RandomSource:
    """Seeded stream of uniforms on the open interval (0, 1)."""

    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = int(seed)
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self, size: int | None = None):
        u = self.generator.random(size)
        if size is None:
            while u == 0.0:
                u = self.generator.random()
            return float(u)
        zero = u == 0.0
        while zero.any():
            u[zero] = self.generator.random(int(zero.sum()))
            zero = u == 0.0
        return u

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed})"


@dataclasses.dataclass(frozen=True)
class PrivacyParams:
    epsilon: float
    beta: float
    ell_max: int

    def __post_init__(self):
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise ValueError(f"epsilon must be positive, got {self.epsilon!r}")
        if not 0 < self.beta <= 0.5:
            raise ValueError(f"beta must lie in (0, 1/2], got {self.beta!r}")
        if int(self.ell_max) != self.ell_max or self.ell_max < 1:
            raise ValueError(f"ell_max must be a positive integer, got {self.ell_max!r}")


def sample_laplace(b: float, rng: RandomSource, size: int | None = None):
    """Laplace(0, b) by inverse CDF: density exp(-|x|/b)/(2b), variance 2b^2."""
    if not b > 0:
        raise ValueError(f"Laplace scale must be positive, got {b!r}")
    u = rng.uniform(size)
    if size is None:
        return b * math.log(2 * u) if u < 0.5 else -b * math.log(2 * (1 - u))
    return np.where(u < 0.5, b * np.log(2 * u), -b * np.log(2 * (1 - u)))


def laplace_offset(ell: int, epsilon: float, beta: float) -> float:
    """Shift that makes ``count + Laplace(2*ell/epsilon)`` exceed the count with probability beta."""
    return (2 * ell / epsilon) * math.log(1 / (2 * beta))


@dataclasses.dataclass(frozen=True)
class Envelope:
    """Upper envelope of lines, as pieces ``(slope, intercept)`` left to right.

    ``breakpoints[k]`` is where piece ``k`` hands over to piece ``k + 1``.
    ``lines[k]`` is the input index of piece ``k``.
    """

    pieces: tuple[tuple[float, float], ...]
    breakpoints: tuple[float, ...]
    lines: tuple[int, ...]

    def piece_at(self, x: float) -> int:
        # a point exactly on a breakpoint resolves to the left piece
        return bisect.bisect_left(self.breakpoints, x)

    def __call__(self, x: float) -> float:
        slope, intercept = self.pieces[self.piece_at(x)]
        return intercept + x * slope


def build_upper_envelope(lines: Sequence[tuple[float, float]]) -> Envelope:
    """Envelope of ``y = intercept + x * slope`` over ``(slope, intercept)`` pairs.

    Parallel lines keep the larger intercept, then the lower index. Lines that
    never strictly attain the maximum are dropped.
    """
    if not lines:
        raise ValueError("need at least one line")
    order = sorted(range(len(lines)), key=lambda j: (lines[j][0], -lines[j][1], j))
    stack: list[int] = []
    xs: list[float] = []  # xs[k] is where stack[k] meets stack[k + 1]
    for j in order:
        s, c = lines[j]
        if stack and lines[stack[-1]][0] == s:
            continue
        while stack:
            s0, c0 = lines[stack[-1]]
            x = (c0 - c) / (s - s0)
            if xs and x <= xs[-1]:
                stack.pop()
                xs.pop()
            else:
                break
        if stack:
            s0, c0 = lines[stack[-1]]
            xs.append((c0 - c) / (s - s0))
        stack.append(j)
    return Envelope(tuple((float(lines[j][0]), float(lines[j][1])) for j in stack),
                    tuple(xs), tuple(stack))


@dataclasses.dataclass(frozen=True)
class GemProblem:
    q: tuple[float, ...]
    delta: tuple[float, ...]
    t: float

    def __post_init__(self):
        if len(self.q) != len(self.delta) or not self.q:
            raise ValueError("q and delta must be non-empty and of equal length")
        if any(not d > 0 for d in self.delta):
            raise ValueError("sensitivities must be positive")

    @classmethod
    def for_gem(cls, q: Sequence[float], delta: Sequence[float],
                epsilon: float, beta: float) -> "GemProblem":
        m = len(q)
        return cls(tuple(map(float, q)), tuple(map(float, delta)),
                   (2 / epsilon) * math.log(m / beta))


def gem_scores_fast(p: GemProblem) -> list[float]:
    """Normalised scores ``s_i = min_j (a_i - a_j) / (delta_i + delta_j)``, ``a = q - t*delta``.

    ``s_i`` is the root of ``q_i - (s + t) delta_i = f(s - t)`` where ``f`` is
    the envelope of ``q_j + x delta_j``. A vectorised binary search over the
    breakpoints finds the piece holding the root; the closed form is then
    taken against that piece and its neighbours, which guards against a
    rounding-induced off-by-one near a breakpoint.
    """
    q = np.asarray(p.q, dtype=float)
    d = np.asarray(p.delta, dtype=float)
    t = p.t
    m = len(q)
    env = build_upper_envelope(list(zip(d.tolist(), q.tolist())))
    slopes = np.array([s for s, _ in env.pieces])
    inter = np.array([c for _, c in env.pieces])
    idx = np.asarray(env.lines)
    bps = np.asarray(env.breakpoints, dtype=float)
    n_pieces = len(slopes)

    # residual at the breakpoint x = bps[k] (i.e. s = bps[k] + t); decreasing in k
    f_at_bp = inter[:-1] + bps * slopes[:-1]
    lo = np.zeros(m, dtype=np.int64)
    hi = np.full(m, n_pieces - 1, dtype=np.int64)
    while True:
        open_ = lo < hi
        if not open_.any():
            break
        mid = (lo + hi) // 2
        mid_c = np.minimum(mid, max(n_pieces - 2, 0))
        g = q - (bps[mid_c] + 2 * t) * d - f_at_bp[mid_c] if n_pieces > 1 else np.zeros(m)
        right = open_ & (g > 0)
        left = open_ & ~(g > 0)
        lo = np.where(right, mid + 1, lo)
        hi = np.where(left, mid, hi)

    a = q - t * d
    best = np.zeros(m)  # the j = i term
    for shift in (-1, 0, 1):
        k = np.clip(lo + shift, 0, n_pieces - 1)
        j = idx[k]
        best = np.minimum(best, (a - a[j]) / (d + d[j]))
    return best.tolist()


def exponential_mechanism_sample(scores: Sequence[float], epsilon: float,
                                 rng: RandomSource, size: int | None = None):
    """Index ``i`` with probability proportional to ``exp(epsilon * s_i / 2)`` (0-based)."""
    s = np.asarray(scores, dtype=float)
    if s.size == 0:
        raise ValueError("need at least one score")
    w = 0.5 * epsilon * s
    cdf = np.cumsum(np.exp(w - w.max()))
    u = rng.uniform(size) * cdf[-1]
    out = np.minimum(np.searchsorted(cdf, u, side="right"), s.size - 1)
    return int(out) if size is None else out


def gem_select(q: Sequence[float], delta: Sequence[float], epsilon: float,
               beta: float, rng: RandomSource) -> int:
    """Generalized exponential mechanism; returns a 0-based candidate index."""
    if len(q) != len(delta):
        raise ValueError(f"q has {len(q)} entries but delta has {len(delta)}")
    problem = GemProblem.for_gem(q, delta, epsilon, beta)
    return exponential_mechanism_sample(gem_scores_fast(problem), epsilon, rng)
