"""Random generation of executions, deterministic across platforms.

Two samplers: the states-and-cliques chain (infinite-execution prefixes
under the uniform measure) and an exactly uniform sampler over the
executions of one length, driven by big-integer path counts so no
probability is ever represented in floating point.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import EmptySet, TraceSysError
from .graphs import StateCliqueGraph, build_adsc
from .measure import UniformMeasure
from .monoid import Clique
from .system import ConcurrentSystem

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z &= _MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """64-bit-state PRNG with streams hashed from (seed, stream id).

    The generator is fully specified here so that identical inputs give
    identical samples on every platform and Python version.
    """

    def __init__(self, seed: int, stream: int = 0):
        self._state = _mix64(_mix64(seed) ^ _mix64((stream + 1) * _GOLDEN))

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return _mix64(self._state)

    def random(self) -> float:
        """Uniform in [0, 1) with 53 bits."""
        return (self.next_u64() >> 11) / 9007199254740992.0

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased, for arbitrary-size n."""
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        bits = n.bit_length()
        words = (bits + 63) // 64
        while True:
            x = 0
            for _ in range(words):
                x = x << 64 | self.next_u64()
            x >>= 64 * words - bits
            if x < n:
                return x


@dataclass(frozen=True)
class SampledExecution:
    start: str
    nodes: tuple[tuple[str, Clique], ...]
    trace: tuple[str, ...]
    seed: int


def sample_mcsc(
    measure: UniformMeasure, start: str, steps: int, seed: int
) -> SampledExecution:
    """Prefix of an infinite execution: ``steps`` cliques of its normal form.

    The first node follows the initial law at ``start``; the rest follow
    the transition matrix.  Inverse-CDF over the canonical node order.
    """
    system = measure.system
    system.state_index(start)
    dsc = measure.dsc
    rng = SplitMix64(seed)

    start_nodes = [i for i, (s, _c) in enumerate(dsc.nodes) if s == start]
    weights = np.array([measure.h[s][c] for i in start_nodes
                        for (s, c) in [dsc.nodes[i]]])
    cum_rows = np.cumsum(measure.transition, axis=1)

    nodes: list[int] = []
    if steps > 0:
        v = start_nodes[_draw(np.cumsum(weights), rng.random())]
        nodes.append(v)
        for _ in range(steps - 1):
            v = _draw(cum_rows[v], rng.random())
            nodes.append(v)
    chosen = tuple(dsc.nodes[v] for v in nodes)
    trace = tuple(a for _s, c in chosen for a in c.letters)
    return SampledExecution(start=start, nodes=chosen, trace=trace, seed=seed)


def _draw(cumulative: np.ndarray, u: float) -> int:
    i = int(np.searchsorted(cumulative, u, side="right"))
    if i >= len(cumulative):
        i = int(np.flatnonzero(np.diff(np.concatenate(([0.0], cumulative))))[-1])
    return i


class UniformExecutionSampler:
    """Exactly uniform sampler over executions of a fixed length.

    Backward sampling on the augmented-graph path counts: node weights are
    big integers, draws are unbiased integer draws, no float probabilities.
    """

    def __init__(
        self,
        system: ConcurrentSystem,
        start: str,
        length: int,
        adsc: StateCliqueGraph | None = None,
    ):
        if length < 0:
            raise TraceSysError("length must be non-negative")
        self.system = system
        self.start = start
        self.length = length
        system.state_index(start)
        adsc = adsc if adsc is not None else build_adsc(system)
        self._adsc = adsc
        n_nodes = len(adsc.nodes)

        is_end = [c.size == i for (_s, c, i) in adsc.nodes]
        paths = [[0] * n_nodes for _ in range(length + 1)]
        if length >= 1:
            for v in range(n_nodes):
                paths[1][v] = 1 if is_end[v] else 0
            for m in range(2, length + 1):
                prev = paths[m - 1]
                row = paths[m]
                for v in range(n_nodes):
                    row[v] = sum(prev[w] for w in adsc.succ[v])

        self._start_nodes = [
            i for i, (s, _c, k) in enumerate(adsc.nodes) if s == start and k == 1
        ]
        if length == 0:
            self.total = 1
        else:
            self.total = sum(paths[length][v] for v in self._start_nodes)
        if self.total == 0:
            raise EmptySet(length)

        # cumulative successor weights for each (node, nodes remaining)
        self._start_cum = _cumulative([paths[length][v] for v in self._start_nodes]) \
            if length >= 1 else []
        self._step_cum: dict[tuple[int, int], tuple[list[int], list[int]]] = {}
        for m in range(2, length + 1):
            for v in range(n_nodes):
                if paths[m][v]:
                    succs = list(adsc.succ[v])
                    cum = _cumulative([paths[m - 1][w] for w in succs])
                    self._step_cum[(v, m)] = (succs, cum)

    def sample(self, rng: SplitMix64) -> tuple[str, ...]:
        """One execution, uniform among all of the configured length."""
        if self.length == 0:
            return ()
        x = rng.randrange(self.total)
        v = self._start_nodes[bisect_right(self._start_cum, x)]
        word = [self._letter(v)]
        m = self.length
        while m > 1:
            succs, cum = self._step_cum[(v, m)]
            v = succs[bisect_right(cum, rng.randrange(cum[-1]))]
            word.append(self._letter(v))
            m -= 1
        return tuple(word)

    def first_clique(self, word: tuple[str, ...]) -> Clique:
        return self.system.monoid.normal_form(word).cliques[0]

    def _letter(self, v: int) -> str:
        _s, c, i = self._adsc.nodes[v]
        return c.letters[i - 1]


def _cumulative(weights: list[int]) -> list[int]:
    out = []
    acc = 0
    for w in weights:
        acc += w
        out.append(acc)
    return out


def sample_uniform_finite(
    system: ConcurrentSystem, start: str, length: int, seed: int
) -> tuple[str, ...]:
    """One execution drawn uniformly among all of the given length."""
    sampler = UniformExecutionSampler(system, start, length)
    return sampler.sample(SplitMix64(seed))


@dataclass(frozen=True)
class FirstCliqueReport:
    start: str
    length: int
    samples: int
    counts: dict[Clique, int]
    frequencies: dict[Clique, float]
    expected: dict[Clique, float]
    tv_distance: float
    z_scores: dict[Clique, float]


def empirical_first_clique(
    system: ConcurrentSystem,
    measure: UniformMeasure,
    start: str,
    length: int,
    samples: int,
    seed: int,
) -> FirstCliqueReport:
    """Frequencies of the first clique of uniform executions vs. its limit law.

    Diagnostic only: total-variation distance and per-clique z-scores
    against the law of the first clique under the uniform measure.
    """
    sampler = UniformExecutionSampler(system, start, length)
    rng = SplitMix64(seed, stream=1)
    counts: dict[Clique, int] = {}
    for _ in range(samples):
        word = sampler.sample(rng)
        c = sampler.first_clique(word)
        counts[c] = counts.get(c, 0) + 1

    enabled = system.enabled_cliques(start)
    expected = {c: measure.h[start][c] for c in enabled}
    freqs = {c: counts.get(c, 0) / samples for c in enabled}
    tv = 0.5 * sum(abs(freqs[c] - expected[c]) for c in enabled)
    z = {}
    for c in enabled:
        p = expected[c]
        got = counts.get(c, 0)
        if 0.0 < p < 1.0:
            z[c] = (got - samples * p) / (samples * p * (1 - p)) ** 0.5
        else:
            z[c] = 0.0 if got == samples * p else float("inf")
    return FirstCliqueReport(
        start=start,
        length=length,
        samples=samples,
        counts={c: counts.get(c, 0) for c in enabled},
        frequencies=freqs,
        expected=expected,
        tv_distance=tv,
        z_scores=z,
    )
