"""Binary-encoded genetic algorithm with elitism and windowed roulette selection."""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "ALPHA_TABLES",
    "EncodingSpec",
    "DecodedShaft",
    "GaParams",
    "Outcome",
    "Individual",
    "HistoryRow",
    "GaResult",
    "decode",
    "encode",
    "bits_to_hex",
    "window_scale",
    "roulette",
    "evolve",
    "write_history",
    "HISTORY_COLUMNS",
]

ALPHA_TABLES = {
    2: (-45.0, 0.0, 45.0, 90.0),
    3: (-67.5, -45.0, -22.5, 0.0, 22.5, 45.0, 67.5, 90.0),
}


def _n_table(bits: int) -> tuple[int, ...]:
    return tuple(range(1, 2**bits + 1))


@dataclass(frozen=True)
class EncodingSpec:
    """Layout of a chromosome.

    Genes are read in the order ``(alpha, n, mat) * q``, then ``k_e``,
    ``r_m`` and ``Omega``. A gene with zero bits is fixed: ``k_e`` then takes
    ``ke_bounds[0]`` and the material is ``materials[0]``. Bounded reals map
    linearly from the unsigned integer onto ``[lo, hi]``.
    """

    q: int
    bit_alpha: int = 2
    bit_n: int = 1
    bit_mat: int = 0
    bit_ke: int = 0
    bit_rm: int = 3
    bit_omega: int = 3
    rm_bounds: tuple[float, float] = (0.05, 0.064)
    omega_bounds: tuple[float, float] = (3800.0, 5200.0)
    ke_bounds: tuple[float, float] = (1e4, 1e7)
    materials: tuple[str, ...] = ("BE",)

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if self.bit_alpha not in ALPHA_TABLES:
            raise ValueError("bit_alpha must be 2 or 3")
        if self.bit_n not in (1, 2, 3):
            raise ValueError("bit_n must be 1, 2 or 3")
        if self.bit_mat not in (0, 1):
            raise ValueError("bit_mat must be 0 or 1")
        if self.bit_ke not in (0, 3):
            raise ValueError("bit_ke must be 0 or 3")
        if self.bit_rm not in (3, 4):
            raise ValueError("bit_rm must be 3 or 4")
        if self.bit_omega < 1:
            raise ValueError("bit_omega must be >= 1")
        if len(self.materials) != 2**self.bit_mat:
            raise ValueError(f"{2**self.bit_mat} material name(s) required for bit_mat={self.bit_mat}")
        for lo, hi in (self.rm_bounds, self.omega_bounds, self.ke_bounds):
            if not 0 < lo <= hi:
                raise ValueError("bounds must satisfy 0 < lo <= hi")

    @property
    def gene_bits(self) -> int:
        return self.bit_alpha + self.bit_n + self.bit_mat

    @property
    def length(self) -> int:
        return self.gene_bits * self.q + self.bit_ke + self.bit_rm + self.bit_omega

    @property
    def alphas(self) -> tuple[float, ...]:
        return ALPHA_TABLES[self.bit_alpha]

    @property
    def counts(self) -> tuple[int, ...]:
        return _n_table(self.bit_n)


@dataclass(frozen=True)
class DecodedShaft:
    """Decoded chromosome: ``groups`` holds ``(angle, count, material)``."""

    groups: tuple[tuple[float, int, str], ...]
    r_m: float
    Omega: float
    k_e: float

    def sequence_text(self) -> str:
        """Configuration notation, e.g. ``"90:BE*2, 0:BE*4"``."""
        return ", ".join(f"{a:g}:{m}" + (f"*{n}" if n > 1 else "") for a, n, m in self.groups)


def _to_int(bits: np.ndarray) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | int(b)
    return v


def _from_int(v: int, width: int) -> list[int]:
    if not 0 <= v < 2**width:
        raise ValueError(f"value {v} does not fit in {width} bits")
    return [(v >> (width - 1 - k)) & 1 for k in range(width)]


def _real(i: int, bits: int, bounds: tuple[float, float]) -> float:
    lo, hi = bounds
    if bits == 0:
        return lo
    return lo + i * (hi - lo) / (2**bits - 1)


def _real_index(x: float, bits: int, bounds: tuple[float, float]) -> int:
    lo, hi = bounds
    if bits == 0:
        return 0
    if hi == lo:
        return 0
    i = round((x - lo) / (hi - lo) * (2**bits - 1))
    if not 0 <= i < 2**bits or not math.isclose(_real(i, bits, bounds), x, rel_tol=1e-9, abs_tol=1e-12):
        raise ValueError(f"{x} is not on the {bits}-bit grid of {bounds}")
    return i


def decode(bits: Sequence[int] | np.ndarray, spec: EncodingSpec) -> DecodedShaft:
    """Map a bit string (MSB first within each gene) to design values."""
    b = np.asarray(bits, dtype=np.uint8)
    if b.shape != (spec.length,):
        raise ValueError(f"chromosome must have {spec.length} bits, got {b.shape}")
    pos = 0

    def take(width: int) -> int:
        nonlocal pos
        v = _to_int(b[pos:pos + width])
        pos += width
        return v

    groups = []
    for _ in range(spec.q):
        a = spec.alphas[take(spec.bit_alpha)]
        n = spec.counts[take(spec.bit_n)]
        m = spec.materials[take(spec.bit_mat)] if spec.bit_mat else spec.materials[0]
        groups.append((a, n, m))
    ke = _real(take(spec.bit_ke), spec.bit_ke, spec.ke_bounds)
    rm = _real(take(spec.bit_rm), spec.bit_rm, spec.rm_bounds)
    om = _real(take(spec.bit_omega), spec.bit_omega, spec.omega_bounds)
    return DecodedShaft(tuple(groups), rm, om, ke)


def encode(x: DecodedShaft, spec: EncodingSpec) -> np.ndarray:
    """Inverse of ``decode`` for values on the encoding grid."""
    if len(x.groups) != spec.q:
        raise ValueError(f"expected {spec.q} gene groups")
    out: list[int] = []
    for a, n, m in x.groups:
        out += _from_int(spec.alphas.index(a), spec.bit_alpha)
        out += _from_int(spec.counts.index(n), spec.bit_n)
        if spec.bit_mat:
            out += _from_int(spec.materials.index(m), spec.bit_mat)
        elif m != spec.materials[0]:
            raise ValueError(f"material {m!r} not encodable")
    out += _from_int(_real_index(x.k_e, spec.bit_ke, spec.ke_bounds), spec.bit_ke) if spec.bit_ke else []
    out += _from_int(_real_index(x.r_m, spec.bit_rm, spec.rm_bounds), spec.bit_rm)
    out += _from_int(_real_index(x.Omega, spec.bit_omega, spec.omega_bounds), spec.bit_omega)
    return np.array(out, dtype=np.uint8)


def bits_to_hex(bits: np.ndarray) -> str:
    """Hex form of a bit string, left-padded with zeros to whole nibbles."""
    width = (len(bits) + 3) // 4
    return format(_to_int(bits), f"0{width}x")


def window_scale(f: Sequence[float] | np.ndarray) -> np.ndarray:
    """Subtract the worst fitness so that every scaled value is >= 0."""
    f = np.asarray(f, dtype=float)
    if f.size == 0:
        raise ValueError("empty fitness vector")
    return f - f.min()


def roulette(scaled: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``k`` indices with probability proportional to ``scaled`` (uniform if all zero)."""
    total = scaled.sum()
    if not total > 0:
        return rng.integers(0, len(scaled), size=k)
    return rng.choice(len(scaled), size=k, p=scaled / total)


@dataclass(frozen=True)
class GaParams:
    population_size: int = 300
    crossover_prob: float = 0.9
    mutation_prob: float = 0.1
    mutation_mode: str = "individual"
    crossover_points: int = 1
    elites: int = 2
    max_generations: int = 2500
    seed: int = 0
    threads: int = 1

    def __post_init__(self) -> None:
        if not (0 <= self.crossover_prob <= 1 and 0 <= self.mutation_prob <= 1):
            raise ValueError("probabilities must lie in [0, 1]")
        if not 0 <= self.elites < self.population_size:
            raise ValueError("elites must be smaller than the population")
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.mutation_mode not in ("individual", "bit"):
            raise ValueError("mutation_mode must be 'individual' or 'bit'")
        if self.crossover_points < 1:
            raise ValueError("crossover_points must be >= 1")
        if self.max_generations < 1:
            raise ValueError("max_generations must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass(frozen=True)
class Outcome:
    """What an evaluator reports for one chromosome."""

    fitness: float
    mass: float = math.nan
    feasible: bool = False
    payload: object = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class Individual:
    bits: np.ndarray
    outcome: Outcome

    @property
    def fitness(self) -> float:
        return self.outcome.fitness

    @property
    def hex(self) -> str:
        return bits_to_hex(self.bits)


@dataclass(frozen=True)
class HistoryRow:
    generation: int
    best_fitness: float
    best_mass_kg: float
    feasible_flag: bool
    best_chromosome_hex: str


HISTORY_COLUMNS = ("generation", "best_fitness", "best_mass_kg", "feasible_flag", "best_chromosome_hex")


@dataclass
class GaResult:
    best: Individual
    history: list[HistoryRow]
    evaluations: int
    stopped_early: bool = False


Evaluator = Callable[[np.ndarray], "Outcome | float"]


def _as_outcome(v) -> Outcome:
    if isinstance(v, Outcome):
        return v
    return Outcome(float(v))


def _crossover(a: np.ndarray, b: np.ndarray, points: int, rng: np.random.Generator):
    L = len(a)
    k = min(points, L - 1)
    cuts = np.sort(rng.choice(np.arange(1, L), size=k, replace=False))
    c1, c2 = a.copy(), b.copy()
    swap = False
    prev = 0
    for c in list(cuts) + [L]:
        if swap:
            c1[prev:c], c2[prev:c] = b[prev:c], a[prev:c]
        swap = not swap
        prev = c
    return c1, c2


def _mutate(pop: np.ndarray, params: GaParams, rng: np.random.Generator) -> None:
    n, L = pop.shape
    if params.mutation_mode == "individual":
        hit = rng.random(n) < params.mutation_prob
        where = rng.integers(0, L, size=n)
        rows = np.nonzero(hit)[0]
        pop[rows, where[rows]] ^= 1
    else:
        pop ^= (rng.random((n, L)) < params.mutation_prob).astype(np.uint8)


def _rank(pop: np.ndarray, fit: np.ndarray) -> np.ndarray:
    # best first; ties broken by lexicographically smallest chromosome
    keys = [pop[:, j] for j in range(pop.shape[1] - 1, -1, -1)] + [-fit]
    return np.lexsort(keys)


def evolve(
    params: GaParams,
    length: int,
    evaluator: Evaluator,
    stop_when: Callable[[Individual], bool] | None = None,
    initial: np.ndarray | None = None,
    observer: Callable[[int, np.ndarray, np.ndarray], None] | None = None,
) -> GaResult:
    """Run the generational loop and return the best individual and history.

    Each generation: evaluate, keep the elites, draw parents by roulette on
    windowed fitness, cross them over with probability ``crossover_prob``,
    mutate the children and refill the population. Random numbers come from
    a per-generation substream of ``params.seed`` so evaluation order and
    threading cannot affect them. ``stop_when`` may end the run early.
    ``observer(generation, population, fitness)`` sees every evaluated
    generation (read-only use).
    """
    N = params.population_size
    init_rng = np.random.default_rng(np.random.SeedSequence(params.seed, spawn_key=(0,)))
    if initial is None:
        pop = init_rng.integers(0, 2, size=(N, length), dtype=np.uint8)
    else:
        pop = np.array(initial, dtype=np.uint8)
        if pop.shape != (N, length):
            raise ValueError("initial population has the wrong shape")
    cache: dict[bytes, Outcome] = {}
    history: list[HistoryRow] = []
    pool = ThreadPoolExecutor(params.threads) if params.threads > 1 else None
    stopped = False
    try:
        for g in range(params.max_generations):
            keys = [row.tobytes() for row in pop]
            todo = list(dict.fromkeys(k for k in keys if k not in cache))
            rows = [np.frombuffer(k, dtype=np.uint8) for k in todo]
            results = pool.map(evaluator, rows) if pool else map(evaluator, rows)
            for k, r in zip(todo, results):
                cache[k] = _as_outcome(r)
            outs = [cache[k] for k in keys]
            fit = np.array([o.fitness for o in outs])
            if observer is not None:
                observer(g, pop.copy(), fit.copy())
            order = _rank(pop, fit)
            best = Individual(pop[order[0]].copy(), outs[order[0]])
            history.append(HistoryRow(g, best.fitness, best.outcome.mass, best.outcome.feasible, best.hex))
            if stop_when is not None and stop_when(best):
                stopped = True
                break
            if g == params.max_generations - 1:
                break
            rng = np.random.default_rng(np.random.SeedSequence(params.seed, spawn_key=(1, g)))
            elites = pop[order[: params.elites]].copy()
            n_child = N - params.elites
            scaled = window_scale(fit)
            n_pairs = (n_child + 1) // 2
            parents = roulette(scaled, 2 * n_pairs, rng).reshape(n_pairs, 2)
            do_cross = rng.random(n_pairs) < params.crossover_prob
            children = np.empty((2 * n_pairs, length), dtype=np.uint8)
            for i, (a, b) in enumerate(parents):
                if do_cross[i] and length > 1:
                    children[2 * i], children[2 * i + 1] = _crossover(pop[a], pop[b], params.crossover_points, rng)
                else:
                    children[2 * i], children[2 * i + 1] = pop[a], pop[b]
            children = children[:n_child]
            _mutate(children, params, rng)
            pop = np.vstack([elites, children])
    finally:
        if pool:
            pool.shutdown()
    return GaResult(best=best, history=history, evaluations=len(cache), stopped_early=stopped)


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float):
        return format(x, ".9g")
    return str(x)


def write_history(path, history: Sequence[HistoryRow]) -> None:
    """CSV with the columns of ``HISTORY_COLUMNS``; floats to 9 significant digits."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(HISTORY_COLUMNS)
        for r in history:
            w.writerow([_fmt(getattr(r, c)) for c in HISTORY_COLUMNS])
