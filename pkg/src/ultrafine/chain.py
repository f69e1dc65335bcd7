"""Sampling-based layer enumeration, layer ordering, the empirical openness
check, and the ideal-chain report built from them."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .polarize import InvariantViolation
from .stratify import UltrafineLabel, classify
from .linalg import vector

DISCLAIMERS = (
    "chain_length is an upper bound on minimal length",
    "layer set is a sampled lower bound",
)


@dataclass(frozen=True)
class SamplingConfig:
    samples: int = 2000
    height: int = 10
    seed: int = 0
    probes: tuple = ()
    grid: bool = True
    max_grid_dim: int = 8
    max_witnesses: int = 3


@dataclass(frozen=True)
class OpennessConfig:
    perturbations: int = 2
    depth: int = 20
    height: int = 10
    seed: int = 0


@dataclass
class LayerEntry:
    label: UltrafineLabel
    fine_index: tuple
    orbit_dim: int
    witnesses: list = field(default_factory=list)
    sample_count: int = 0

    @property
    def is_character_layer(self) -> bool:
        return self.orbit_dim == 0

    @property
    def stabilizer_dim(self) -> int:
        return len(self.fine_index) - self.orbit_dim

    @property
    def subquotient(self) -> dict:
        return {"gamma": "layer/G",
                "fiber": "C (character)" if self.is_character_layer else "K(H) infinite-dim"}


class LayerCatalog:
    """Nonempty ultrafine layers seen so far; always a lower bound on the true set."""

    is_lower_bound = True

    def __init__(self, flag, roots: Sequence | None = None, max_witnesses: int = 3):
        self.flag = flag
        self.roots = flag.roots if roots is None else tuple(roots)
        self.max_witnesses = max_witnesses
        self.entries: dict[UltrafineLabel, LayerEntry] = {}

    def __len__(self):
        return len(self.entries)

    def __contains__(self, label) -> bool:
        return label in self.entries

    def labels(self) -> set:
        return set(self.entries)

    def classify(self, xi: Sequence):
        return classify(self.flag, xi, self.roots)

    def add(self, xi: Sequence, count: int = 1) -> UltrafineLabel:
        xi = vector(xi)
        c = self.classify(xi)
        entry = self.entries.get(c.label)
        if entry is None:
            entry = LayerEntry(c.label, c.fine_index, 2 * c.trace.d)
            self.entries[c.label] = entry
        elif entry.fine_index != c.fine_index:
            raise InvariantViolation(
                f"label {c.label} seen with fine indices {entry.fine_index} and {c.fine_index}")
        entry.sample_count += count
        if len(entry.witnesses) < self.max_witnesses and xi not in entry.witnesses:
            entry.witnesses.append(xi)
        return c.label

    def merge(self, other: "LayerCatalog") -> None:
        """Union with another catalog; witnesses are re-classified on the way in."""
        for label, entry in other.entries.items():
            for n, xi in enumerate(entry.witnesses):
                got = self.add(xi, count=entry.sample_count if n == 0 else 0)
                if got != label:
                    raise InvariantViolation(f"witness {xi} of {label} classifies as {got}")


def random_functional(rng: random.Random, m: int, height: int) -> tuple:
    return tuple(Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(m))


def sign_grid(m: int) -> Iterable[tuple]:
    return (tuple(Fraction(v) for v in p) for p in itertools.product((-1, 0, 1), repeat=m))


def enumerate_layers(flag, config: SamplingConfig = SamplingConfig(),
                     roots: Sequence | None = None) -> LayerCatalog:
    """Classify probes, the {-1,0,1}^m grid and random rational functionals."""
    catalog = LayerCatalog(flag, roots, config.max_witnesses)
    m = flag.dim
    for xi in config.probes:
        catalog.add(xi)
    if config.grid and m <= config.max_grid_dim:
        for xi in sign_grid(m):
            catalog.add(xi)
    rng = random.Random(config.seed)
    for _ in range(config.samples):
        catalog.add(random_functional(rng, m, config.height))
    return catalog


def layer_sort_key(entry: LayerEntry):
    lab = entry.label
    return (entry.stabilizer_dim, -len(lab.b), entry.fine_index, lab.e, lab.jmap, lab.b)


def order_layers(catalog: LayerCatalog) -> list[LayerEntry]:
    """Generic layers first: larger orbits, then larger b, then lexicographic k.

    The character layer (full stabilizer) comes last.
    """
    if not catalog.entries:
        raise ValueError("empty layer catalog")
    return sorted(catalog.entries.values(), key=layer_sort_key)


@dataclass
class OpennessReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_openness(flag, ordered: Sequence[LayerEntry],
                    config: OpennessConfig = OpennessConfig(),
                    roots: Sequence | None = None) -> OpennessReport:
    """Perturb each witness of layer r and require the result to land in a layer s <= r."""
    roots = flag.roots if roots is None else roots
    position = {entry.label: r for r, entry in enumerate(ordered)}
    rng = random.Random(config.seed)
    m = flag.dim
    report = OpennessReport()
    for r, entry in enumerate(ordered):
        for xi in entry.witnesses:
            for _ in range(config.perturbations):
                direction = [0] * m
                while not any(direction):
                    direction = [rng.randint(-config.height, config.height) for _ in range(m)]
                for n in range(1, config.depth + 1):
                    scale = Fraction(1, config.height * 2 ** n)
                    moved = tuple(a + scale * b for a, b in zip(xi, direction))
                    label = classify(flag, moved, roots).label
                    report.checked += 1
                    s = position.get(label)
                    if s is None or s > r:
                        report.violations.append({
                            "witness": xi,
                            "delta": tuple(scale * b for b in direction),
                            "from": entry.label,
                            "to": label,
                            "to_position": s,
                        })
    return report


@dataclass
class ChainReport:
    """The ordered layers L_1..L_N and the resulting ideal chain of length N."""

    flag: object
    layers: list
    openness: OpennessReport
    known_length: int | None = None
    disclaimers: tuple = DISCLAIMERS

    @property
    def chain_length(self) -> int:
        return len(self.layers)


def solvability_report(flag, sampling: SamplingConfig = SamplingConfig(),
                       openness: OpennessConfig = OpennessConfig(),
                       known_length: int | None = None) -> ChainReport:
    catalog = enumerate_layers(flag, sampling)
    ordered = order_layers(catalog)
    check = verify_openness(flag, ordered, openness)
    return ChainReport(flag, ordered, check, known_length)
