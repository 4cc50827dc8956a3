"""Integer sketch functions, each with its exact modulus."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AlphabetError
from .words import Word, prefix_parity, require_binary, run_string


def signed_residue(value: int, modulus: int) -> int:
    """Unique representative of value mod modulus in (-modulus/2, modulus/2]."""
    r = value % modulus
    if 2 * r > modulus:
        r -= modulus
    return r


@dataclass(frozen=True)
class ModularValue:
    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus <= 0:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value} outside [0, {self.modulus})")

    def signed(self) -> int:
        return signed_residue(self.value, self.modulus)

    def __sub__(self, other: "ModularValue") -> "ModularValue":
        if self.modulus != other.modulus:
            raise ValueError("modular arithmetic requires equal moduli")
        return ModularValue((self.value - other.value) % self.modulus, self.modulus)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class WeightFn:
    """Strictly increasing non-negative symbol weights w(0) < .. < w(q-1)."""

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.weights) < 2:
            raise AlphabetError("weight function needs at least two symbols")
        if self.weights[0] < 0:
            raise AlphabetError("weights must be non-negative")
        for a, b in zip(self.weights, self.weights[1:]):
            if b <= a:
                raise AlphabetError("weights must be strictly increasing")

    @property
    def q(self) -> int:
        return len(self.weights)

    def __call__(self, symbol: int) -> int:
        return self.weights[symbol]

    @classmethod
    def identity(cls, q: int) -> "WeightFn":
        return cls(tuple(range(q)))


def vt(word: Word, modulus: int) -> ModularValue:
    """Standard VT sketch sum(i * x_i) mod modulus."""
    total = sum(i * s for i, s in enumerate(word.symbols, start=1))
    return ModularValue(total % modulus, modulus)


def weighted_vt(word: Word, weights: WeightFn, modulus: int) -> ModularValue:
    """Weighted VT sketch sum(i * w(x_i)) mod modulus."""
    if weights.q != word.q:
        raise AlphabetError(
            f"weight function is over q={weights.q}, word over q={word.q}")
    w = weights.weights
    total = sum(i * w[s] for i, s in enumerate(word.symbols, start=1))
    return ModularValue(total % modulus, modulus)


def count_mod(word: Word, symbol: int, modulus: int) -> ModularValue:
    """Occurrence count of one symbol, reduced mod modulus."""
    if not 0 <= symbol < word.q:
        raise AlphabetError(f"symbol {symbol} outside [0, {word.q})")
    return ModularValue(word.symbols.count(symbol) % modulus, modulus)


def run_sketch_moduli(n: int) -> tuple[int, int, int]:
    return 12 * n + 1, 16 * n * n + 1, 13


@dataclass(frozen=True)
class RunSketches:
    f1r: ModularValue  # sum of interior ranks, mod 12n+1
    f2r: ModularValue  # sum of r(r-1) over interior ranks, mod 16n^2+1
    hr: ModularValue   # sentinel run count, mod 13


def run_sketches(word: Word) -> RunSketches:
    """Run-based sketches of a binary word."""
    require_binary(word)
    n = len(word)
    m1, m2, m3 = run_sketch_moduli(n)
    ranks = run_string(word)
    interior = ranks[:-1]
    s1 = sum(interior)
    s2 = sum(r * (r - 1) for r in interior)
    runs = ranks[-1] + 1
    return RunSketches(
        ModularValue(s1 % m1, m1),
        ModularValue(s2 % m2, m2),
        ModularValue(runs % m3, m3),
    )


def prefix_parity_sum(word: Word, modulus: int = 3) -> ModularValue:
    """Sum of the running parities, mod modulus."""
    total = sum(prefix_parity(word).symbols)
    return ModularValue(total % modulus, modulus)


def prefix_parity_vt(word: Word, modulus: int) -> ModularValue:
    """Positional sum over the running parities: sum(i * parity_i) mod modulus."""
    p = prefix_parity(word).symbols
    total = sum(i * b for i, b in enumerate(p, start=1))
    return ModularValue(total % modulus, modulus)
