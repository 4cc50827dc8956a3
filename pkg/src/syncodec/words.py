"""Alphabet-generic words, corruption operators and exhaustive error balls.

Everything downstream (codecs and oracles) is built on the types here.  Words
are immutable; error-pattern positions are 1-based throughout the public API.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union

from .errors import AlphabetError, PositionError, SizeGuardError

ERROR_BALL_MAX_N = 16


@dataclass(frozen=True)
class Word:
    """A finite string over {0, .., q-1} with an explicit alphabet size."""

    symbols: tuple[int, ...]
    q: int = 2

    def __post_init__(self) -> None:
        if self.q < 2:
            raise AlphabetError(f"alphabet size must be >= 2, got {self.q}")
        for s in self.symbols:
            if not 0 <= s < self.q:
                raise AlphabetError(f"symbol {s} outside [0, {self.q})")

    @classmethod
    def parse(cls, text: str, q: int | None = None) -> "Word":
        """Parse an ASCII digit string; q is inferred from the symbols if omitted."""
        symbols = tuple(int(c) for c in text)
        if q is None:
            q = max(2, max(symbols) + 1 if symbols else 2)
        return cls(symbols, q)

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, index):
        return self.symbols[index]

    def __iter__(self):
        return iter(self.symbols)

    def __str__(self) -> str:
        return "".join(str(s) for s in self.symbols)

    def replace(self, symbols: tuple[int, ...]) -> "Word":
        return Word(symbols, self.q)


def require_binary(word: Word) -> None:
    if word.q != 2:
        raise AlphabetError(f"binary word required, got alphabet size {word.q}")


@dataclass(frozen=True)
class Deletion:
    position: int  # delete x_position


@dataclass(frozen=True)
class Insertion:
    position: int  # insert before x_position; n+1 appends
    symbol: int


@dataclass(frozen=True)
class Substitution:
    position: int
    symbol: int  # the new symbol


@dataclass(frozen=True)
class Transposition:
    position: int  # swap x_position with x_{position+1}


@dataclass(frozen=True)
class DelAndSub:
    """Delete x_{delete_at} and substitute x_{flip_at}, both in source indexing.

    A pure deletion is never represented this way (delete_at != flip_at).  For
    binary words the substituted value defaults to the complement; larger
    alphabets must say what the flipped position becomes.
    """

    delete_at: int
    flip_at: int
    new_symbol: int | None = None

    def __post_init__(self) -> None:
        if self.delete_at == self.flip_at:
            raise PositionError("a pure deletion must be a Deletion pattern")


ErrorPattern = Union[Deletion, Insertion, Substitution, Transposition, DelAndSub]


class ErrorModel(Enum):
    SINGLE_EDIT = "single-edit"
    ONE_DEL_ONE_SUB = "del-sub"
    ONE_DEL_OR_ONE_TRANSPOSITION = "del-or-transposition"


def _check_position(position: int, low: int, high: int) -> None:
    if not low <= position <= high:
        raise PositionError(f"position {position} outside [{low}, {high}]")


def _flip_value(word: Word, position: int, new_symbol: int | None) -> int:
    old = word.symbols[position - 1]
    if new_symbol is None:
        if old not in (0, 1):
            raise AlphabetError("flip needs an explicit new symbol for q > 2")
        return 1 - old
    if not 0 <= new_symbol < word.q:
        raise AlphabetError(f"symbol {new_symbol} outside [0, {word.q})")
    if new_symbol == old:
        raise PositionError("substitution must change the symbol")
    return new_symbol


def apply(word: Word, pattern: ErrorPattern) -> Word:
    """Apply one corruption pattern; positions are 1-based into the source."""
    s = word.symbols
    n = len(s)
    if isinstance(pattern, Deletion):
        _check_position(pattern.position, 1, n)
        i = pattern.position - 1
        return word.replace(s[:i] + s[i + 1:])
    if isinstance(pattern, Insertion):
        _check_position(pattern.position, 1, n + 1)
        if not 0 <= pattern.symbol < word.q:
            raise AlphabetError(f"symbol {pattern.symbol} outside [0, {word.q})")
        i = pattern.position - 1
        return word.replace(s[:i] + (pattern.symbol,) + s[i:])
    if isinstance(pattern, Substitution):
        _check_position(pattern.position, 1, n)
        i = pattern.position - 1
        if not 0 <= pattern.symbol < word.q:
            raise AlphabetError(f"symbol {pattern.symbol} outside [0, {word.q})")
        if s[i] == pattern.symbol:
            raise PositionError("substitution must change the symbol")
        return word.replace(s[:i] + (pattern.symbol,) + s[i + 1:])
    if isinstance(pattern, Transposition):
        _check_position(pattern.position, 1, n - 1)
        i = pattern.position - 1
        return word.replace(s[:i] + (s[i + 1], s[i]) + s[i + 2:])
    if isinstance(pattern, DelAndSub):
        _check_position(pattern.delete_at, 1, n)
        _check_position(pattern.flip_at, 1, n)
        new = _flip_value(word, pattern.flip_at, pattern.new_symbol)
        flipped = s[:pattern.flip_at - 1] + (new,) + s[pattern.flip_at:]
        d = pattern.delete_at - 1
        return word.replace(flipped[:d] + flipped[d + 1:])
    raise TypeError(f"unknown pattern {pattern!r}")


def patterns(word: Word, model: ErrorModel) -> Iterator[ErrorPattern]:
    """All concrete (non-identity) patterns of the model applicable to word."""
    n = len(word)
    q = word.q
    if model is ErrorModel.SINGLE_EDIT:
        for d in range(1, n + 1):
            yield Deletion(d)
        for i in range(1, n + 2):
            for a in range(q):
                yield Insertion(i, a)
        for e in range(1, n + 1):
            for a in range(q):
                if a != word.symbols[e - 1]:
                    yield Substitution(e, a)
    elif model is ErrorModel.ONE_DEL_ONE_SUB:
        for d in range(1, n + 1):
            yield Deletion(d)
        for e in range(1, n + 1):
            for a in range(q):
                if a != word.symbols[e - 1]:
                    yield Substitution(e, a)
        for d in range(1, n + 1):
            for e in range(1, n + 1):
                if d == e:
                    continue
                for a in range(q):
                    if a != word.symbols[e - 1]:
                        yield DelAndSub(d, e, a)
    elif model is ErrorModel.ONE_DEL_OR_ONE_TRANSPOSITION:
        for d in range(1, n + 1):
            yield Deletion(d)
        for k in range(1, n):
            if word.symbols[k - 1] != word.symbols[k]:
                yield Transposition(k)
    else:
        raise TypeError(f"unknown model {model!r}")


def forward_images(word: Word, model: ErrorModel) -> set[Word]:
    """Every word reachable from `word` under the model, including itself."""
    out = {word}
    for p in patterns(word, model):
        out.add(apply(word, p))
    return out


def compatible_lengths(model: ErrorModel, n: int) -> tuple[int, ...]:
    if model is ErrorModel.SINGLE_EDIT:
        return tuple(m for m in (n - 1, n, n + 1) if m >= 0)
    if model is ErrorModel.ONE_DEL_ONE_SUB:
        return tuple(m for m in (n - 1, n) if m >= 0)
    if model is ErrorModel.ONE_DEL_OR_ONE_TRANSPOSITION:
        return tuple(m for m in (n - 1, n) if m >= 0)
    raise TypeError(f"unknown model {model!r}")


def error_ball(y: Word, model: ErrorModel, n: int, q: int | None = None) -> set[Word]:
    """Exact set B(y) of length-n sources mapping to y under the model.

    Computed by filtration over all q^n candidates; this is the trusted oracle,
    so simplicity wins over speed.  Cost is O(q^n); n is capped at
    ERROR_BALL_MAX_N.
    """
    if q is None:
        q = y.q
    if n > ERROR_BALL_MAX_N:
        raise SizeGuardError(f"error_ball capped at n <= {ERROR_BALL_MAX_N}")
    if len(y) not in compatible_lengths(model, n):
        raise PositionError(
            f"|y| = {len(y)} incompatible with model {model.value} at n = {n}")
    ball = set()
    for symbols in itertools.product(range(q), repeat=n):
        x = Word(symbols, q)
        if y in forward_images(x, model):
            ball.add(x)
    return ball


def run_string(word: Word) -> tuple[int, ...]:
    """Rank sequence r_1 .. r_{n+1} of a binary word, sentinels x_0=0, x_{n+1}=1."""
    require_binary(word)
    ranks = []
    prev = 0
    rank = 0
    for s in word.symbols:
        if s != prev:
            rank += 1
        ranks.append(rank)
        prev = s
    if prev != 1:
        rank += 1
    ranks.append(rank)
    return tuple(ranks)


def run_count(word: Word) -> int:
    """Number of runs of the sentinel-padded word 0 || x || 1."""
    require_binary(word)
    return run_string(word)[-1] + 1


def word_from_run_string(ranks: tuple[int, ...]) -> Word:
    """Invert run_string; ranks has length n+1."""
    symbols = []
    prev_rank = 0
    prev_symbol = 0
    for r in ranks[:-1]:
        if r not in (prev_rank, prev_rank + 1):
            raise AlphabetError("rank sequence must be non-decreasing in steps of 1")
        symbol = prev_symbol ^ (1 if r == prev_rank + 1 else 0)
        symbols.append(symbol)
        prev_rank, prev_symbol = r, symbol
    expected_last = prev_rank + (1 if prev_symbol == 0 else 0)
    if ranks[-1] != expected_last:
        raise AlphabetError("final rank inconsistent with the sentinel convention")
    return Word(tuple(symbols), 2)


def prefix_parity(word: Word) -> Word:
    """Running parity of x_1 .. x_i; a bijection on binary words."""
    require_binary(word)
    out = []
    acc = 0
    for s in word.symbols:
        acc ^= s
        out.append(acc)
    return Word(tuple(out), 2)


def prefix_parity_inverse(word: Word) -> Word:
    require_binary(word)
    out = []
    prev = 0
    for s in word.symbols:
        out.append(s ^ prev)
        prev = s
    return Word(tuple(out), 2)
