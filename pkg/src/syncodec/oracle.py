"""Trusted brute-force verification of decodability claims.

Everything here enumerates: codes are checked by mapping every codeword onto
its full image set under the error model and counting collisions, which equals
intersecting every compatible received word's error ball with the code.  The
agreement of the two formulations is itself covered by tests at tiny sizes.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import SizeGuardError
from .words import ErrorModel, Word, forward_images

SCHEMA_VERSION = 1
ENUMERATION_MAX_N = 16


@dataclass
class VerificationReport:
    model: str
    n: int
    q: int
    code_size: int
    redundancy_bits: float
    list_bound: int
    max_list_size: int
    witnesses: list[str] = field(default_factory=list)
    runtime_seconds: float = 0.0
    schema_version: int = SCHEMA_VERSION

    @property
    def ok(self) -> bool:
        return self.max_list_size <= self.list_bound

    def to_json(self) -> str:
        return json.dumps({
            "schema_version": self.schema_version,
            "model": self.model,
            "n": self.n,
            "q": self.q,
            "code_size": self.code_size,
            "redundancy_bits": self.redundancy_bits,
            "list_bound": self.list_bound,
            "max_list_size": self.max_list_size,
            "ok": self.ok,
            "witnesses": self.witnesses,
            "runtime_seconds": self.runtime_seconds,
        })


def measure_redundancy(code_size: int, n: int, q: int) -> float:
    """Redundancy in bits: n log2(q) - log2(|C|)."""
    import math

    if code_size < 1:
        raise ValueError("redundancy needs a non-empty code")
    return n * math.log2(q) - math.log2(code_size)


def all_words(n: int, q: int) -> Iterable[Word]:
    if n > ENUMERATION_MAX_N:
        raise SizeGuardError(f"enumeration capped at n <= {ENUMERATION_MAX_N}")
    for symbols in itertools.product(range(q), repeat=n):
        yield Word(symbols, q)


def code_from_predicate(predicate: Callable[[Word], bool], n: int, q: int,
                        ) -> list[Word]:
    return [w for w in all_words(n, q) if predicate(w)]


def verify_code(codewords: list[Word], model: ErrorModel, list_bound: int,
                witness_cap: int = 10) -> VerificationReport:
    """Exhaustive list-size check: max |B(y) ∩ C| over every reachable y."""
    start = time.perf_counter()
    if not codewords:
        raise ValueError("cannot verify an empty code")
    n = len(codewords[0])
    q = codewords[0].q
    counts: dict[tuple[int, ...], int] = {}
    for x in codewords:
        if len(x) != n or x.q != q:
            raise ValueError("codewords must share one length and alphabet")
        for y in forward_images(x, model):
            counts[y.symbols] = counts.get(y.symbols, 0) + 1
    max_list = max(counts.values())
    witnesses = []
    if max_list > list_bound:
        for symbols, c in sorted(counts.items()):
            if c > list_bound:
                witnesses.append("".join(map(str, symbols)))
                if len(witnesses) >= witness_cap:
                    break
    return VerificationReport(
        model=model.value, n=n, q=q, code_size=len(codewords),
        redundancy_bits=measure_redundancy(len(codewords), n, q),
        list_bound=list_bound, max_list_size=max_list, witnesses=witnesses,
        runtime_seconds=time.perf_counter() - start)


def search_inner_code(model: ErrorModel, length: int, q: int = 2) -> list[Word]:
    """Greedy maximal code for the model: keep a word whenever its image set
    is disjoint from the images of everything kept so far (lexicographic
    order, so the result is reproducible)."""
    if length > ENUMERATION_MAX_N:
        raise SizeGuardError(f"greedy search capped at length <= {ENUMERATION_MAX_N}")
    kept: list[Word] = []
    claimed: set[tuple[int, ...]] = set()
    for w in all_words(length, q):
        images = {y.symbols for y in forward_images(w, model)}
        if images & claimed:
            continue
        kept.append(w)
        claimed |= images
    return kept


def sketch_class_sweep(n: int, model: ErrorModel,
                       sketch_fn: Callable[[Word], tuple],
                       ) -> tuple[int, bool, dict[int, int]]:
    """Max |B(y) ∩ class| over every sketch class at once, plus a histogram.

    Every length-n binary word is its own class member; collisions are counted
    per (sketch tuple, received word).  Returns the maximum, whether the
    maximum is attained at least once at 2, and the histogram of list sizes.
    """
    counts: dict[tuple, int] = {}
    for value in range(2 ** n):
        bits = tuple((value >> (n - 1 - i)) & 1 for i in range(n))
        x = Word(bits, 2)
        key = sketch_fn(x)
        for y in forward_images(x, model):
            pair = (key, y.symbols)
            counts[pair] = counts.get(pair, 0) + 1
    histogram: dict[int, int] = {}
    for c in counts.values():
        histogram[c] = histogram.get(c, 0) + 1
    max_list = max(histogram)
    return max_list, histogram.get(2, 0) > 0, histogram
