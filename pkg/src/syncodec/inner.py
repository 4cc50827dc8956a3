"""Repetition guard for short metadata fields, plus bit packing helpers.

Each symbol is repeated REP times.  Decoding samples the three middle positions
of every block and takes their majority.  Any single edit (and likewise one
deletion plus one substitution) shifts positions by at most one and corrupts at
most one sample per block, so the majority is always the transmitted symbol.
The decode window may be one symbol shorter or longer than the encoding; a
missing or extra leading symbol behaves like one more edit at the front and is
absorbed by the same argument.
"""

from __future__ import annotations

from .errors import DecodeFailure

REP = 5


def rep_encode(symbols: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for s in symbols:
        out.extend([s] * REP)
    return tuple(out)


def rep_decode(window: tuple[int, ...], block_count: int) -> tuple[int, ...]:
    """Recover the symbols from a window of length REP*block_count - 1 .. + 1."""
    if not block_count * REP - 1 <= len(window) <= block_count * REP + 1:
        raise DecodeFailure(
            f"repetition window of length {len(window)} does not hold "
            f"{block_count} blocks")
    out = []
    for i in range(block_count):
        base = REP * i
        a, b, c = window[base + 1], window[base + 2], window[base + 3]
        if a == b or a == c:
            out.append(a)
        elif b == c:
            out.append(b)
        else:
            raise DecodeFailure("no majority in repetition block")
    return tuple(out)


def int_to_bits(value: int, width: int) -> tuple[int, ...]:
    if value < 0 or value >> width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return tuple((value >> (width - 1 - i)) & 1 for i in range(width))


def bits_to_int(bits: tuple[int, ...]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def bits_to_quaternary(bits: tuple[int, ...]) -> tuple[int, ...]:
    """Pack bits two per 4-ary symbol, zero-padding the tail."""
    if len(bits) % 2:
        bits = bits + (0,)
    return tuple(2 * bits[i] + bits[i + 1] for i in range(0, len(bits), 2))


def quaternary_to_bits(symbols: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for s in symbols:
        out.extend(divmod(s, 2))
    return tuple(out)
