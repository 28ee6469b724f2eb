"""Hereditarily finite values and their injective natural-number codes.

An HF value is one of

* ``int``        -- an atom (integers, so a ``-1`` cut point can be stored verbatim)
* :class:`Bits`  -- a finite bit string
* ``tuple``      -- an ordered tuple of HF values
* ``frozenset``  -- a finite set of HF values

The canonical serialization is prefix-free; set members are emitted sorted by
their own serialization.  The code of a value is that byte string read as a
big-endian natural.  Every serialization starts with a nonzero tag byte, so the
code is injective.
"""

from __future__ import annotations

from dataclasses import dataclass

TAG_ATOM, TAG_BITS, TAG_TUPLE, TAG_SET = 1, 2, 3, 4

# hf_to_code(0): tag byte 0x01 followed by zigzag(0) = 0x00.
ATOM_ZERO_CODE = 256


class HFError(ValueError):
    pass


@dataclass(frozen=True)
class Bits:
    bits: tuple

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise HFError("bits must be 0/1")

    def __len__(self):
        return len(self.bits)

    def __str__(self):
        return "0b" + "".join(map(str, self.bits))

    @classmethod
    def parse(cls, text: str) -> "Bits":
        if not text.startswith("0b"):
            raise HFError(f"not a bit string: {text!r}")
        return cls(tuple(int(c) for c in text[2:]))


def _varint(n: int) -> bytes:
    out = bytearray()
    while True:
        byte = n & 0x7F
        n >>= 7
        if n:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def _read_varint(buf: bytes, pos: int):
    shift = result = 0
    while True:
        if pos >= len(buf):
            raise HFError("truncated varint")
        byte = buf[pos]
        pos += 1
        result |= (byte & 0x7F) << shift
        shift += 7
        if not byte & 0x80:
            return result, pos


def _zigzag(n: int) -> int:
    return 2 * n if n >= 0 else -2 * n - 1


def _unzigzag(z: int) -> int:
    return z // 2 if z % 2 == 0 else -(z + 1) // 2


def serialize(v) -> bytes:
    if isinstance(v, bool):
        raise HFError("bool is not an HF atom")
    if isinstance(v, int):
        return bytes([TAG_ATOM]) + _varint(_zigzag(v))
    if isinstance(v, Bits):
        packed = bytearray((len(v.bits) + 7) // 8)
        for i, b in enumerate(v.bits):
            if b:
                packed[i // 8] |= 1 << (i % 8)
        return bytes([TAG_BITS]) + _varint(len(v.bits)) + bytes(packed)
    if isinstance(v, tuple):
        return bytes([TAG_TUPLE]) + _varint(len(v)) + b"".join(serialize(x) for x in v)
    if isinstance(v, (frozenset, set)):
        parts = sorted(serialize(x) for x in v)
        return bytes([TAG_SET]) + _varint(len(parts)) + b"".join(parts)
    raise HFError(f"not an HF value: {type(v).__name__}")


def deserialize(buf: bytes):
    v, pos = _parse(buf, 0)
    if pos != len(buf):
        raise HFError("trailing bytes")
    return v


def _parse(buf: bytes, pos: int):
    if pos >= len(buf):
        raise HFError("truncated value")
    tag = buf[pos]
    pos += 1
    if tag == TAG_ATOM:
        z, pos = _read_varint(buf, pos)
        return _unzigzag(z), pos
    if tag == TAG_BITS:
        n, pos = _read_varint(buf, pos)
        nbytes = (n + 7) // 8
        chunk = buf[pos:pos + nbytes]
        if len(chunk) != nbytes:
            raise HFError("truncated bit string")
        bits = tuple((chunk[i // 8] >> (i % 8)) & 1 for i in range(n))
        return Bits(bits), pos + nbytes
    if tag in (TAG_TUPLE, TAG_SET):
        n, pos = _read_varint(buf, pos)
        items = []
        for _ in range(n):
            item, pos = _parse(buf, pos)
            items.append(item)
        return (tuple(items) if tag == TAG_TUPLE else frozenset(items)), pos
    raise HFError(f"unknown tag {tag}")


def hf_to_code(v) -> int:
    return int.from_bytes(serialize(v), "big")


def code_to_hf(code: int):
    if code <= 0:
        raise HFError("codes of HF values are positive")
    return deserialize(code.to_bytes((code.bit_length() + 7) // 8, "big"))


def to_json(v):
    """Canonical JSON-able form: tuples -> lists, sets -> {"set": [...]}, bits -> "0b..."."""
    if isinstance(v, bool):
        raise HFError("bool is not an HF atom")
    if isinstance(v, int):
        return v
    if isinstance(v, Bits):
        return str(v)
    if isinstance(v, tuple):
        return [to_json(x) for x in v]
    if isinstance(v, (frozenset, set)):
        return {"set": [to_json(x) for x in sorted(v, key=serialize)]}
    raise HFError(f"not an HF value: {type(v).__name__}")


def from_json(obj):
    if isinstance(obj, bool):
        raise HFError("bool is not an HF atom")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        return Bits.parse(obj)
    if isinstance(obj, list):
        return tuple(from_json(x) for x in obj)
    if isinstance(obj, dict) and set(obj) == {"set"}:
        return frozenset(from_json(x) for x in obj["set"])
    raise HFError(f"not an HF JSON value: {obj!r}")
