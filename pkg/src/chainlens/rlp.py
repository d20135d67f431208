"""Minimal recursive-length-prefix (RLP) serialisation.

Only the subset needed here: items are bytes or (nested) lists of items.
Integers must be converted by callers to minimal big-endian bytes first
(zero encodes as the empty string); that keeps this module free of policy.
"""

from __future__ import annotations

from typing import Sequence, Union

RlpItem = Union[bytes, Sequence["RlpItem"]]


class RlpDecodingError(ValueError):
    pass


def encode_uint(value: int) -> bytes:
    """Minimal big-endian representation; 0 becomes the empty string."""
    if value < 0:
        raise ValueError("RLP integers must be non-negative")
    if value == 0:
        return b""
    return value.to_bytes((value.bit_length() + 7) // 8, "big")


def _encode_length(length: int, short_offset: int) -> bytes:
    if length < 56:
        return bytes([short_offset + length])
    length_bytes = encode_uint(length)
    return bytes([short_offset + 55 + len(length_bytes)]) + length_bytes


def encode(item: RlpItem) -> bytes:
    if isinstance(item, (bytes, bytearray)):
        data = bytes(item)
        if len(data) == 1 and data[0] < 0x80:
            return data
        return _encode_length(len(data), 0x80) + data
    if isinstance(item, (list, tuple)):
        payload = b"".join(encode(sub) for sub in item)
        return _encode_length(len(payload), 0xC0) + payload
    raise TypeError(f"cannot RLP-encode {type(item).__name__}")


def decode(data: bytes) -> RlpItem:
    item, consumed = _decode_item(data, 0)
    if consumed != len(data):
        raise RlpDecodingError(f"{len(data) - consumed} trailing bytes after item")
    return item


def _decode_item(data: bytes, pos: int) -> tuple[RlpItem, int]:
    if pos >= len(data):
        raise RlpDecodingError("unexpected end of input")
    tag = data[pos]
    if tag < 0x80:
        return bytes([tag]), pos + 1
    if tag < 0xB8:
        length = tag - 0x80
        chunk = _take(data, pos + 1, length)
        if length == 1 and chunk[0] < 0x80:
            raise RlpDecodingError("single byte below 0x80 must encode as itself")
        return chunk, pos + 1 + length
    if tag < 0xC0:
        length, pos = _read_long_length(data, pos, 0xB7)
        if length < 56:
            raise RlpDecodingError("non-canonical long string length")
        return _take(data, pos, length), pos + length
    if tag < 0xF8:
        length = tag - 0xC0
        return _decode_list(data, pos + 1, length)
    length, pos = _read_long_length(data, pos, 0xF7)
    if length < 56:
        raise RlpDecodingError("non-canonical long list length")
    return _decode_list(data, pos, length)


def _read_long_length(data: bytes, pos: int, offset: int) -> tuple[int, int]:
    n = data[pos] - offset
    raw = _take(data, pos + 1, n)
    if raw and raw[0] == 0:
        raise RlpDecodingError("length has leading zero byte")
    return int.from_bytes(raw, "big"), pos + 1 + n


def _take(data: bytes, pos: int, length: int) -> bytes:
    if pos + length > len(data):
        raise RlpDecodingError("item extends past end of input")
    return data[pos:pos + length]


def _decode_list(data: bytes, pos: int, length: int) -> tuple[list, int]:
    end = pos + length
    if end > len(data):
        raise RlpDecodingError("list extends past end of input")
    items = []
    while pos < end:
        item, pos = _decode_item(data, pos)
        items.append(item)
    if pos != end:
        raise RlpDecodingError("list payload length mismatch")
    return items, pos
