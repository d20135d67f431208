"""Keccak-256 against the independent oracle and published vectors."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainlens.keccak import keccak256, keccak256_batch64, keccak256_cached

import oracles

# legacy (pre-FIPS) padding vectors
KNOWN = {
    b"": "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470",
    b"abc": "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45",
}

# frozen from the oracle: digest of 64 zero bytes, the all-zero node id
ZERO_NODE_DIGEST = "ad3228b676f7d3cd4284a5443f17f1962b36e491b30a40b2405849e597ba5fb5"


def test_empty_and_abc_vectors():
    assert keccak256(b"").hex() == KNOWN[b""]
    assert keccak256(b"abc").hex() == KNOWN[b"abc"]


def test_selector_vector():
    assert keccak256(b"kill()")[:4].hex() == "41c0e1b5"


def test_zero_node_id_digest_frozen():
    assert keccak256(b"\x00" * 64).hex() == ZERO_NODE_DIGEST
    assert oracles.keccak256_oracle(b"\x00" * 64).hex() == ZERO_NODE_DIGEST


@pytest.mark.parametrize("size", [0, 1, 7, 8, 63, 64, 135, 136, 137, 271,
                                  272, 1000])
def test_matches_oracle_at_padding_boundaries(size):
    data = bytes(range(256)) * (size // 256 + 1)
    data = data[:size]
    assert keccak256(data) == oracles.keccak256_oracle(data)


@given(st.binary(max_size=400))
@settings(max_examples=200, deadline=None)
def test_matches_oracle_random(data):
    assert keccak256(data) == oracles.keccak256_oracle(data)


def test_cached_variant_agrees():
    for data in (b"", b"x", b"\x00" * 64, b"spam" * 50):
        assert keccak256_cached(data) == keccak256(data)


def test_batch_matches_scalar():
    rng = np.random.default_rng(42)
    messages = rng.bytes(64 * 257)
    lanes = np.frombuffer(messages, dtype="<u8").reshape(257, 8)
    digests = keccak256_batch64(lanes)
    assert digests.shape == (257, 4)
    for i in range(257):
        expected = keccak256(messages[64 * i:64 * (i + 1)])
        assert digests[i].tobytes() == expected


def test_batch_single_row():
    lanes = np.zeros((1, 8), dtype="<u8")
    assert keccak256_batch64(lanes)[0].tobytes().hex() == ZERO_NODE_DIGEST
