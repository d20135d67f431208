"""Deterministic simulated discovery overlay for crawler testing.

Every peer holds a fixed routing table; find_node answers with the k table
entries closest to the queried target. Unreachable peers never answer.
Churn makes individual queries fail as a pure function of (operation, peer,
target) under the overlay seed, so identical runs see identical failures.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from ..errors import QueryTimeout
from .identity import NODE_ID_LEN, PeerInfo, node_hash, select_neighbors

_CHURN_SCALE = float(1 << 64)


@dataclass
class GroundTruth:
    peers: list[PeerInfo]
    reachable_ids: frozenset[bytes]
    tables: dict[bytes, list[PeerInfo]] = field(repr=False, default_factory=dict)

    @property
    def all_ids(self) -> frozenset[bytes]:
        return frozenset(p.node_id for p in self.peers)


class SimTransport:
    """In-memory DiscoveryTransport over a generated topology."""

    def __init__(self, tables: dict[bytes, list[PeerInfo]],
                 unreachable: frozenset[bytes], churn_failure_rate: float,
                 neighbor_k: int, seed_tag: bytes):
        self._tables = tables
        self._unreachable = unreachable
        self._churn = churn_failure_rate
        self._k = neighbor_k
        self._seed_tag = seed_tag

    def _churn_drop(self, *parts: bytes) -> bool:
        if self._churn <= 0.0:
            return False
        h = hashlib.blake2b(b"".join(parts), key=self._seed_tag,
                            digest_size=8).digest()
        return int.from_bytes(h, "big") / _CHURN_SCALE < self._churn

    def ping_pong(self, peer: PeerInfo) -> bool:
        if peer.node_id in self._unreachable:
            return False
        if peer.node_id not in self._tables:
            return False  # address not part of the overlay at all
        return not self._churn_drop(b"ping", peer.node_id)

    def find_node(self, peer: PeerInfo, target: bytes) -> list[PeerInfo]:
        if peer.node_id in self._unreachable:
            raise QueryTimeout(f"peer {peer.ip}:{peer.port} unreachable")
        if self._churn_drop(b"find", peer.node_id, target):
            raise QueryTimeout(f"query to {peer.ip}:{peer.port} dropped")
        table = self._tables.get(peer.node_id, [])
        return select_neighbors(table, node_hash(target), self._k)


def build_sim_overlay(n_peers: int, degree: int,
                      unreachable_fraction: float = 0.0,
                      churn_failure_rate: float = 0.0,
                      rng_seed: int | None = None,
                      neighbor_k: int = 16) -> tuple[SimTransport, GroundTruth]:
    if n_peers < 1:
        raise ValueError("n_peers must be >= 1")
    if degree > n_peers - 1:
        raise ValueError("degree exceeds peer count")
    if not 0.0 <= unreachable_fraction <= 1.0:
        raise ValueError("unreachable_fraction must be in [0, 1]")
    if not 0.0 <= churn_failure_rate < 1.0:
        raise ValueError("churn_failure_rate must be in [0, 1)")
    rng = np.random.default_rng(rng_seed)
    peers = [PeerInfo(node_id=rng.bytes(NODE_ID_LEN),
                      ip=f"198.51.{i >> 8}.{i & 0xFF}",
                      port=30000 + (i % 20000) + 1)
             for i in range(n_peers)]
    tables: dict[bytes, list[PeerInfo]] = {}
    for i, peer in enumerate(peers):
        if degree == 0:
            tables[peer.node_id] = []
            continue
        choices = rng.choice(n_peers - 1, size=degree, replace=False)
        # indices skip the peer itself
        tables[peer.node_id] = [peers[j if j < i else j + 1] for j in choices]
    n_unreachable = int(round(n_peers * unreachable_fraction))
    unreachable_idx = rng.choice(n_peers, size=n_unreachable, replace=False)
    unreachable = frozenset(peers[int(j)].node_id for j in unreachable_idx)
    seed_tag = hashlib.blake2b(repr(rng_seed).encode(),
                               digest_size=16).digest()
    transport = SimTransport(tables, unreachable, churn_failure_rate,
                             neighbor_k, seed_tag)
    truth = GroundTruth(peers=peers,
                        reachable_ids=frozenset(p.node_id for p in peers)
                        - unreachable,
                        tables=tables)
    return transport, truth
