"""Bounded-concurrency discovery crawl over a pluggable transport.

The crawl keeps a FIFO work queue: newly admitted peers are queried for
every precomputed target, and every previously unseen peer returned by a
query is ping-ponged exactly once before admission. All bookkeeping runs
on the coordinating thread; workers only execute transport calls, so the
final peer set is the closure of the seed set and does not depend on
completion order.
"""

from __future__ import annotations

import ipaddress
import json
import logging
from collections import Counter, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from queue import SimpleQueue
from typing import Protocol

from ..errors import NoSeedsReachable
from .identity import PeerInfo, hash_prefix, node_hash, precompute_targets

log = logging.getLogger(__name__)

_PRIVATE_RANGES = (
    ipaddress.ip_network("10.0.0.0/8"),
    ipaddress.ip_network("172.16.0.0/12"),
    ipaddress.ip_network("192.168.0.0/16"),
)
_FIND_CHUNK = 32  # targets per worker task; pure batching, no semantic effect
_MAX_WORKERS = 32


class DiscoveryTransport(Protocol):
    def ping_pong(self, peer: PeerInfo) -> bool: ...

    def find_node(self, peer: PeerInfo, target: bytes) -> list[PeerInfo]: ...


@dataclass
class CrawlConfig:
    prefix_bits: int = 13
    neighbor_k: int = 16
    max_in_flight: int = 500
    ping_timeout: float = 1.0
    query_timeout: float = 2.0
    rng_seed: int | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.prefix_bits <= 32:
            raise ValueError("prefix_bits must be in [0, 32]")
        if self.neighbor_k < 1:
            raise ValueError("neighbor_k must be >= 1")
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be >= 1")


@dataclass
class CrawlReport:
    prefix_bits: int
    known_peers: list[PeerInfo] = field(default_factory=list)
    failed_endpoints: list[tuple[str, int, str]] = field(default_factory=list)
    unique_node_ids: int = 0
    unique_ips: int = 0
    unique_ports: int = 0
    ip_port_combos: int = 0
    private_range_ips: int = 0
    node_ids_per_ip: list[tuple[str, int]] = field(default_factory=list)
    prefix_histogram: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "prefix_bits": self.prefix_bits,
            "known_peers": [{"node_id": p.node_id.hex(), "ip": p.ip,
                             "port": p.port} for p in self.known_peers],
            "failed_endpoints": [list(f) for f in self.failed_endpoints],
            "unique_node_ids": self.unique_node_ids,
            "unique_ips": self.unique_ips,
            "unique_ports": self.unique_ports,
            "ip_port_combos": self.ip_port_combos,
            "private_range_ips": self.private_range_ips,
            "node_ids_per_ip": [list(i) for i in self.node_ids_per_ip],
            "prefix_histogram": [[k, v] for k, v in
                                 sorted(self.prefix_histogram.items())],
        }
        return json.dumps(doc, sort_keys=True, indent=2)


class _FindFailed:
    def __init__(self, reason: str):
        self.reason = reason


def _run_task(transport: DiscoveryTransport, task: tuple):
    if task[0] == "ping":
        try:
            return bool(transport.ping_pong(task[1]))
        except Exception as exc:  # noqa: BLE001 - transport faults are data
            log.debug("ping_pong raised: %s", exc)
            return False
    _, peer, targets = task
    results = []
    for target in targets:
        try:
            results.append(transport.find_node(peer, target))
        except Exception as exc:  # noqa: BLE001
            results.append(_FindFailed(str(exc)))
    return results


def crawl(transport: DiscoveryTransport, seeds: list[PeerInfo],
          config: CrawlConfig) -> CrawlReport:
    """Run the full discovery crawl and return the finished report."""
    if not seeds:
        raise NoSeedsReachable()
    targets = precompute_targets(config.prefix_bits, config.rng_seed)
    target_list = [targets[p] for p in sorted(targets)]
    target_chunks = [tuple(target_list[i:i + _FIND_CHUNK])
                     for i in range(0, len(target_list), _FIND_CHUNK)]

    known: dict[bytes, PeerInfo] = {}
    claimed: set[bytes] = set()
    failed: set[tuple[str, int, str]] = set()
    work: deque[tuple] = deque()
    for seed in seeds:
        if seed.node_id not in claimed:
            claimed.add(seed.node_id)
            work.append(("ping", seed))

    done_q: SimpleQueue = SimpleQueue()
    in_flight = 0
    with ThreadPoolExecutor(
            max_workers=min(config.max_in_flight, _MAX_WORKERS)) as pool:
        def submit(task: tuple) -> None:
            nonlocal in_flight
            future = pool.submit(_run_task, transport, task)
            future.crawl_task = task  # type: ignore[attr-defined]
            future.add_done_callback(done_q.put)
            in_flight += 1

        while work or in_flight:
            while work and in_flight < config.max_in_flight:
                submit(work.popleft())
            future = done_q.get()
            in_flight -= 1
            task = future.crawl_task  # type: ignore[attr-defined]
            outcome = future.result()
            if task[0] == "ping":
                peer = task[1]
                if outcome:
                    known[peer.node_id] = peer
                    for chunk in target_chunks:
                        work.append(("find", peer, chunk))
                else:
                    failed.add((peer.ip, peer.port, "ping_pong"))
            else:
                peer = task[1]
                for result in outcome:
                    if isinstance(result, _FindFailed):
                        failed.add((peer.ip, peer.port, "find_node"))
                        continue
                    for candidate in result:
                        if candidate.node_id not in claimed:
                            claimed.add(candidate.node_id)
                            work.append(("ping", candidate))
    if not known:
        raise NoSeedsReachable()
    report = CrawlReport(
        prefix_bits=config.prefix_bits,
        known_peers=sorted(known.values(), key=lambda p: p.node_id),
        failed_endpoints=sorted(failed))
    return endpoint_stats(report)


def endpoint_stats(report: CrawlReport) -> CrawlReport:
    """Fill the derived statistics fields from report.known_peers."""
    peers = report.known_peers
    ips = {p.ip for p in peers}
    report.unique_node_ids = len({p.node_id for p in peers})
    report.unique_ips = len(ips)
    report.unique_ports = len({p.port for p in peers})
    report.ip_port_combos = len({(p.ip, p.port) for p in peers})
    report.private_range_ips = sum(1 for ip in ips if _is_private(ip))
    per_ip = Counter(p.ip for p in peers)
    report.node_ids_per_ip = sorted(per_ip.items(),
                                    key=lambda kv: (-kv[1], kv[0]))
    histogram = {p: 0 for p in range(1 << report.prefix_bits)}
    for peer in peers:
        histogram[hash_prefix(node_hash(peer.node_id),
                              report.prefix_bits)] += 1
    report.prefix_histogram = histogram
    return report


def _is_private(ip: str) -> bool:
    try:
        addr = ipaddress.ip_address(ip)
    except ValueError:
        return False
    if addr.version != 4:
        return False
    return any(addr in net for net in _PRIVATE_RANGES)


def load_topology(path: str | Path) -> dict:
    """Read a simulator topology description from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return {
        "n_peers": int(raw["n_peers"]),
        "degree": int(raw["degree"]),
        "unreachable_fraction": float(raw.get("unreachable_fraction", 0.0)),
        "churn_failure_rate": float(raw.get("churn", 0.0)),
        "rng_seed": raw.get("seed"),
    }
