"""Contract lifecycle registry, address derivation, lifetimes, pre-creation funding.

The base ledger only reveals top-level creations; creations performed by
other contracts and terminations require execution traces, so those arrive
as NDJSON side-files with the shapes:

    {"type":"internal_create","parent":"0x..","address":"0x..","height":N}
    {"type":"terminate","address":"0x..","height":N,"refund_to":"0x..|null"}
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator

from .. import rlp
from ..errors import AddressMismatch, MalformedJson, SchemaViolation
from ..keccak import keccak256
from ..model import ChainKind, Transaction, normalize_hex
from ..store import Store

log = logging.getLogger(__name__)

NULL_ADDRESS = "0" * 40
DEFAULT_LIFETIME_EDGES = (100, 10_000)


class CreatorKind(enum.Enum):
    BY_TRANSACTION = "by_transaction"
    BY_CONTRACT = "by_contract"


@dataclass
class ContractRecord:
    address: str
    creation_height: int
    creator: str
    creator_kind: CreatorKind
    creation_index: int = -1  # index in block; -1 = before any tx (internal)
    termination_height: int | None = None
    balance: int = 0
    code: str = ""


class ContractRegistry:
    def __init__(self) -> None:
        self._records: dict[str, ContractRecord] = {}

    def add(self, record: ContractRecord) -> None:
        existing = self._records.get(record.address)
        if existing is not None:
            log.warning("contract %s created twice (heights %d, %d); keeping first",
                        record.address, existing.creation_height,
                        record.creation_height)
            return
        self._records[record.address] = record

    def get(self, address: str) -> ContractRecord | None:
        return self._records.get(address)

    def __contains__(self, address: str) -> bool:
        return address in self._records

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[ContractRecord]:
        return iter(self._records.values())

    def created_before(self, address: str, height: int, index: int) -> bool:
        """Was the address a contract (live or dead) before (height, index)?"""
        record = self._records.get(address)
        if record is None:
            return False
        return (record.creation_height, record.creation_index) < (height, index)


def derive_contract_address(sender: str, nonce: int) -> str:
    """Address of the contract created by `sender` at account nonce `nonce`."""
    sender_bytes = bytes.fromhex(normalize_hex(sender, byte_len=20))
    digest = keccak256(rlp.encode([sender_bytes, rlp.encode_uint(nonce)]))
    return digest[-20:].hex()


def iter_creations(store: Store) -> Iterator[tuple[Transaction, str]]:
    """Yield (creation_tx, derived_address) in ledger order.

    The account nonce of each sender is inferred by counting its earlier
    transactions, which assumes the ingested dump is complete for every
    creating sender from its first transaction onward.
    """
    nonces: dict[str, int] = {}
    for tx in store.iter_txs(ChainKind.ETHEREUM):
        nonce = nonces.get(tx.sender, 0)
        nonces[tx.sender] = nonce + 1
        if tx.recipient is None:
            yield tx, derive_contract_address(tx.sender, nonce)


def _read_side_records(source, expected_type: str) -> Iterator[tuple[int, dict]]:
    if source is None:
        return
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            yield from _read_side_records(fh, expected_type)
        return
    for line_no, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedJson(line_no, exc.msg)
        if not isinstance(obj, dict) or obj.get("type") != expected_type:
            raise SchemaViolation(line_no, "type",
                                  f"expected {expected_type!r}")
        yield line_no, obj


def build_contract_registry(store: Store,
                            internal_creations: Iterable[str] | IO[str] | str | Path | None = None,
                            terminations: Iterable[str] | IO[str] | str | Path | None = None,
                            supplied_addresses: dict[str, str] | None = None
                            ) -> ContractRegistry:
    """Assemble the contract lifecycle registry from the ledger and side-files.

    `supplied_addresses` optionally maps a creation tx hash to the address
    an external source reported for it; every derived address is
    cross-checked against this map and a disagreement is fatal.
    """
    registry = ContractRegistry()
    for tx, address in iter_creations(store):
        if supplied_addresses and tx.hash in supplied_addresses:
            supplied = normalize_hex(supplied_addresses[tx.hash], byte_len=20)
            if supplied != address:
                raise AddressMismatch(tx.hash, address, supplied)
        registry.add(ContractRecord(
            address=address,
            creation_height=tx.block_height,
            creator=tx.sender,
            creator_kind=CreatorKind.BY_TRANSACTION,
            creation_index=tx.index_in_block,
            balance=tx.value,
            code=tx.input_data))
    for line_no, obj in _read_side_records(internal_creations, "internal_create"):
        try:
            address = normalize_hex(obj["address"], byte_len=20)
            parent = normalize_hex(obj["parent"], byte_len=20)
            height = int(obj["height"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation(line_no, "internal_create", str(exc))
        registry.add(ContractRecord(
            address=address, creation_height=height, creator=parent,
            creator_kind=CreatorKind.BY_CONTRACT))
    for line_no, obj in _read_side_records(terminations, "terminate"):
        try:
            address = normalize_hex(obj["address"], byte_len=20)
            height = int(obj["height"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation(line_no, "terminate", str(exc))
        record = registry.get(address)
        if record is None:
            log.warning("termination for unknown contract %s ignored", address)
            continue
        if height < record.creation_height:
            raise SchemaViolation(line_no, "height",
                                  f"termination at {height} precedes creation "
                                  f"at {record.creation_height}")
        record.termination_height = height
    return registry


def find_precreation_funding(store: Store, registry: ContractRegistry
                             ) -> list[tuple[str, str, int]]:
    """Value transfers toward addresses whose contract is created later.

    Returns (funding_tx_hash, contract_address, creation_height) tuples in
    ledger order of the funding transaction.
    """
    hits = []
    for tx in store.iter_txs(ChainKind.ETHEREUM):
        if tx.recipient is None or tx.value <= 0:
            continue
        record = registry.get(tx.recipient)
        if record is not None and record.creation_height > tx.block_height:
            hits.append((tx.hash, record.address, record.creation_height))
    return hits


def lifetime_histogram(registry: ContractRegistry,
                       bucket_edges: tuple[int, ...] = DEFAULT_LIFETIME_EDGES
                       ) -> dict[str, int]:
    """Histogram of termination_height - creation_height for dead contracts.

    Buckets are closed above: an edge of 100 takes every lifetime <= 100.
    Returns an empty mapping when nothing has terminated.
    """
    if list(bucket_edges) != sorted(set(bucket_edges)):
        raise ValueError("bucket edges must be strictly increasing")
    lifetimes = [record.termination_height - record.creation_height
                 for record in registry if record.termination_height is not None]
    if not lifetimes:
        return {}
    labels = [f"<={edge}" for edge in bucket_edges] + [f">{bucket_edges[-1]}"]
    histogram = {label: 0 for label in labels}
    for lifetime in lifetimes:
        for edge, label in zip(bucket_edges, labels):
            if lifetime <= edge:
                histogram[label] += 1
                break
        else:
            histogram[labels[-1]] += 1
    return histogram
