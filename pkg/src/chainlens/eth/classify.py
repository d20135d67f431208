"""Transaction-type classification and zombie-contract reporting.

A creation with an empty input deploys no code, so the resulting account
holds its endowment forever: a zombie. Classification of ordinary sends
depends on whether the recipient was a contract (live or dead) at the
moment the transaction executed.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

from ..errors import EmptyChain
from ..model import ChainKind, Transaction, month_key
from ..store import Store, _month_span
from .contracts import ContractRegistry, iter_creations


class TxClass(enum.Enum):
    TO_ACCOUNT = "to_account"
    TO_CONTRACT = "to_contract"
    CREATE_CONTRACT = "create_contract"
    ZOMBIE_CREATE = "zombie_create"


def classify_transaction(tx: Transaction, registry: ContractRegistry) -> TxClass:
    if tx.recipient is None:
        return TxClass.ZOMBIE_CREATE if tx.input_data == "" \
            else TxClass.CREATE_CONTRACT
    if registry.created_before(tx.recipient, tx.block_height,
                               tx.index_in_block):
        return TxClass.TO_CONTRACT
    return TxClass.TO_ACCOUNT


def monthly_class_counts(store: Store, registry: ContractRegistry
                         ) -> list[tuple[str, dict[TxClass, int]]]:
    """Per-UTC-month transaction counts split by class, zero-filled."""
    if store.block_count(ChainKind.ETHEREUM) == 0:
        raise EmptyChain(ChainKind.ETHEREUM.value)
    times = store.block_times(ChainKind.ETHEREUM)
    buckets: dict[str, Counter] = {}
    for tx in store.iter_txs(ChainKind.ETHEREUM):
        block_time = times.get(tx.block_height)
        if block_time is None:
            continue
        month = month_key(block_time)
        buckets.setdefault(month, Counter())[classify_transaction(tx, registry)] += 1
    if not buckets:
        return []
    months = sorted(buckets)
    return [(month, {cls: buckets.get(month, Counter()).get(cls, 0)
                     for cls in TxClass})
            for month in _month_span(months[0], months[-1])]


@dataclass
class ZombieReport:
    count: int = 0
    total_balance: int = 0
    cdf: list[tuple[int, int]] = field(default_factory=list)
    top_by_balance: list[tuple[str, int]] = field(default_factory=list)
    per_creator: list[tuple[str, int]] = field(default_factory=list)


def zombie_report(store: Store, top_k: int = 10) -> ZombieReport:
    """Count zombie creations, their stranded endowments, and who made them."""
    zombies = []
    for tx, address in iter_creations(store):
        if tx.input_data == "":
            zombies.append((tx.block_height, address, tx.value, tx.sender))
    report = ZombieReport(count=len(zombies),
                          total_balance=sum(z[2] for z in zombies))
    per_height = Counter(height for height, *_ in zombies)
    running = 0
    for height in sorted(per_height):
        running += per_height[height]
        report.cdf.append((height, running))
    report.top_by_balance = sorted(
        ((address, value) for _, address, value, _ in zombies),
        key=lambda kv: (-kv[1], kv[0]))[:top_k]
    creators = Counter(sender for *_, sender in zombies)
    report.per_creator = sorted(creators.items(), key=lambda kv: (-kv[1], kv[0]))
    return report
