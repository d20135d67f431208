"""Namecoin name-operation analytics: fees, merge mining, re-registrations.

Amounts are integers in 10^-8 NMC units. Registration costs a 0.01 NMC
announcement (name_new) plus a 0.005 NMC reveal (name_firstupdate) that
also pays the time-decaying network fee; renewals (name_update) cost the
flat 0.005 NMC. A registration lapses when no renewal lands within the
expiry window, after which the name can be registered again from scratch.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from datetime import date
from typing import Callable

from ..errors import AuxPowBeforeActivation, EmptyChain, MalformedNameOp
from ..model import (ChainKind, NameOpKind, NameOpPayload, Transaction,
                     iso_week_key, utc_date)
from ..store import Store, week_span

log = logging.getLogger(__name__)

UNITS_PER_NMC = 10**8

_LAUNCH_NETWORK_FEE = 50 * UNITS_PER_NMC
_HALVING_BLOCKS = 8192


def default_network_fee(height: int) -> int:
    """Approximate decaying network fee: 50 NMC at launch, halving every
    8192 blocks, zero once below one unit. The historical formula is not
    fully specified anywhere convenient; treat this as a stand-in and
    supply your own curve for exact work."""
    if height < 0:
        raise ValueError("height must be >= 0")
    return _LAUNCH_NETWORK_FEE >> (height // _HALVING_BLOCKS)


@dataclass
class FeeSchedule:
    name_new_fee: int = UNITS_PER_NMC // 100          # 0.01 NMC
    fixed_op_fee: int = UNITS_PER_NMC // 200          # 0.005 NMC
    network_fee_curve: Callable[[int], int] = default_network_fee
    merge_mining_start_height: int = 19_200
    expiry_window_blocks: int = 36_000


def classify_name_op(tx: Transaction) -> NameOpPayload | None:
    """Validated name-op payload of a Namecoin transaction, if any.

    A name_new announces only a hash (the name stays hidden until the
    reveal); the other two operations must carry the plain name.
    """
    if tx.chain is not ChainKind.NAMECOIN:
        raise ValueError("not a Namecoin transaction")
    op = tx.name_op
    if op is None:
        return None
    if op.kind is NameOpKind.NEW:
        if not op.name_hash:
            raise MalformedNameOp(f"tx {tx.hash}: name_new without a name hash")
    else:
        if not op.name:
            raise MalformedNameOp(
                f"tx {tx.hash}: {op.kind.value} without a name")
    return op


def expected_fee(kind: NameOpKind, height: int, schedule: FeeSchedule) -> int:
    if kind is NameOpKind.NEW:
        return schedule.name_new_fee
    if kind is NameOpKind.UPDATE:
        return schedule.fixed_op_fee
    return schedule.fixed_op_fee + schedule.network_fee_curve(height)


def weekly_fee_sums(store: Store) -> list[tuple[str, str, int]]:
    """(ISO week, op kind, sum of actually paid fees) rows, zero-filled.

    Only operation kinds that occur at all get rows; weeks inside the
    observed span with no operations of such a kind are emitted with 0.
    """
    times = store.block_times(ChainKind.NAMECOIN)
    sums: dict[tuple[str, NameOpKind], int] = {}
    kinds_seen: set[NameOpKind] = set()
    for tx in store.iter_txs(ChainKind.NAMECOIN):
        op = classify_name_op(tx)
        if op is None:
            continue
        block_time = times.get(tx.block_height)
        if block_time is None:
            continue
        week = iso_week_key(block_time)
        key = (week, op.kind)
        sums[key] = sums.get(key, 0) + op.paid_fee
        kinds_seen.add(op.kind)
    if not sums:
        return []
    weeks = sorted({week for week, _ in sums})
    kinds = [kind for kind in NameOpKind if kind in kinds_seen]
    return [(week, kind.value, sums.get((week, kind), 0))
            for week in week_span(weeks[0], weeks[-1])
            for kind in kinds]


_SPLIT_METRICS = ("blocks", "txs", "name_new", "name_firstupdate", "name_update")


@dataclass
class MergeMineSplit:
    """Counts per metric as (normally_mined, merge_mined) pairs."""
    rows: dict[str, tuple[int, int]] = field(default_factory=dict)

    def total(self, metric: str) -> int:
        normal, merged = self.rows[metric]
        return normal + merged

    def merged_pct(self, metric: str) -> float:
        total = self.total(metric)
        return 100.0 * self.rows[metric][1] / total if total else 0.0


def merge_mine_split(store: Store,
                     schedule: FeeSchedule | None = None) -> MergeMineSplit:
    """Split block/tx/name-op counts by whether the block was merge-mined.

    Blocks without an auxpow tag count as normally mined. An auxpow block
    below the activation height is corrupt input and fatal.
    """
    if schedule is None:
        schedule = FeeSchedule()
    merged_heights: set[int] = set()
    counts: dict[str, list[int]] = {m: [0, 0] for m in _SPLIT_METRICS}
    saw_block = False
    for block in store.iter_blocks(ChainKind.NAMECOIN):
        saw_block = True
        merged = bool(block.is_auxpow)
        if merged and block.height < schedule.merge_mining_start_height:
            raise AuxPowBeforeActivation(block.height,
                                         schedule.merge_mining_start_height)
        if merged:
            merged_heights.add(block.height)
        counts["blocks"][merged] += 1
    if not saw_block:
        raise EmptyChain(ChainKind.NAMECOIN.value)
    for tx in store.iter_txs(ChainKind.NAMECOIN):
        merged = tx.block_height in merged_heights
        counts["txs"][merged] += 1
        op = classify_name_op(tx)
        if op is not None:
            counts[f"name_{op.kind.value}"][merged] += 1
    return MergeMineSplit(rows={m: (c[0], c[1]) for m, c in counts.items()})


@dataclass
class NameHistory:
    name: str
    events: list[tuple[int, NameOpKind, str]] = field(default_factory=list)


def build_name_histories(store: Store) -> dict[str, NameHistory]:
    """Per-name event streams from reveal/renewal operations, ledger-ordered.

    name_new operations carry only a hash and cannot be linked to a name,
    so they do not participate.
    """
    histories: dict[str, NameHistory] = {}
    for tx in store.iter_txs(ChainKind.NAMECOIN):
        op = classify_name_op(tx)
        if op is None or op.kind is NameOpKind.NEW:
            continue
        history = histories.setdefault(op.name, NameHistory(name=op.name))
        history.events.append((tx.block_height, op.kind, tx.hash))
    return histories


@dataclass
class ReregReport:
    day: date
    firstupdates_on_day: int = 0
    reregistrations: list[tuple[str, list[int]]] = field(default_factory=list)
    anomalies: list[tuple[str, list[int]]] = field(default_factory=list)


def detect_reregistrations(store: Store, schedule: FeeSchedule,
                           day: date) -> ReregReport:
    """Find names registered on `day` whose earlier registration expired.

    A prior registration is expired when its last event (reveal or any
    renewal) sits more than the expiry window below the new registration
    height. A re-registration of a name that was still active is reported
    as an anomaly rather than silently dropped.
    """
    times = store.block_times(ChainKind.NAMECOIN)
    histories = build_name_histories(store)
    report = ReregReport(day=day)
    for history in sorted(histories.values(), key=lambda h: h.name):
        for position, (height, kind, _tx_hash) in enumerate(history.events):
            if kind is not NameOpKind.FIRST_UPDATE:
                continue
            block_time = times.get(height)
            if block_time is None or utc_date(block_time) != day:
                continue
            report.firstupdates_on_day += 1
            prior = history.events[:position]
            prior_registrations = [h for h, k, _ in prior
                                   if k is NameOpKind.FIRST_UPDATE]
            if not prior_registrations:
                continue
            last_active_height = prior[-1][0]
            entry = (history.name, prior_registrations)
            if last_active_height + schedule.expiry_window_blocks < height:
                report.reregistrations.append(entry)
            else:
                report.anomalies.append(entry)
    return report
