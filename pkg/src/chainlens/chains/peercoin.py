"""Peercoin block classification: proof-of-stake vs proof-of-work over time.

Classification trusts the proof tag attached to each ingested block;
reconstructing coinstake structure would need UTXO context the store does
not keep.
"""

from __future__ import annotations

from collections import Counter

from ..errors import EmptyChain, MissingProofTag
from ..model import ChainKind, ProofKind, month_key
from ..store import Store, _month_span


def pos_pow_counts(store: Store, granularity: str = "month"
                   ) -> list[tuple[str, int, int]]:
    """(period, pos_count, pow_count) per calendar period, zero-filled."""
    if granularity != "month":
        raise ValueError(f"unsupported granularity: {granularity!r}")
    pos: Counter[str] = Counter()
    pow_: Counter[str] = Counter()
    saw_block = False
    for block in store.iter_blocks(ChainKind.PEERCOIN):
        saw_block = True
        if block.proof is None:
            raise MissingProofTag(block.height)
        period = month_key(block.timestamp)
        if block.proof is ProofKind.POS:
            pos[period] += 1
        else:
            pow_[period] += 1
    if not saw_block:
        raise EmptyChain(ChainKind.PEERCOIN.value)
    months = sorted(set(pos) | set(pow_))
    return [(month, pos.get(month, 0), pow_.get(month, 0))
            for month in _month_span(months[0], months[-1])]
