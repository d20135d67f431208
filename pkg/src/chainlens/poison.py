"""Detect file-format payloads embedded in transaction input data.

Matching is a cheap candidate filter: by default only the first two
payload bytes are compared against each signature (at its offset), which
is deliberately permissive and can fire on several formats at once; the
shipped table, for instance, cannot tell a gzip stream from a gzipped tar
and labels both "gzip". An optional second pass re-checks the entire magic
sequence for payloads the filter caught.
"""

from __future__ import annotations

import csv
import logging
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import InvalidHex
from .model import HEX_DIGITS, ChainKind, strip_0x
from .store import Store

log = logging.getLogger(__name__)

_SIGNATURE_FILE = "signatures.csv"
_MAX_MAGIC_BYTES = 16


def extract_payload(input_hex: str) -> bytes:
    """Decode raw payload bytes from a transaction input hex string."""
    digits = strip_0x(input_hex)
    for position, char in enumerate(digits):
        if char.lower() not in HEX_DIGITS:
            raise InvalidHex(position, f"character {char!r}")
    if len(digits) % 2:
        raise InvalidHex(len(digits), "odd number of hex digits")
    return bytes.fromhex(digits)


@dataclass(frozen=True)
class SignatureEntry:
    format_name: str
    magic: bytes
    offset: int
    extension: str

    def __post_init__(self) -> None:
        if not 1 <= len(self.magic) <= _MAX_MAGIC_BYTES:
            raise ValueError(f"{self.format_name}: magic must be 1-16 bytes")
        if self.offset < 0:
            raise ValueError(f"{self.format_name}: negative offset")


@dataclass
class SignatureDb:
    entries: list[SignatureEntry]
    match_prefix_bytes: int = 2

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("signature table is empty")
        if self.match_prefix_bytes < 1:
            raise ValueError("match_prefix_bytes must be >= 1")
        seen = set()
        for entry in self.entries:
            key = (entry.format_name, entry.magic, entry.offset)
            if key in seen:
                raise ValueError(f"duplicate signature row {key}")
            seen.add(key)

    def extension_for(self, format_name: str) -> str:
        for entry in self.entries:
            if entry.format_name == format_name:
                return entry.extension
        raise KeyError(format_name)


def load_signatures(path: str | Path | None = None,
                    match_prefix_bytes: int = 2) -> SignatureDb:
    """Load a `format,magic_hex,offset,extension` CSV; None loads the bundled table."""
    if path is None:
        text = resources.files("chainlens").joinpath(
            f"data/{_SIGNATURE_FILE}").read_text(encoding="utf-8")
        lines = text.splitlines()
    else:
        with open(path, encoding="utf-8", newline="") as fh:
            lines = fh.read().splitlines()
    entries = []
    for row_no, row in enumerate(csv.reader(lines), start=1):
        if not row or (row_no == 1 and row[0] == "format"):
            continue
        if len(row) != 4:
            raise ValueError(f"signature row {row_no}: expected 4 fields")
        name, magic_hex, offset, extension = (f.strip() for f in row)
        entries.append(SignatureEntry(format_name=name,
                                      magic=bytes.fromhex(magic_hex),
                                      offset=int(offset),
                                      extension=extension))
    return SignatureDb(entries=entries, match_prefix_bytes=match_prefix_bytes)


def _entry_matches(payload: bytes, entry: SignatureEntry,
                   prefix_bytes: int | None) -> bool:
    length = len(entry.magic) if prefix_bytes is None \
        else min(len(entry.magic), prefix_bytes)
    segment = payload[entry.offset:entry.offset + length]
    return len(segment) == length and segment == entry.magic[:length]


def match_signatures(payload: bytes, db: SignatureDb,
                     full_magic: bool = False) -> list[str]:
    """Names of all candidate formats, in table order.

    The default mode compares only db.match_prefix_bytes leading magic
    bytes and is a high-recall, false-positive-prone filter; full_magic
    re-checks complete magic sequences instead.
    """
    prefix = None if full_magic else db.match_prefix_bytes
    return [entry.format_name for entry in db.entries
            if _entry_matches(payload, entry, prefix)]


@dataclass
class ScanRow:
    format_name: str
    tx_hash: str
    payload_size: int


@dataclass
class ScanReport:
    rows: list[ScanRow] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)
    write_errors: list[str] = field(default_factory=list)


def scan_corpus(store: Store, chain: ChainKind, db: SignatureDb,
                out_dir: str | Path | None = None,
                verify_full: bool = False) -> ScanReport:
    """Scan every stored transaction input against the signature table.

    Each (transaction, matched format) pair yields one report row; with
    `out_dir` set, candidate payloads are also written to disk as
    `<tx_hash>.<extension>`. Write failures are recorded per file, never
    fatal. `verify_full` drops candidates whose complete magic does not
    match.
    """
    report = ScanReport()
    counts: Counter[str] = Counter()
    directory = Path(out_dir) if out_dir is not None else None
    if directory is not None:
        directory.mkdir(parents=True, exist_ok=True)
    for tx in store.iter_txs(chain):
        if not tx.input_data:
            continue
        payload = extract_payload(tx.input_data)
        names = match_signatures(payload, db)
        if verify_full and names:
            full = set(match_signatures(payload, db, full_magic=True))
            names = [n for n in names if n in full]
        for name in names:
            report.rows.append(ScanRow(format_name=name, tx_hash=tx.hash,
                                       payload_size=len(payload)))
            counts[name] += 1
            if directory is not None:
                target = directory / f"{tx.hash}.{db.extension_for(name)}"
                try:
                    target.write_bytes(payload)
                except OSError as exc:
                    log.warning("could not write %s: %s", target, exc)
                    report.write_errors.append(f"{target}: {exc}")
    report.counts = dict(counts)
    return report
