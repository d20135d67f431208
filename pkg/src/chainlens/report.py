"""Plot-ready report emission plus optional rate and geolocation joins.

Data outputs are byte-identical across runs on the same store: rows carry
no timestamps, all orderings are explicit, and run metadata goes to a
sidecar file only when requested.
"""

from __future__ import annotations

import csv
import io
import ipaddress
import json
import logging
import sys
from datetime import datetime, timezone
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .errors import MalformedGeoRow, MalformedRateRow

log = logging.getLogger(__name__)

_UNITS_PER_COIN = Decimal(10) ** 8


# -- rate-table join ----------------------------------------------------------

def read_rate_table(source: str | Path | TextIO) -> dict[str, Decimal]:
    """Parse a week→USD-per-coin CSV; a header row is allowed but optional."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            return read_rate_table(fh)
    rates: dict[str, Decimal] = {}
    for line_no, row in enumerate(csv.reader(source), start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if line_no == 1 and row[0].strip().lower() == "week":
            continue
        if len(row) != 2:
            raise MalformedRateRow(line_no, f"expected 2 fields, got {len(row)}")
        week, rate_text = row[0].strip(), row[1].strip()
        try:
            rate = Decimal(rate_text)
        except InvalidOperation:
            raise MalformedRateRow(line_no, f"bad rate {rate_text!r}")
        if rate < 0:
            raise MalformedRateRow(line_no, "negative rate")
        rates[week] = rate
    return rates


def join_usd(weekly_rows: Iterable[tuple[str, str, int]],
             rates: dict[str, Decimal]) -> list[tuple[str, str, int, str]]:
    """Append a USD column to (week, kind, units) fee rows.

    The fee is converted from smallest units to whole coins before the
    multiply; weeks without a rate get an empty cell rather than zero, the
    two cases mean different things downstream.
    """
    joined = []
    for week, kind, units in weekly_rows:
        rate = rates.get(week)
        if rate is None:
            usd = ""
        else:
            usd = str(Decimal(units) / _UNITS_PER_COIN * rate)
        joined.append((week, kind, units, usd))
    return joined


# -- geolocation join ---------------------------------------------------------

def read_geo_table(source: str | Path | TextIO) -> list[tuple[ipaddress.IPv4Network, str]]:
    """Parse a CIDR-or-IP→country CSV into networks sorted for longest-prefix match."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            return read_geo_table(fh)
    nets: list[tuple[ipaddress.IPv4Network, str]] = []
    for line_no, row in enumerate(csv.reader(source), start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if line_no == 1 and row[0].strip().lower() in ("cidr", "ip", "network"):
            continue
        if len(row) != 2:
            raise MalformedGeoRow(line_no, f"expected 2 fields, got {len(row)}")
        net_text, country = row[0].strip(), row[1].strip()
        if not country:
            raise MalformedGeoRow(line_no, "empty country code")
        try:
            if "/" in net_text:
                net = ipaddress.IPv4Network(net_text, strict=False)
            else:
                net = ipaddress.IPv4Network(f"{net_text}/32")
        except (ipaddress.AddressValueError, ipaddress.NetmaskValueError, ValueError):
            raise MalformedGeoRow(line_no, f"bad network {net_text!r}")
        nets.append((net, country))
    # widest first so a later, more specific rule overrides during lookup
    nets.sort(key=lambda item: item[0].prefixlen)
    return nets


def lookup_country(ip: str,
                   geo: Sequence[tuple[ipaddress.IPv4Network, str]]) -> str:
    """Longest-prefix country lookup; unmatched addresses become "??"."""
    try:
        addr = ipaddress.IPv4Address(ip)
    except ipaddress.AddressValueError:
        return "??"
    best = "??"
    best_len = -1
    for net, country in geo:
        if addr in net and net.prefixlen > best_len:
            best, best_len = country, net.prefixlen
    return best


def join_country(ips: Iterable[str],
                 geo: Sequence[tuple[ipaddress.IPv4Network, str]]
                 ) -> list[tuple[str, int]]:
    """Aggregate addresses into (country, count) rows, most populous first."""
    counts: dict[str, int] = {}
    for ip in ips:
        country = lookup_country(ip, geo)
        counts[country] = counts.get(country, 0) + 1
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


# -- emitters -----------------------------------------------------------------

def rows_to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def rows_to_json(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    docs = [dict(zip(header, row)) for row in rows]
    return json.dumps(docs, sort_keys=True, indent=2) + "\n"


def emit(text: str, out: str | Path | None) -> None:
    """Write report text to a file or, with no path, the data stream."""
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def emit_rows(header: Sequence[str], rows: Iterable[Sequence],
              fmt: str = "csv", out: str | Path | None = None) -> None:
    if fmt == "csv":
        emit(rows_to_csv(header, rows), out)
    elif fmt == "json":
        emit(rows_to_json(header, rows), out)
    else:
        raise ValueError(f"unknown format: {fmt}")


def write_stamp(out: str | Path, argv: Sequence[str]) -> Path:
    """Record run metadata in a sidecar so the data file stays reproducible."""
    from . import __version__
    stamp_path = Path(str(out) + ".stamp.json")
    doc = {
        "tool": "chainlens",
        "version": __version__,
        "argv": list(argv),
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }
    stamp_path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n",
                          encoding="utf-8")
    return stamp_path
