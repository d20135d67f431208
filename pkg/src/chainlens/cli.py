"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data error. Diagnostics go to
stderr; report data goes to stdout or the --out file, and is byte-stable
across runs on the same store.
"""

from __future__ import annotations

import json
import logging
import os
import sys
from datetime import date

import click

from . import __version__
from .bootstrap import (ConnectResult, LiveProber, LiveResolver, ScriptedProber,
                        ScriptedResolver, harvest_seeds, load_seed_source,
                        probe_ports)
from .chains.namecoin import (FeeSchedule, detect_reregistrations,
                              merge_mine_split, weekly_fee_sums)
from .chains.peercoin import pos_pow_counts
from .discovery.crawler import (CrawlConfig, crawl, endpoint_stats,
                                load_topology)
from .discovery.identity import PeerInfo
from .discovery.simulator import build_sim_overlay
from .errors import ChainLensError
from .eth.classify import TxClass, monthly_class_counts, zombie_report
from .eth.contracts import (build_contract_registry, find_precreation_funding,
                            lifetime_histogram)
from .eth.probe import (DEFAULT_PROBE_CALLER, FixtureExecutor, GasPolicy,
                        RpcExecutor, SelectorDictionary, probe_suicidal)
from .eth.similarity import SimilarityBuckets, bucket_similarity
from .model import ChainKind, normalize_hex
from .poison import load_signatures, scan_corpus
from .report import (emit, emit_rows, join_country, join_usd, read_geo_table,
                     read_rate_table, write_stamp)
from .store import (Store, apply_cutoff, ingest_blocks, monthly_tx_counts,
                    parse_rfc3339, summarize_chain)

log = logging.getLogger(__name__)

_CHAIN_CHOICE = click.Choice([kind.value for kind in ChainKind])


class AppState:
    """Per-invocation settings shared by every subcommand."""

    def __init__(self, db_path: str, out: str | None, fmt: str,
                 cutoff: str | None, stamp: bool, argv: list[str]):
        self.db_path = db_path
        self.out = out
        self.fmt = fmt
        self.cutoff = cutoff
        self.stamp = stamp
        self.argv = argv

    def open_store(self) -> Store:
        return Store(self.db_path)

    def cutoff_height(self, store: Store, chain: ChainKind) -> int | None:
        if self.cutoff is None:
            return None
        try:
            moment = parse_rfc3339(self.cutoff)
        except ValueError:
            raise click.BadParameter(f"unparseable --cutoff {self.cutoff!r}")
        return apply_cutoff(store, chain, moment)

    def emit_rows(self, header, rows) -> None:
        emit_rows(header, rows, fmt=self.fmt, out=self.out)
        self._maybe_stamp()

    def emit_text(self, text: str) -> None:
        emit(text, self.out)
        self._maybe_stamp()

    def _maybe_stamp(self) -> None:
        if not self.stamp:
            return
        if self.out is None:
            raise click.UsageError("--stamp requires --out")
        write_stamp(self.out, self.argv)


pass_state = click.make_pass_decorator(AppState)


@click.group()
@click.version_option(__version__, prog_name="chainlens")
@click.option("--db", "db_path", default="chainlens.db", show_default=True,
              help="SQLite ledger store path.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write report data here instead of stdout.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.option("--cutoff", default=None, metavar="TIMESTAMP",
              help="RFC 3339 timestamp (or epoch seconds); analyses ignore "
                   "blocks whose time is not strictly before it.")
@click.option("--stamp", is_flag=True,
              help="Write run metadata to OUT.stamp.json (requires --out).")
@click.pass_context
def cli(ctx: click.Context, db_path: str, out: str | None, fmt: str,
        cutoff: str | None, stamp: bool) -> None:
    """Blockchain ledger forensics and peer-discovery measurement."""
    argv = sys.argv[1:] if sys.argv else []
    ctx.obj = AppState(db_path, out, fmt, cutoff, stamp, argv)


# -- ingestion and chain-agnostic reports -------------------------------------

@cli.command("ingest")
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.option("--chain", required=True, type=_CHAIN_CHOICE)
@click.option("--strict", is_flag=True,
              help="Abort on the first malformed line instead of skipping.")
@pass_state
def cmd_ingest(state: AppState, source: str, chain: str, strict: bool) -> None:
    """Load an NDJSON block/transaction file into the store."""
    store = state.open_store()
    try:
        with open(source, encoding="utf-8") as fh:
            summary = ingest_blocks(fh, ChainKind(chain), store, strict=strict)
    finally:
        store.close()
    for rejected in summary.rejected:
        click.echo(f"rejected {rejected}", err=True)
    state.emit_rows(("blocks", "txs", "rejected"),
                    [(summary.blocks_loaded, summary.txs_loaded,
                      summary.rejected_count)])


@cli.command("summarize")
@click.option("--chain", required=True, type=_CHAIN_CHOICE)
@pass_state
def cmd_summarize(state: AppState, chain: str) -> None:
    """One-row chain overview: time range, height, tx count and volume."""
    kind = ChainKind(chain)
    store = state.open_store()
    try:
        height = state.cutoff_height(store, kind)
        summary = summarize_chain(store, kind, cutoff_height=height)
    finally:
        store.close()
    state.emit_rows(
        ("chain", "first_block_time", "cutoff_time", "cutoff_height",
         "tx_count", "tx_volume"),
        [(summary.chain.value, summary.first_block_time, summary.cutoff_time,
          summary.cutoff_height, summary.tx_count, summary.tx_volume)])


@cli.group("report")
def report_group() -> None:
    """Cross-chain ledger reports."""


@report_group.command("tx-monthly")
@click.option("--chain", required=True, type=_CHAIN_CHOICE)
@pass_state
def cmd_tx_monthly(state: AppState, chain: str) -> None:
    """Transactions per UTC month, zero-filled, ascending."""
    kind = ChainKind(chain)
    store = state.open_store()
    try:
        height = state.cutoff_height(store, kind)
        rows = monthly_tx_counts(store, kind, cutoff_height=height)
    finally:
        store.close()
    state.emit_rows(("month", "txs"), rows)


# -- Ethereum analytics --------------------------------------------------------

def _registry_options(command):
    command = click.option(
        "--internal", "internal_path", default=None,
        type=click.Path(exists=True, dir_okay=False),
        help="NDJSON side-file of internal (contract-initiated) creations.")(command)
    command = click.option(
        "--terminated", "terminated_path", default=None,
        type=click.Path(exists=True, dir_okay=False),
        help="NDJSON side-file of contract terminations.")(command)
    return command


@cli.group("eth")
def eth_group() -> None:
    """Ethereum contract analytics."""


@eth_group.command("classify")
@_registry_options
@pass_state
def cmd_eth_classify(state: AppState, internal_path, terminated_path) -> None:
    """Monthly transaction counts split into the four interaction classes."""
    store = state.open_store()
    try:
        registry = build_contract_registry(store, internal_path,
                                           terminated_path)
        rows = monthly_class_counts(store, registry)
    finally:
        store.close()
    header = ("month",) + tuple(cls.value for cls in TxClass)
    state.emit_rows(header, [(month,) + tuple(counts[cls] for cls in TxClass)
                             for month, counts in rows])


@eth_group.command("zombies")
@click.option("--top", default=10, show_default=True,
              help="Size of the top-by-balance table.")
@click.option("--view", type=click.Choice(["summary", "cdf", "top", "creators"]),
              default="summary", show_default=True)
@pass_state
def cmd_eth_zombies(state: AppState, top: int, view: str) -> None:
    """Contracts created with empty code: counts, endowments, creators."""
    store = state.open_store()
    try:
        report = zombie_report(store, top_k=top)
    finally:
        store.close()
    if view == "summary":
        state.emit_rows(("zombie_count", "total_balance"),
                        [(report.count, report.total_balance)])
    elif view == "cdf":
        state.emit_rows(("height", "cumulative_zombies"), report.cdf)
    elif view == "top":
        state.emit_rows(("address", "balance"), report.top_by_balance)
    else:
        state.emit_rows(("creator", "zombies"), report.per_creator)


@eth_group.command("lifetimes")
@_registry_options
@click.option("--edges", default="100,10000", show_default=True,
              help="Comma-separated ascending bucket edges in blocks.")
@pass_state
def cmd_eth_lifetimes(state: AppState, internal_path, terminated_path,
                      edges: str) -> None:
    """Histogram of block distance between creation and termination."""
    try:
        edge_values = tuple(int(part) for part in edges.split(","))
    except ValueError:
        raise click.BadParameter(f"bad --edges {edges!r}")
    store = state.open_store()
    try:
        registry = build_contract_registry(store, internal_path,
                                           terminated_path)
    finally:
        store.close()
    histogram = lifetime_histogram(registry, bucket_edges=edge_values)
    state.emit_rows(("bucket", "contracts"), list(histogram.items()))


@eth_group.command("precreation")
@_registry_options
@pass_state
def cmd_eth_precreation(state: AppState, internal_path, terminated_path) -> None:
    """Value sent to contract addresses before the contract existed."""
    store = state.open_store()
    try:
        registry = build_contract_registry(store, internal_path,
                                           terminated_path)
        rows = find_precreation_funding(store, registry)
    finally:
        store.close()
    state.emit_rows(("funding_tx", "contract", "creation_height"), rows)


@eth_group.command("probe")
@click.option("--gas-fixture", "fixture_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Scripted executor fixture (NDJSON).")
@click.option("--rpc", "rpc_url", default=None,
              help="JSON-RPC endpoint of a node you control.")
@click.option("--contracts", "contracts_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Address list, one per line; defaults to every address "
                   "in the gas fixture.")
@click.option("--selectors", "selectors_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Alternative termination-selector dictionary.")
@click.option("--caller", default=DEFAULT_PROBE_CALLER, show_default=True)
@pass_state
def cmd_eth_probe(state: AppState, fixture_path, rpc_url, contracts_path,
                  selectors_path, caller: str) -> None:
    """Find contracts anyone can terminate, and confirm by invoking them."""
    if (fixture_path is None) == (rpc_url is None):
        raise click.UsageError("exactly one of --gas-fixture / --rpc required")
    if selectors_path is None:
        dictionary = SelectorDictionary.default()
    else:
        with open(selectors_path, encoding="utf-8") as fh:
            dictionary = SelectorDictionary.from_lines(fh)
    if fixture_path is not None:
        executor = FixtureExecutor.from_file(fixture_path)
        addresses = executor.addresses()
    else:
        executor = RpcExecutor(rpc_url)
        addresses = []
    if contracts_path is not None:
        addresses = _read_address_lines(contracts_path)
    if not addresses:
        raise click.UsageError("no contracts to probe; pass --contracts")
    caller = normalize_hex(caller, byte_len=20)
    records = [_address_record(address) for address in addresses]
    results = probe_suicidal(records, executor, dictionary, GasPolicy(),
                             caller=caller)
    state.emit_rows(
        ("contract", "selector", "gas_estimate", "confirmed", "refund",
         "refund_address", "suspicious_default", "error"),
        [(r.contract,
          r.triggering_selector.hex() if r.triggering_selector else "",
          "" if r.gas_estimate is None else r.gas_estimate,
          int(r.confirmed_terminated), r.refund_destination.value,
          r.refund_address or "", int(r.suspicious_default_function),
          r.executor_error or "") for r in results])


def _read_address_lines(path: str) -> list[str]:
    addresses = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                addresses.append(normalize_hex(line, byte_len=20))
    return addresses


def _address_record(address: str):
    from .eth.contracts import ContractRecord, CreatorKind
    return ContractRecord(address=normalize_hex(address, byte_len=20),
                          creation_height=0, creator="0" * 40,
                          creator_kind=CreatorKind.BY_TRANSACTION)


@eth_group.command("similarity")
@click.option("--references", "references_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON list of {name, bytecode, optimized} references.")
@click.option("--corpus", "corpus_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Contract bytecode corpus, one hex string per line.")
@click.option("--minor", default=100, show_default=True)
@click.option("--heavy", default=1000, show_default=True)
@pass_state
def cmd_eth_similarity(state: AppState, references_path, corpus_path,
                       minor: int, heavy: int) -> None:
    """Bucket corpus contracts by edit distance to reference bytecodes."""
    with open(references_path, encoding="utf-8") as fh:
        raw = json.load(fh)
    references = [(entry["name"], entry["bytecode"],
                   bool(entry.get("optimized", False))) for entry in raw]
    corpus = []
    with open(corpus_path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                corpus.append(line)
    buckets = SimilarityBuckets(minor_max=minor, heavy_max=heavy,
                                cutoff=max(heavy, 1000))
    rows = bucket_similarity(corpus, references, buckets)
    state.emit_rows(("reference", "optimized", "exact", "minor", "heavy"),
                    [(r.reference, int(r.optimized), r.exact, r.minor, r.heavy)
                     for r in rows])


# -- Namecoin ------------------------------------------------------------------

@cli.group("nmc")
def nmc_group() -> None:
    """Namecoin name-operation analytics."""


@nmc_group.command("fees")
@click.option("--rates", "rates_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Weekly USD-per-NMC rate CSV to join.")
@pass_state
def cmd_nmc_fees(state: AppState, rates_path) -> None:
    """Weekly sums of fees actually paid, by operation kind."""
    store = state.open_store()
    try:
        rows = weekly_fee_sums(store)
    finally:
        store.close()
    if rates_path is None:
        state.emit_rows(("week", "kind", "fee_units"), rows)
        return
    rates = read_rate_table(rates_path)
    state.emit_rows(("week", "kind", "fee_units", "usd"),
                    join_usd(rows, rates))


@nmc_group.command("mergemine")
@pass_state
def cmd_nmc_mergemine(state: AppState) -> None:
    """Blocks, txs, and name ops split by merge-mined vs normally mined."""
    store = state.open_store()
    try:
        split = merge_mine_split(store)
    finally:
        store.close()
    state.emit_rows(
        ("metric", "normal", "merged", "total", "merged_pct"),
        [(metric, normal, merged, normal + merged,
          f"{split.merged_pct(metric):.1f}")
         for metric, (normal, merged) in split.rows.items()])


@nmc_group.command("rereg")
@click.option("--day", "day_text", required=True, metavar="YYYY-MM-DD")
@click.option("--window", default=None, type=int,
              help="Override the expiry window in blocks.")
@pass_state
def cmd_nmc_rereg(state: AppState, day_text: str, window: int | None) -> None:
    """Registrations on a day whose name had previously expired."""
    try:
        day = date.fromisoformat(day_text)
    except ValueError:
        raise click.BadParameter(f"bad --day {day_text!r}")
    schedule = FeeSchedule() if window is None \
        else FeeSchedule(expiry_window_blocks=window)
    store = state.open_store()
    try:
        report = detect_reregistrations(store, schedule, day)
    finally:
        store.close()
    click.echo(f"first-updates on {day}: {report.firstupdates_on_day}", err=True)
    rows = [(name, "reregistration", ";".join(map(str, heights)))
            for name, heights in report.reregistrations]
    rows += [(name, "anomaly", ";".join(map(str, heights)))
             for name, heights in report.anomalies]
    state.emit_rows(("name", "status", "prior_registration_heights"), rows)


# -- Peercoin ---------------------------------------------------------------

@cli.group("ppc")
def ppc_group() -> None:
    """Peercoin consensus analytics."""


@ppc_group.command("pos-pow")
@pass_state
def cmd_ppc_pos_pow(state: AppState) -> None:
    """Monthly proof-of-stake vs proof-of-work block counts."""
    store = state.open_store()
    try:
        rows = pos_pow_counts(store)
    finally:
        store.close()
    state.emit_rows(("month", "pos", "pow"), rows)


# -- poisoning scanner ---------------------------------------------------------

@cli.command("poison")
@click.argument("action", type=click.Choice(["scan"]))
@click.option("--chain", default=ChainKind.ETHEREUM.value, type=_CHAIN_CHOICE,
              show_default=True)
@click.option("--save", "save_dir", default=None,
              type=click.Path(file_okay=False),
              help="Also write each candidate payload into this directory.")
@click.option("--verify-full", is_flag=True,
              help="Drop candidates whose complete magic does not match.")
@click.option("--signatures", "signatures_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Alternative signature table CSV.")
@pass_state
def cmd_poison(state: AppState, action: str, chain: str, save_dir,
               verify_full: bool, signatures_path) -> None:
    """Scan transaction payloads for embedded file-format signatures."""
    db = load_signatures(signatures_path)
    store = state.open_store()
    try:
        report = scan_corpus(store, ChainKind(chain), db, out_dir=save_dir,
                             verify_full=verify_full)
    finally:
        store.close()
    for err in report.write_errors:
        click.echo(f"write failed: {err}", err=True)
    state.emit_rows(("format", "tx_hash", "payload_size"),
                    [(r.format_name, r.tx_hash, r.payload_size)
                     for r in report.rows])


# -- discovery crawl -------------------------------------------------------------

@cli.command("crawl")
@click.option("--sim", "topology_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Simulated overlay topology JSON.")
@click.option("--live", "bootnodes_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Bootstrap node list, one <node_id_hex>@ip:port per line.")
@click.option("--prefix-bits", default=13, show_default=True)
@click.option("--k", "neighbor_k", default=16, show_default=True)
@click.option("--max-inflight", default=500, show_default=True)
@click.option("--seed", "rng_seed", default=None, type=int,
              help="Deterministic seed for target generation and simulation.")
@click.option("--geo", "geo_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="CIDR-to-country CSV; adds a country histogram.")
@pass_state
def cmd_crawl(state: AppState, topology_path, bootnodes_path, prefix_bits: int,
              neighbor_k: int, max_inflight: int, rng_seed, geo_path) -> None:
    """Enumerate a discovery overlay and report endpoint statistics (JSON)."""
    if (topology_path is None) == (bootnodes_path is None):
        raise click.UsageError("exactly one of --sim / --live required")
    config = CrawlConfig(prefix_bits=prefix_bits, neighbor_k=neighbor_k,
                         max_in_flight=max_inflight, rng_seed=rng_seed)
    if topology_path is not None:
        topology = load_topology(topology_path)
        if rng_seed is not None:
            topology["rng_seed"] = rng_seed
        transport, truth = build_sim_overlay(
            topology["n_peers"], topology["degree"],
            unreachable_fraction=topology["unreachable_fraction"],
            churn_failure_rate=topology["churn_failure_rate"],
            rng_seed=topology["rng_seed"], neighbor_k=neighbor_k)
        reachable = [p for p in truth.peers if p.node_id in truth.reachable_ids]
        seeds = reachable[:3]
    else:
        from .discovery.live import UdpV4Transport
        transport = UdpV4Transport(private_key=os.urandom(32),
                                   neighbor_k=neighbor_k)
        seeds = _read_bootnodes(bootnodes_path)
    report = endpoint_stats(crawl(transport, seeds, config))
    doc = json.loads(report.to_json())
    if geo_path is not None:
        geo = read_geo_table(geo_path)
        doc["countries"] = [list(row) for row in
                            join_country((p.ip for p in report.known_peers),
                                         geo)]
    state.emit_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _read_bootnodes(path: str) -> list[PeerInfo]:
    peers = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                node_hex, endpoint = line.split("@", 1)
                ip, port_text = endpoint.rsplit(":", 1)
                peers.append(PeerInfo(node_id=bytes.fromhex(node_hex),
                                      ip=ip, port=int(port_text)))
            except ValueError as exc:
                raise click.UsageError(f"bootnode line {line_no}: {exc}")
    return peers


# -- bootstrap-seed measurement -------------------------------------------------

@cli.group("bootstrap")
def bootstrap_group() -> None:
    """DNS seed harvesting and port reachability."""


@bootstrap_group.command("harvest")
@click.option("--seeds", "seeds_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Seed source JSON: {port, hardcoded, dns}.")
@click.option("--rounds", default=1, show_default=True)
@click.option("--script", "script_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Scripted resolver answers (JSON) instead of live DNS.")
@pass_state
def cmd_bootstrap_harvest(state: AppState, seeds_path, rounds: int,
                          script_path) -> None:
    """Resolve seed names repeatedly and measure address-set growth."""
    source = load_seed_source(seeds_path)
    if script_path is not None:
        with open(script_path, encoding="utf-8") as fh:
            resolver = ScriptedResolver(json.load(fh))
    else:
        resolver = LiveResolver()
    harvest = harvest_seeds(resolver, source, rounds)
    if state.fmt == "csv":
        state.emit_rows(("round", "new_ips", "cumulative_ips"), harvest.rounds)
    else:
        state.emit_text(harvest.to_json() + "\n")


@bootstrap_group.command("probe")
@click.option("--seeds", "seeds_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Seed source JSON; probes its hardcoded list on its port.")
@click.option("--ips", "ips_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Address list, one per line (overrides the seed list).")
@click.option("--port", default=None, type=int,
              help="Port to probe (overrides the seed source port).")
@click.option("--script", "script_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Scripted prober outcomes (JSON) instead of live TCP.")
@click.option("--workers", default=1, show_default=True)
@pass_state
def cmd_bootstrap_probe(state: AppState, seeds_path, ips_path, port,
                        script_path, workers: int) -> None:
    """TCP-probe a set of addresses and classify open/filtered/closed."""
    ips: list[str] = []
    if seeds_path is not None:
        source = load_seed_source(seeds_path)
        ips = list(source.hardcoded_ips)
        if port is None:
            port = source.port
    if ips_path is not None:
        with open(ips_path, encoding="utf-8") as fh:
            ips = [line.strip() for line in fh
                   if line.strip() and not line.startswith("#")]
    if not ips:
        raise click.UsageError("no addresses; pass --seeds or --ips")
    if port is None:
        raise click.UsageError("no port; pass --port or --seeds")
    if script_path is not None:
        with open(script_path, encoding="utf-8") as fh:
            prober = ScriptedProber(json.load(fh),
                                    default=ConnectResult.TIMED_OUT)
    else:
        prober = LiveProber()
    scan = probe_ports(prober, ips, port, workers=workers)
    if state.fmt == "csv":
        state.emit_rows(("ip", "outcome"),
                        [(ip, outcome.value)
                         for ip, outcome in sorted(scan.outcomes.items())])
    else:
        state.emit_text(scan.to_json() + "\n")


# -- entry points ----------------------------------------------------------------

def run_cli(argv: list[str] | None = None) -> int:
    """Invoke the CLI programmatically; returns the process exit code."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        cli.main(args=args, prog_name="chainlens", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except ChainLensError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


def main() -> None:
    logging.basicConfig(level=os.environ.get("CHAINLENS_LOG", "WARNING"),
                        stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
