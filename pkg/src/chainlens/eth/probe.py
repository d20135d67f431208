"""Dictionary-driven probe for externally terminable ("suicidal") contracts.

The probe asks an executor for a gas estimate of calling each dictionary
selector on each contract. A genuine termination path short-circuits
execution and lands below the base cost of a plain call thanks to the
self-destruct refund, so any estimate under the threshold marks a
candidate, which is then actually invoked to confirm. Execution itself is
behind the ContractExecutor interface: tests script it with fixtures, and
a JSON-RPC adapter exists for live nodes.
"""

from __future__ import annotations

import enum
import json
import logging
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Protocol, Sequence

from ..errors import ExecutorFailure, MalformedJson, SchemaViolation
from ..keccak import keccak256
from ..model import normalize_hex
from .contracts import NULL_ADDRESS, ContractRecord

log = logging.getLogger(__name__)

DEFAULT_PROBE_CALLER = "00000000000000000000000000000000000000aa"
_SELECTOR_FILE = "termination_selectors.txt"


def function_selector(signature_text: str) -> bytes:
    """First 4 bytes of the Keccak-256 hash of a canonical signature."""
    return keccak256(signature_text.encode("ascii"))[:4]


@dataclass(frozen=True)
class SelectorEntry:
    selector: bytes
    name: str | None = None

    def label(self) -> str:
        return self.name if self.name else "0x" + self.selector.hex()


class SelectorDictionary:
    """Ordered, duplicate-free collection of candidate termination selectors."""

    def __init__(self, entries: Sequence[SelectorEntry]):
        seen = set()
        for entry in entries:
            if entry.selector in seen:
                raise ValueError(f"duplicate selector 0x{entry.selector.hex()}")
            seen.add(entry.selector)
        self.entries = list(entries)

    def __iter__(self) -> Iterator[SelectorEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "SelectorDictionary":
        """Parse one entry per line: either `name()` or a raw `0x`-hex selector."""
        entries = []
        for raw in lines:
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            if text.startswith("0x"):
                selector = bytes.fromhex(text[2:])
                if len(selector) != 4:
                    raise ValueError(f"selector {text!r} is not 4 bytes")
                entries.append(SelectorEntry(selector=selector))
            else:
                entries.append(SelectorEntry(selector=function_selector(text),
                                             name=text))
        return cls(entries)

    @classmethod
    def default(cls) -> "SelectorDictionary":
        text = resources.files("chainlens").joinpath(
            f"data/{_SELECTOR_FILE}").read_text(encoding="utf-8")
        return cls.from_lines(text.splitlines())


@dataclass
class GasPolicy:
    base_call_gas: int = 21_000
    suicide_refund: int = 24_000
    vulnerability_threshold: int = 21_000

    def __post_init__(self) -> None:
        if self.vulnerability_threshold > self.base_call_gas:
            raise ValueError("threshold above base call gas would flag "
                             "ordinary calls")


class RefundDestination(enum.Enum):
    CALLER = "caller"
    CREATOR = "creator"
    NULL_ADDRESS = "null_address"
    OTHER = "other"
    NONE = "none"


@dataclass
class InvokeOutcome:
    terminated: bool
    refund_to: str | None
    gas_used: int


@dataclass
class ProbeResult:
    contract: str
    triggering_selector: bytes | None
    gas_estimate: int | None
    confirmed_terminated: bool
    refund_destination: RefundDestination
    refund_address: str | None = None
    suspicious_default_function: bool = False
    executor_error: str | None = None


class ContractExecutor(Protocol):
    concurrent_safe: bool

    def estimate_gas(self, contract: str, selector: bytes) -> int: ...

    def invoke(self, contract: str, selector: bytes,
               caller: str) -> InvokeOutcome: ...


class FixtureExecutor:
    """Executor scripted by gas_fixture NDJSON records.

    Record shape: {"type":"gas_fixture","address":"0x..","selector":"0x..",
    "estimate":N,"terminates":bool,"refund_to":"0x..|null|caller"}.
    Unknown (address, selector) pairs estimate at `default_estimate`,
    comfortably above any sane threshold.
    """

    concurrent_safe = True

    def __init__(self, records: Iterable[dict], default_estimate: int = 100_000):
        self.default_estimate = default_estimate
        self._estimates: dict[tuple[str, bytes], int] = {}
        self._behavior: dict[tuple[str, bytes], tuple[bool, str | None]] = {}
        self._terminated: set[str] = set()
        for obj in records:
            address = normalize_hex(obj["address"], byte_len=20)
            selector = bytes.fromhex(normalize_hex(obj["selector"], byte_len=4))
            key = (address, selector)
            self._estimates[key] = int(obj["estimate"])
            self._behavior[key] = (bool(obj.get("terminates", False)),
                                   obj.get("refund_to"))

    @classmethod
    def from_file(cls, path: str | Path, **kwargs) -> "FixtureExecutor":
        records = []
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise MalformedJson(line_no, exc.msg)
                if obj.get("type") != "gas_fixture":
                    raise SchemaViolation(line_no, "type", "expected gas_fixture")
                records.append(obj)
        return cls(records, **kwargs)

    def addresses(self) -> list[str]:
        """Distinct contract addresses the fixture scripts, sorted."""
        return sorted({address for address, _ in self._estimates})

    def estimate_gas(self, contract: str, selector: bytes) -> int:
        return self._estimates.get((contract, selector), self.default_estimate)

    def invoke(self, contract: str, selector: bytes, caller: str) -> InvokeOutcome:
        terminates, refund_spec = self._behavior.get((contract, selector),
                                                     (False, None))
        terminates = terminates and contract not in self._terminated
        refund_to = None
        if terminates:
            self._terminated.add(contract)
            if refund_spec == "caller":
                refund_to = caller
            elif refund_spec is not None:
                refund_to = normalize_hex(refund_spec, byte_len=20)
        gas = self._estimates.get((contract, selector), self.default_estimate)
        return InvokeOutcome(terminated=terminates, refund_to=refund_to,
                             gas_used=gas)


class RpcExecutor:
    """Minimal JSON-RPC executor for a live (typically private) node.

    Termination is confirmed by the contract's code disappearing after the
    call; refund destinations are not observable without tracing, so they
    come back as None. Not exercised by the offline test gate.
    """

    concurrent_safe = False

    def __init__(self, url: str, timeout: float = 10.0):
        self.url = url
        self.timeout = timeout
        self._next_id = 0

    def _call(self, method: str, params: list):
        self._next_id += 1
        body = json.dumps({"jsonrpc": "2.0", "id": self._next_id,
                           "method": method, "params": params}).encode()
        request = urllib.request.Request(
            self.url, data=body, headers={"Content-Type": "application/json"})
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as resp:
                reply = json.load(resp)
        except OSError as exc:
            raise ExecutorFailure("rpc", str(exc))
        if "error" in reply:
            raise ExecutorFailure("rpc", str(reply["error"]))
        return reply.get("result")

    def estimate_gas(self, contract: str, selector: bytes) -> int:
        result = self._call("eth_estimateGas",
                            [{"to": "0x" + contract,
                              "data": "0x" + selector.hex()}])
        return int(result, 16)

    def invoke(self, contract: str, selector: bytes, caller: str) -> InvokeOutcome:
        self._call("eth_sendTransaction",
                   [{"from": "0x" + caller, "to": "0x" + contract,
                     "data": "0x" + selector.hex(),
                     "gas": hex(100_000)}])
        code = self._call("eth_getCode", ["0x" + contract, "latest"])
        terminated = code in ("0x", "", None)
        return InvokeOutcome(terminated=terminated, refund_to=None, gas_used=0)


def classify_refund(refund_to: str | None, caller: str,
                    creator: str) -> tuple[RefundDestination, str | None]:
    if refund_to is None:
        return RefundDestination.NONE, None
    if refund_to == caller:
        return RefundDestination.CALLER, None
    if refund_to == creator:
        return RefundDestination.CREATOR, None
    if refund_to == NULL_ADDRESS:
        return RefundDestination.NULL_ADDRESS, None
    return RefundDestination.OTHER, refund_to


def probe_suicidal(contracts: Sequence[ContractRecord],
                   executor: ContractExecutor,
                   dictionary: SelectorDictionary,
                   policy: GasPolicy,
                   caller: str = DEFAULT_PROBE_CALLER) -> list[ProbeResult]:
    """Probe each contract; emit a result for every termination candidate.

    A contract appears in the output iff some dictionary selector estimates
    below the vulnerability threshold, or the executor failed on it (the
    failure is recorded in the result rather than aborting the batch, with
    gas_estimate left as None when no estimate was obtained).
    """
    results = []
    for record in contracts:
        result = _probe_one(record, executor, dictionary, policy, caller)
        if result is not None:
            results.append(result)
    return results


def _probe_one(record: ContractRecord, executor: ContractExecutor,
               dictionary: SelectorDictionary, policy: GasPolicy,
               caller: str) -> ProbeResult | None:
    estimates: dict[bytes, int] = {}
    error: str | None = None
    for entry in dictionary:
        try:
            estimates[entry.selector] = executor.estimate_gas(record.address,
                                                              entry.selector)
        except ExecutorFailure as exc:
            error = str(exc)
            log.warning("estimate failed for %s / %s: %s", record.address,
                        entry.label(), exc)
    below = [entry for entry in dictionary
             if entry.selector in estimates
             and estimates[entry.selector] < policy.vulnerability_threshold]
    if not below:
        if error is None:
            return None
        return ProbeResult(contract=record.address, triggering_selector=None,
                           gas_estimate=None, confirmed_terminated=False,
                           refund_destination=RefundDestination.NONE,
                           executor_error=error)
    triggering: SelectorEntry | None = None
    outcome: InvokeOutcome | None = None
    for entry in below:
        try:
            attempt = executor.invoke(record.address, entry.selector, caller)
        except ExecutorFailure as exc:
            error = str(exc)
            log.warning("invoke failed for %s / %s: %s", record.address,
                        entry.label(), exc)
            continue
        if attempt.terminated:
            triggering = entry
            outcome = attempt
            break
    confirmed = triggering is not None
    suspicious = not confirmed and len(below) == len(dictionary)
    destination, refund_address = classify_refund(
        outcome.refund_to if outcome else None, caller, record.creator)
    return ProbeResult(
        contract=record.address,
        triggering_selector=triggering.selector if triggering else None,
        gas_estimate=(estimates[triggering.selector] if triggering
                      else min(estimates[entry.selector] for entry in below)),
        confirmed_terminated=confirmed,
        refund_destination=destination,
        refund_address=refund_address,
        suspicious_default_function=suspicious,
        executor_error=error)
