"""Exception hierarchy shared across the toolkit.

Every error that maps to the CLI "data error" exit code derives from
ChainLensError; anything else escaping a command is a bug.
"""

from __future__ import annotations


class ChainLensError(Exception):
    """Base class for all expected failures."""


# --- ledger store ---------------------------------------------------------

class MalformedJson(ChainLensError):
    def __init__(self, line_no: int, detail: str = ""):
        self.line_no = line_no
        super().__init__(f"line {line_no}: malformed JSON{': ' + detail if detail else ''}")


class SchemaViolation(ChainLensError):
    def __init__(self, line_no: int, field: str, detail: str = ""):
        self.line_no = line_no
        self.field = field
        self.detail = detail
        msg = f"line {line_no}: invalid field '{field}'"
        super().__init__(msg + (f": {detail}" if detail else ""))


class ConflictingBlock(ChainLensError):
    def __init__(self, height: int):
        self.height = height
        super().__init__(f"conflicting block at height {height}: different hash already stored")


class EmptyChain(ChainLensError):
    def __init__(self, chain: str, detail: str = ""):
        self.chain = chain
        super().__init__(f"no qualifying blocks for chain '{chain}'"
                         + (f" ({detail})" if detail else ""))


# --- Ethereum analytics ----------------------------------------------------

class AddressMismatch(ChainLensError):
    def __init__(self, tx_hash: str, derived: str, supplied: str):
        self.tx_hash = tx_hash
        self.derived = derived
        self.supplied = supplied
        super().__init__(
            f"tx {tx_hash}: derived contract address {derived} != supplied {supplied}")


class ExecutorFailure(ChainLensError):
    def __init__(self, contract: str, detail: str):
        self.contract = contract
        super().__init__(f"executor failed for contract {contract}: {detail}")


# --- Namecoin / Peercoin ----------------------------------------------------

class MalformedNameOp(ChainLensError):
    pass


class AuxPowBeforeActivation(ChainLensError):
    def __init__(self, height: int, activation_height: int):
        self.height = height
        self.activation_height = activation_height
        super().__init__(
            f"merge-mined block at height {height} predates activation "
            f"height {activation_height}")


class MissingProofTag(ChainLensError):
    def __init__(self, height: int):
        self.height = height
        super().__init__(f"Peercoin block at height {height} lacks a proof tag")


# --- discovery crawler ------------------------------------------------------

class NoSeedsReachable(ChainLensError):
    def __init__(self) -> None:
        super().__init__("no seed peer answered the ping-pong exchange")


class QueryTimeout(ChainLensError):
    """A single transport query (find_node) timed out."""


# --- poisoning scanner ------------------------------------------------------

class InvalidHex(ChainLensError):
    def __init__(self, position: int, detail: str = ""):
        self.position = position
        super().__init__(f"invalid hex at digit {position}"
                         + (f": {detail}" if detail else ""))


# --- report joins -----------------------------------------------------------

class MalformedRateRow(ChainLensError):
    def __init__(self, line_no: int, detail: str = ""):
        self.line_no = line_no
        super().__init__(f"rate table line {line_no} is malformed"
                         + (f": {detail}" if detail else ""))


class MalformedGeoRow(ChainLensError):
    def __init__(self, line_no: int, detail: str = ""):
        self.line_no = line_no
        super().__init__(f"geo table line {line_no} is malformed"
                         + (f": {detail}" if detail else ""))
