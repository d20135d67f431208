"""Ledger forensics and peer-discovery measurement for Ethereum-family chains.

Modules: `store` (NDJSON ingestion into SQLite), `discovery` (Kademlia-style
overlay crawler plus a devp2p v4 UDP codec), `eth` (contract lifecycle,
classification, termination probe, bytecode similarity), `chains`
(Namecoin and Peercoin analytics), `poison` (file-signature payload
scanner), `bootstrap` (DNS seed and port measurements), `report` and `cli`.
"""

__version__ = "0.1.0"
