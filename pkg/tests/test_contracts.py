"""Contract lifecycle registry: derivation, creations, lifetimes, funding."""

import json

import pytest

from chainlens.errors import AddressMismatch, SchemaViolation
from chainlens.eth.contracts import (ContractRecord, ContractRegistry,
                                     CreatorKind, build_contract_registry,
                                     derive_contract_address,
                                     find_precreation_funding, iter_creations,
                                     lifetime_histogram)
from chainlens.model import ChainKind

from conftest import (CONTRACT_C1, CONTRACT_C2, CONTRACT_C3, ZOMBIE_Z1,
                      ZOMBIE_Z2, ZOMBIE_Z3, SENDER_A, SENDER_B, addr,
                      eth_internal_sidefile, eth_labeled_fixture,
                      eth_termination_sidefile, load_store)
import oracles

# frozen from the independent RLP+Keccak oracle; the first two pairs are
# the classic published example of address derivation
DERIVATION_VECTORS = [
    ("6ac7ea33f8831ea9dcc53393aaa88b25a785dbf0", 0,
     "cd234a471b72ba2f1ccf0a70fcaba648a5eecd8d"),
    ("6ac7ea33f8831ea9dcc53393aaa88b25a785dbf0", 1,
     "343c43a37d37dff08ae8c4a11544c718abb4fcf8"),
    ("156660f5d7870e95f86c6b9e5c27612c23b92d04", 1,
     "5b86ae3b9c4842fa9cd321f643bb26c1cced9b5b"),
    ("06b7eaa990a2bc6ddafdcf30fea4104c4d39fdc4", 256,
     "5e419f36b9bce4ab45ec728aef07494371a485ca"),
    ("bca21468c542806c1e356ba26c1c05bc7f0e7654", 2,
     "10a3a2a8048705c3121c05bcfb90e8e1ec4cc4b6"),
    ("e51352fee2d84bc33d12fbe9b6af506c9d0baaa2", 255,
     "d52457790a3ca0ffc9c3d0caccc7a1c2d88caa63"),
    ("af94aceb9459384ece52baad45954f192f888f58", 1,
     "143af4f3de14d394c0ad7fbbf4448973dcdd01fb"),
    ("058cde5733e93327d8ef98d901328f3fc316f26d", 1,
     "b185f1d59bb339e7216fe7c4f356d14a988e4b4d"),
    ("055e022247a8608830f66eaa69641733d764b8c5", 255,
     "0e68ef9e42fd7592bbd8b1f07c3eeacf09e4893b"),
    ("46b1298d08112f7a834bc26faafa10da4099cb2f", 2,
     "5fc693ac0a37cadb19183201d09e6b8897796b92"),
]


@pytest.mark.parametrize("sender,nonce,expected", DERIVATION_VECTORS)
def test_derivation_vectors(sender, nonce, expected):
    assert derive_contract_address(sender, nonce) == expected
    assert oracles.contract_address_oracle(sender, nonce) == expected


def _fixture_store():
    lines, _ = eth_labeled_fixture()
    return load_store(lines, ChainKind.ETHEREUM)


def test_iter_creations_infers_nonces():
    store = _fixture_store()
    created = {address for _, address in iter_creations(store)}
    assert created == {CONTRACT_C1, CONTRACT_C2, CONTRACT_C3,
                       ZOMBIE_Z1, ZOMBIE_Z2, ZOMBIE_Z3}
    store.close()


def test_registry_records_creations():
    store = _fixture_store()
    registry = build_contract_registry(store)
    record = registry.get(CONTRACT_C1)
    assert record.creation_height == 0
    assert record.creator == SENDER_A
    assert record.creator_kind is CreatorKind.BY_TRANSACTION
    zombie = registry.get(ZOMBIE_Z3)
    assert zombie.code == "" and zombie.balance == 21
    store.close()


def test_created_before_uses_block_and_index():
    store = _fixture_store()
    registry = build_contract_registry(store)
    # C3 is created at (3, 0)
    assert registry.created_before(CONTRACT_C3, 3, 1)
    assert not registry.created_before(CONTRACT_C3, 3, 0)
    assert not registry.created_before(CONTRACT_C3, 2, 5)
    assert registry.created_before(CONTRACT_C3, 4, 0)
    store.close()


def test_supplied_address_crosscheck():
    store = _fixture_store()
    _, labels = eth_labeled_fixture()
    creation_hash = labels[0][0]
    good = {creation_hash: CONTRACT_C1}
    build_contract_registry(store, supplied_addresses=good)
    bad = {creation_hash: addr(0xBAD)}
    with pytest.raises(AddressMismatch):
        build_contract_registry(store, supplied_addresses=bad)
    store.close()


def test_internal_creations_join_registry():
    store = _fixture_store()
    registry = build_contract_registry(
        store, internal_creations=eth_internal_sidefile())
    record = registry.get(addr(0xC1DE))
    assert record.creator_kind is CreatorKind.BY_CONTRACT
    assert record.creator == CONTRACT_C1
    assert record.creation_index == -1
    # an internal creation at height h precedes every tx in that block
    assert registry.created_before(addr(0xC1DE), 2, 0)
    store.close()


def test_terminations_and_lifetimes():
    store = _fixture_store()
    registry = build_contract_registry(
        store, terminations=eth_termination_sidefile())
    assert registry.get(CONTRACT_C1).termination_height == 5
    assert registry.get(CONTRACT_C3).termination_height == 4
    histogram = lifetime_histogram(registry)
    assert histogram == {"<=100": 2, "<=10000": 0, ">10000": 0}
    store.close()


def test_lifetime_histogram_empty_when_nothing_dies():
    store = _fixture_store()
    registry = build_contract_registry(store)
    assert lifetime_histogram(registry) == {}
    store.close()


def test_termination_before_creation_is_fatal():
    store = _fixture_store()
    bad = [json.dumps({"type": "terminate", "address": CONTRACT_C3,
                       "height": 1})]
    with pytest.raises(SchemaViolation):
        build_contract_registry(store, terminations=bad)
    store.close()


def test_termination_of_unknown_contract_ignored():
    store = _fixture_store()
    orphan = [json.dumps({"type": "terminate", "address": addr(0xFEED),
                          "height": 3})]
    registry = build_contract_registry(store, terminations=orphan)
    assert registry.get(addr(0xFEED)) is None
    store.close()


def test_precreation_funding():
    store = _fixture_store()
    _, labels = eth_labeled_fixture()
    registry = build_contract_registry(store)
    hits = find_precreation_funding(store, registry)
    # exactly tx 4: pays 5 toward C2 one block before its creation
    assert hits == [(labels[3][0], CONTRACT_C2, 1)]
    store.close()


def test_duplicate_registration_keeps_first():
    registry = ContractRegistry()
    first = ContractRecord(address=addr(1), creation_height=1,
                           creator=addr(2),
                           creator_kind=CreatorKind.BY_TRANSACTION)
    second = ContractRecord(address=addr(1), creation_height=9,
                            creator=addr(3),
                            creator_kind=CreatorKind.BY_CONTRACT)
    registry.add(first)
    registry.add(second)
    assert registry.get(addr(1)).creation_height == 1


def test_lifetime_histogram_rejects_bad_edges():
    with pytest.raises(ValueError):
        lifetime_histogram(ContractRegistry(), bucket_edges=(100, 100))
