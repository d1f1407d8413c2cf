import socket

import pytest

from kg2data import resources
from kg2data.catalog import load_catalog
from kg2data.evaluation import load_cases
from kg2data.kg.graph import load_alias_table, load_snapshot, load_synonym_table
from kg2data.memory import build_memory, load_corpus
from kg2data.tools import LocalApiClient, ToolRegistry

_LOOPBACK = ("127.0.0.1", "localhost", "::1")


@pytest.fixture(autouse=True)
def forbid_external_network(monkeypatch):
    """The whole suite runs offline: only loopback sockets are permitted."""
    real_connect = socket.socket.connect

    def guarded(self, address, *args, **kwargs):
        host = address[0] if isinstance(address, tuple) else address
        if isinstance(host, str) and host not in _LOOPBACK:
            raise AssertionError(f"external network access attempted: {address!r}")
        return real_connect(self, address, *args, **kwargs)

    monkeypatch.setattr(socket.socket, "connect", guarded)


@pytest.fixture
def no_network_at_all(monkeypatch):
    """Stricter mode: any socket connection (loopback included) fails the test."""

    def refused(self, address, *args, **kwargs):
        raise AssertionError(f"network operation attempted: {address!r}")

    monkeypatch.setattr(socket.socket, "connect", refused)


@pytest.fixture(scope="session")
def catalog():
    return load_catalog(resources.CATALOG_FILE)


@pytest.fixture(scope="session")
def registry(catalog):
    return ToolRegistry.from_catalog(catalog)


@pytest.fixture(scope="session")
def cases(registry):
    return load_cases(resources.CASES_FILE, registry)


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(resources.CORPUS_DIR)


@pytest.fixture(scope="session")
def alias_table():
    return load_alias_table(resources.ALIASES_FILE)


@pytest.fixture(scope="session")
def synonym_table():
    return load_synonym_table(resources.SYNONYMS_FILE)


@pytest.fixture(scope="session")
def graph(alias_table):
    g, _ = load_snapshot(resources.SNAPSHOT_FILE, alias_table=alias_table)
    return g


@pytest.fixture(scope="session")
def backends(corpus, graph):
    return {
        "kg": build_memory("kg", corpus=corpus, graph=graph),
        "vector": build_memory("vector", corpus=corpus),
        "null": build_memory("null", corpus=corpus),
    }


@pytest.fixture(scope="session")
def api_client(catalog):
    return LocalApiClient(catalog, seed=0)


def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        outcome = "PASS" if report.passed else "FAIL"
        name = report.nodeid.split("::")[-1]
        print(f"\n[acceptance] {outcome}: {name}", flush=True)
