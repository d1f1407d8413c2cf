import pytest

from kg2data.errors import ExtractionFormatError
from kg2data.fixtures import ScriptedExtractionBackend, load_facts
from kg2data.gateway import Cassette, Gateway
from kg2data.kg.chunking import Chunk
from kg2data.kg.extraction import extract_graph, extraction_request, parse_extraction


def make_chunk(text, cid="doc#0"):
    return Chunk(id=cid, source_doc="doc", text=text, token_count=len(text.split()), span=(0, 1))


def test_frozen_cassette_extracts_precipitation_fixture(no_network_at_all):
    # hand-verified once and frozen: the canonical rain-gauge sentence
    text = "Precipitation is measured by rain gauges."
    recorded = (
        "ENTITY\tprecipitation\tmeteorological_element\tWater falling to the surface.\n"
        "ENTITY\train gauge\tinstrument\tCollector for liquid precipitation.\n"
        "REL\tprecipitation\tmeasured_by\train gauge\t0.95"
    )
    cassette = Cassette("record")
    cassette.record(extraction_request(text), recorded)
    cassette.mode = "replay_strict"
    entities, triples = extract_graph(make_chunk(text), Gateway(cassette=cassette))
    assert {e.id for e in entities} == {"precipitation", "rain_gauge"}
    assert [(t.subject, t.predicate, t.object) for t in triples] == [
        ("precipitation", "measured_by", "rain_gauge")
    ]
    assert triples[0].provenance == {"doc#0"}


def test_empty_chunk_returns_empty_without_model_call():
    class Exploding:
        def complete(self, request):
            raise AssertionError("gateway must not be called for empty chunks")

    entities, triples = extract_graph(make_chunk("   "), Exploding())
    assert entities == [] and triples == []


def test_prose_without_records_is_a_format_error():
    with pytest.raises(ExtractionFormatError) as err:
        parse_extraction("The text talks about rain but emits no records.", "c1")
    assert "no ENTITY/REL records" in str(err.value)
    assert err.value.raw_text.startswith("The text")


def test_malformed_record_lines_fail_loudly():
    with pytest.raises(ExtractionFormatError, match="4 tab-separated"):
        parse_extraction("ENTITY\tname-only", "c1")
    with pytest.raises(ExtractionFormatError, match="5 tab-separated"):
        parse_extraction("REL\ta\tb\tc", "c1")
    with pytest.raises(ExtractionFormatError, match="not a number"):
        parse_extraction("REL\ta\tp\tb\thigh", "c1")
    with pytest.raises(ExtractionFormatError, match="outside"):
        parse_extraction("REL\ta\tp\tb\t1.5", "c1")
    with pytest.raises(ExtractionFormatError, match="unknown entity type"):
        parse_extraction("ENTITY\tx\twizard\tdesc", "c1")


def test_prose_lines_between_records_are_skipped():
    text = "Here is what I found:\nENTITY\tfog\tmeteorological_element\tGround-level cloud.\nThat is all."
    entities, triples = parse_extraction(text, "c1")
    assert [e.id for e in entities] == ["fog"]
    assert triples == []


def test_unknown_rel_endpoints_are_materialized():
    entities, triples = parse_extraction("REL\taurora\tseen_over\tpolar station\t0.5", "c9")
    assert {e.id for e in entities} == {"aurora", "polar_station"}
    assert all(e.type == "other" for e in entities)
    assert triples[0].key == ("aurora", "seen_over", "polar_station")


def test_scripted_backend_matches_fact_table_for_whole_doc(corpus):
    facts = load_facts()
    backend = ScriptedExtractionBackend(facts)
    doc_text = dict(corpus)["pressure.txt"]
    out = backend.complete(extraction_request(doc_text))
    assert "REL\tair pressure\tmeasured_by\tbarometer\t0.98" in out
    assert "ENTITY\tbarometer\tinstrument\t" in out


def test_summary_replay_miss_carries_community_context():
    from kg2data.errors import SummaryError
    from kg2data.gateway import Cassette, Gateway
    from kg2data.kg.graph import Entity, KnowledgeGraph, Triple, merge_graph
    from kg2data.kg.leiden import leiden_partition
    from kg2data.kg.summaries import summarize_communities

    g = KnowledgeGraph()
    merge_graph(
        g,
        [Entity(id="", canonical_name=n) for n in ("a", "b")],
        [Triple(subject="a", predicate="affects", object="b", provenance={"c"})],
    )
    hierarchy = leiden_partition(g, seed=0)
    with pytest.raises(SummaryError) as err:
        summarize_communities(g, hierarchy, Gateway(cassette=Cassette("replay_strict")))
    assert "level 0" in str(err.value)
    assert "no recorded response" in str(err.value)
