import io

import numpy as np

from hodgerank.complex import build_complex, underlying_graph
from hodgerank.ingest import parse_interactions
from hodgerank.operators import boundary_operators
from hodgerank.structure import classify_edges
from hodgerank.synth import bridge_suite, random_complex, tie_strength_corpus, write_pairs, write_simplices


def test_bridge_suite_class_support():
    recs = bridge_suite(0, min_per_class=50)
    counts = classify_edges(underlying_graph(build_complex(recs))).counts()
    assert min(counts.values()) >= 50
    assert recs == bridge_suite(0, min_per_class=50)


def test_random_complex_is_seeded():
    a = random_complex(15, 0.3, 0.5, 4)
    assert a == random_complex(15, 0.3, 0.5, 4)
    assert random_complex(5, 0.0, 0.5, 0) is None


def test_tie_corpus_round_trips_through_files(tmp_path):
    log = tie_strength_corpus(1, communities=6)
    buf = io.StringIO()
    write_simplices(log.records, buf)
    p = tmp_path / "corpus.txt"
    p.write_text(buf.getvalue())
    back = parse_interactions(p)
    assert back.pair_counts == log.pair_counts
    assert back.complex() == log.complex()
    pairs = io.StringIO()
    write_pairs(log, pairs)
    q = tmp_path / "pairs.txt"
    q.write_text(pairs.getvalue())
    assert parse_interactions(q, "pairs").pair_counts == log.pair_counts


def test_tie_corpus_frequencies_are_planted():
    log = tie_strength_corpus(2, communities=12)
    c = log.complex()
    lab = classify_edges(underlying_graph(c))
    counts = np.array([log.pair_counts[tuple(e)] for e in c.edge_labels().tolist()])
    in_tri = np.zeros(c.e, bool)
    in_tri[np.unique(boundary_operators(c).B2.nonzero()[0])] = True
    short_local = (lab.labels == "local") & (lab.tie_range <= 4)
    assert short_local.any()
    assert np.all(counts[short_local] == 1)
    assert counts[in_tri].mean() > 3
