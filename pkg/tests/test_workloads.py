"""Operation streams, the query/union driver, and the parallel forest builder."""

import threading

import numpy as np
import pytest

from dsulab import (AtomicWordArray, ConcurrentDsu, Graph, OpCounters,
                    OraclePartition, SeqDsu, Variant, build_op_stream,
                    default_threshold, gen_erdos_renyi, op_kinds,
                    oracle_components, oracle_mst_weight, partitions_equal,
                    run_boruvka, run_cc, update_if_shorter)
from dsulab.workloads import SENTINEL


# -- op streams -----------------------------------------------------------------


def test_op_kinds_pure_and_seeded():
    a = op_kinds(500, 0.5, seed=3)
    assert a.dtype == np.bool_
    assert a.tolist() == op_kinds(500, 0.5, seed=3).tolist()
    assert a.tolist() != op_kinds(500, 0.5, seed=4).tolist()
    assert op_kinds(500, 0.0, seed=3).sum() == 0
    assert op_kinds(500, 1.0, seed=3).sum() == 500
    # roughly half at 0.5
    assert 180 < a.sum() < 320


def test_stream_partitions_every_edge_once():
    g = gen_erdos_renyi(60, 300, seed=5)
    ref = None
    for threads in (1, 2, 3, 4, 7):
        s = build_op_stream(g, threads, sameset_prob=0.4, seed=11)
        assert s.threads == threads
        assert s.total_ops == g.m
        ops = sorted(op for chunk in s.chunks
                     for op in zip(chunk[0], chunk[1], chunk[2]))
        if ref is None:
            ref = ops
        else:
            # same multiset of (u, v, kind) no matter the thread count
            assert ops == ref
    kinds = sorted(k for *_, k in ref)
    assert kinds.count(True) == op_kinds(g.m, 0.4, 11).sum()


def test_stream_chunks_are_contiguous_shuffle_slices():
    g = gen_erdos_renyi(40, 100, seed=0)
    s1 = build_op_stream(g, 1, sameset_prob=0.5, seed=9)
    s4 = build_op_stream(g, 4, sameset_prob=0.5, seed=9)
    flat = [op for chunk in s4.chunks for op in zip(*chunk)]
    assert flat == list(zip(*s1.chunks[0]))


# -- connected components driver -------------------------------------------------


def test_run_cc_final_partition_matches_union_subgraph():
    g = gen_erdos_renyi(300, 900, seed=2)
    kinds = op_kinds(g.m, 0.5, seed=6)
    union_part = Graph(n=g.n, u=g.u[~kinds], v=g.v[~kinds])
    want, want_labels = oracle_components(union_part)
    for threads, make in ((1, lambda: SeqDsu(g.n)),
                          (1, lambda: ConcurrentDsu(g.n)),
                          (4, lambda: ConcurrentDsu(g.n)),
                          (4, lambda: ConcurrentDsu(g.n, variant=Variant.REM))):
        dsu = make()
        stats = run_cc(g, dsu, threads=threads, sameset_prob=0.5, seed=6)
        assert dsu.count_components() == want
        assert partitions_equal(dsu.labels(), want_labels)
        assert stats.millis >= 0


def test_run_cc_reuses_prebuilt_stream():
    g = gen_erdos_renyi(100, 250, seed=1)
    stream = build_op_stream(g, 2, sameset_prob=0.3, seed=7)
    a = ConcurrentDsu(g.n)
    b = ConcurrentDsu(g.n)
    run_cc(g, a, threads=2, stream=stream)
    run_cc(g, b, threads=2, sameset_prob=0.3, seed=7)
    assert partitions_equal(a.labels(), b.labels())


def test_run_cc_rejects_mismatched_sizes():
    g = gen_erdos_renyi(50, 100, seed=0)
    with pytest.raises(ValueError):
        run_cc(g, SeqDsu(49))
    with pytest.raises(ValueError):
        run_cc(g, SeqDsu(50), threads=2)  # not thread safe
    with pytest.raises(ValueError):
        stream = build_op_stream(g, 2, 0.5, 0)
        run_cc(g, ConcurrentDsu(50), threads=4, stream=stream)


def test_run_cc_counts_find_steps():
    g = gen_erdos_renyi(200, 600, seed=3)
    stats = run_cc(g, SeqDsu(g.n), threads=1)
    assert stats.find_steps > 0
    assert stats.failed_cas == 0


# -- candidate slots ---------------------------------------------------------------


def test_update_if_shorter_keeps_minimum_both_orders():
    lo = (3 << 32) | 1
    hi = (5 << 32) | 7
    for first, second in ((lo, hi), (hi, lo)):
        slots = AtomicWordArray([SENTINEL])
        assert update_if_shorter(slots, 0, first)
        improved = update_if_shorter(slots, 0, second)
        assert improved == (second < first)
        assert slots.load(0) == lo


def test_update_if_shorter_threaded_race_settles_on_min():
    slots = AtomicWordArray([SENTINEL] * 4)
    packs = [(w << 32) | i for i, w in enumerate([9, 4, 30, 4, 11, 2, 8, 2])]
    stats = OpCounters()
    barrier = threading.Barrier(8)

    def worker(p):
        barrier.wait()
        for i in range(4):
            update_if_shorter(slots, i, p, stats)

    workers = [threading.Thread(target=worker, args=(p,)) for p in packs]
    for t in workers:
        t.start()
    for t in workers:
        t.join()
    assert slots.snapshot() == [min(packs)] * 4
    assert stats.cas_attempts >= stats.failed_cas


# -- minimum spanning forest --------------------------------------------------------


def triangle():
    return Graph(n=3, u=np.array([0, 1, 0]), v=np.array([1, 2, 2]),
                 w=np.array([1, 2, 4]))


def test_boruvka_triangle():
    res = run_boruvka(triangle(), ConcurrentDsu(3))
    assert res.weight == 3
    assert sorted(res.edges) == [0, 1]
    assert res.stats.millis >= 0


def test_boruvka_needs_weights():
    g = gen_erdos_renyi(20, 40, seed=0, weighted=False)
    with pytest.raises(ValueError):
        run_boruvka(g, ConcurrentDsu(20))


def test_boruvka_rejects_oversized_weights():
    g = Graph(n=2, u=np.array([0]), v=np.array([1]),
              w=np.array([1 << 31]))
    with pytest.raises(ValueError):
        run_boruvka(g, ConcurrentDsu(2))


def test_default_threshold():
    assert default_threshold(100) == 1024
    assert default_threshold(1 << 20) == (1 << 20) // 64


def test_boruvka_threshold_extremes():
    g = gen_erdos_renyi(500, 2500, seed=8, weighted=True)
    want = oracle_mst_weight(g)
    # huge threshold: pure sequential completion
    res_seq = run_boruvka(g, ConcurrentDsu(g.n), threads=2,
                          threshold_fn=lambda n: n + 1)
    # threshold 1: parallel rounds run until no round links anything
    res_par = run_boruvka(g, ConcurrentDsu(g.n), threads=2,
                          threshold_fn=lambda n: 1)
    assert res_seq.weight == want
    assert res_par.weight == want
    assert sorted(res_seq.edges) == sorted(res_par.edges)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_boruvka_deterministic_across_thread_counts(seed):
    g = gen_erdos_renyi(800, 4000, seed=seed, weighted=True)
    want = oracle_mst_weight(g)
    picks = set()
    for threads in (1, 2, 4):
        res = run_boruvka(g, ConcurrentDsu(g.n), threads=threads,
                          threshold_fn=lambda n: 8)
        assert res.weight == want
        picks.add(tuple(sorted(res.edges)))
    assert len(picks) == 1


def test_boruvka_duplicate_weights_pick_lower_index():
    # two parallel edges, same weight: index 0 wins inside the packed key
    g = Graph(n=2, u=np.array([0, 0]), v=np.array([1, 1]),
              w=np.array([5, 5]))
    res = run_boruvka(g, ConcurrentDsu(2), threshold_fn=lambda n: 1)
    assert res.edges == [0]
    assert res.weight == 5


def test_boruvka_on_seq_dsu_single_thread():
    g = gen_erdos_renyi(300, 1200, seed=4, weighted=True)
    res = run_boruvka(g, SeqDsu(g.n))
    assert res.weight == oracle_mst_weight(g)
    with pytest.raises(ValueError):
        run_boruvka(g, SeqDsu(g.n), threads=2)


def test_boruvka_grid_fixture(data_dir):
    from dsulab import load_dimacs
    g = load_dimacs(data_dir / "grid.gr")
    for threads in (1, 2, 4, 8):
        res = run_boruvka(g, ConcurrentDsu(g.n), threads=threads,
                          threshold_fn=lambda n: 1)
        assert res.weight == 43
        assert sorted(res.edges) == [0, 2, 3, 5, 6, 7, 9, 11, 14, 15, 16]


def test_boruvka_forest_of_disconnected_graph():
    g = Graph(n=6, u=np.array([0, 2, 4]), v=np.array([1, 3, 5]),
              w=np.array([7, 8, 9]))
    res = run_boruvka(g, ConcurrentDsu(6), threshold_fn=lambda n: 1)
    assert res.weight == 24
    assert len(res.edges) == 3


def test_oracle_partition_relabels_second_argument():
    p = OraclePartition(4)
    p.union(0, 1)
    assert p.labels == [0, 0, 2, 3]
