"""
Concurrent variants under thread stress
=======================================

Runs every lock-free variant plus the coarse-lock baseline through the
same random union workload on four threads, audits the quiesced forest,
and prints the diagnostic counters the structures collect on the way.
"""

import numpy as np

from dsulab import (ConcurrentDsu, OraclePartition, Variant,
                    make_yield_pause, quiescent_audit, run_union_stress)

N = 4096
rng = np.random.default_rng(42)
pairs = list(zip(rng.integers(0, N, 40_000).tolist(),
                 rng.integers(0, N, 40_000).tolist()))
expected = OraclePartition.from_pairs(N, pairs).labels

for variant in Variant:
    dsu = ConcurrentDsu(N, variant=variant, seed=0)
    stats = run_union_stress(dsu, pairs, threads=4)
    report = quiescent_audit(dsu, expected)
    print(f"{variant.value:>18}: {stats.millis:7.1f} ms"
          f"  failed_cas={stats.failed_cas:<4d}"
          f" find_steps={stats.find_steps:<8d}"
          f" er_terms={stats.er_terminations:<6d}"
          f" audit={'clean' if report.ok else report}")

# The pause hook injects interpreter yields at the labeled racy points
# (just before a link CAS, between the two finds of a union, around
# compaction stores), which makes rare interleavings common. The audit
# must stay clean regardless.
print("\nwith injected yields:")
for variant in (Variant.CAS_RANK, Variant.EARLY_RECOGNITION, Variant.REM):
    dsu = ConcurrentDsu(N, variant=variant, seed=1)
    dsu.pause = make_yield_pause(prob=1 / 16, seed=1)
    run_union_stress(dsu, pairs, threads=4)
    print(f"{variant.value:>18}: audit="
          f"{'clean' if quiescent_audit(dsu, expected).ok else 'VIOLATED'}")

# Early recognition can answer from the middle of a tree: two walkers climb
# in priority order and stop as soon as the lower one proves separation.
dsu = ConcurrentDsu(N, variant=Variant.EARLY_RECOGNITION, seed=2)
from dsulab import OpCounters

ctr = OpCounters()
for u, v in pairs:
    dsu.union(u, v, ctr)
    dsu.same_set(u, (u + 7) % N, ctr)
print(f"\nearly recognition: {ctr.er_terminations} of "
      f"{2 * len(pairs)} operations ended at an early separation proof")
