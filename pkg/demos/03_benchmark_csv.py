"""
Benchmark harness: specs, rows, and CSV
=======================================

Runs the connected-components benchmark for a few strategy choices over
one generated graph and prints the measurement rows the harness would
write to CSV, plus per-thread-count medians.
"""

import io

from dsulab import Compaction, SyncMode, Variant
from dsulab.experiment import (ExperimentSpec, median_millis, run_experiment,
                               write_csv)

GRAPH = "er:20000:60000:9"

rows = []
for variant, compaction, sync in (
        (Variant.CAS_RANK, Compaction.SPLITTING, SyncMode.CAS),
        (Variant.CAS_RANK, Compaction.SPLITTING, SyncMode.PLAIN_WRITE),
        (Variant.REM, None, SyncMode.CAS),
        (Variant.EARLY_RECOGNITION, Compaction.HALVING, SyncMode.CAS)):
    spec = ExperimentSpec(benchmark="cc", graph=GRAPH, variant=variant,
                          compaction=compaction, sync=sync,
                          threads=(1, 4), warmup_iters=1, measured_iters=3,
                          seed=9)
    got = run_experiment(spec)
    rows.extend(got)
    med = median_millis(got)
    print(f"{variant.value:>18}/{spec.effective_compaction().value:<11}"
          f" sync={sync.value:<12} "
          + "  ".join(f"t={t}: {m:7.2f} ms" for t, m in sorted(med.items())))

# Identical stream per (seed, thread count), so the component counts agree
# across variants; only the timings differ.
counts = {r["components"] for r in rows}
print("\ndistinct component counts across all rows:", counts)

buf = io.StringIO()
write_csv(rows, buf)
print("\nfirst CSV lines:")
for line in buf.getvalue().splitlines()[:4]:
    print(" ", line)
