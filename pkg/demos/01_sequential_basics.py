"""
Sequential disjoint sets: linking and compaction strategies
===========================================================

Builds small forests with every linking/compaction pair, shows how the
packed slots evolve, and checks the final partition against the
list-merge oracle.
"""

import numpy as np

from dsulab import (Compaction, Linking, OpCounters, OraclePartition,
                    ROOT_FLAG, SeqDsu, partitions_equal)

# Every element owns one 64-bit word. The top bit says "I am a root and the
# rest is my priority"; otherwise the word is the parent index.
dsu = SeqDsu(6, linking=Linking.RANK)
print("fresh slots:", [hex(w) for w in dsu.raw_slots()])

dsu.union(0, 1)
dsu.union(2, 3)
dsu.union(0, 2)
print("after three unions:", dsu.raw_slots())
print("find(0) ->", dsu.find(0), " same_set(1, 3) ->", dsu.same_set(1, 3))
print("components:", dsu.count_components())

# Compaction in action: hand-build the chain 3 -> 2 -> 1 -> 0 and watch one
# find shorten it. Halving rewires every other node, splitting rewires all
# of them one step up, compression points everything at the root.
for compaction in (Compaction.HALVING, Compaction.SPLITTING,
                   Compaction.COMPRESSION, Compaction.NONE):
    chain_dsu = SeqDsu(4, compaction=compaction)
    chain_dsu._slots[:] = [ROOT_FLAG | 2, 0, 1, 2]
    chain_dsu.find(3)
    print(f"{compaction.value:>12}: {chain_dsu.raw_slots()}")

# The whole 4 x 4 strategy grid agrees with a trivially correct oracle.
rng = np.random.default_rng(0)
ops = list(zip(rng.integers(0, 128, 4000).tolist(),
               rng.integers(0, 128, 4000).tolist()))
for linking in Linking:
    for compaction in Compaction:
        dsu = SeqDsu(128, linking=linking, compaction=compaction, seed=1)
        oracle = OraclePartition(128)
        ctr = OpCounters()
        for u, v in ops:
            assert dsu.union(u, v, ctr) == oracle.union(u, v)
        assert partitions_equal(dsu.labels(), oracle.labels)
        print(f"{linking.value:>13} + {compaction.value:<11}"
              f" components={dsu.count_components():3d}"
              f" find_steps={ctr.find_steps}")
