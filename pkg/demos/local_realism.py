"""
Local-realist bounds by brute force
===================================

Every deterministic local model assigns +-1 to each wing and setting. If a
wing's value may also depend on the distant setting there are 2**8 tables
and |B| reaches 4; if not there are 2**4 and |B| never exceeds 2.
"""

import random

from timebell import lhv
from timebell.quantum import TSIRELSON

labels = lhv.SettingLabels("t", "t'", "u", "u'")

best, witness = lhv.max_over_pi_strategies(labels)
print(f"parameter independent: max |B| = {best} over {len(lhv.pi_strategies(labels))} tables")
print("  witness:", witness.values)

best, witness = lhv.max_over_full_strategies(labels)
print(f"unconstrained:         max |B| = {best} over {len(lhv.full_strategies(labels))} tables")
for (wing, own, other), v in witness.values.items():
    print(f"  wing {wing} at {own:2} (other side {other:2}): {v:+d}")
print("  parameter independent?", witness.is_parameter_independent(labels))

# %% Mixtures stay inside [-2, 2]; quantum mechanics reaches 2 sqrt 2.
r = random.Random(0)
pool = lhv.pi_strategies(labels)
values = [lhv.ensemble_bell(lhv.Ensemble(r.choices(pool, k=50)), labels) for _ in range(2000)]
print(f"\n2000 random ensembles: B in [{min(values):+.2f}, {max(values):+.2f}]; quantum {TSIRELSON:.4f}")
