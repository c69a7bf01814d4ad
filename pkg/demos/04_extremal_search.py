"""Hill climbing toward the extremes of w_A.

The two-sided bound ||T||_A / 2 <= w_A(T) <= ||T||_A is sharp at both ends.
The search maximizes lhs/rhs of one side over a fixed weight and reports the
witness that got closest.
"""
from semihilbert import io, suite

for target in ("C01-upper", "C01-lower"):
    res = suite.search_extremal(target, dim=2, iters=2000, seed=5)
    print(f"{target}: ratio {res.ratio:.9f} after {res.iterations} steps")

# witnesses round-trip through JSON and can be replayed
print(io.dumps(res.witness)[:200], "...")
