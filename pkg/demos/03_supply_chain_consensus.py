"""Three experts rate four supply chains until they agree.

Each round builds a group opinion, measures how far every expert sits from
it, and moves everyone part of the way toward it. Attributes the experts
already agree on get a larger weight.
"""
import numpy as np

from lingconsensus import load_fixture, rank_alternatives, run_consensus

problem = load_fixture("supply-chain.json")
p, m, n = problem.shape
print(f"{p} experts, {m} alternatives, {n} attributes; thresholds {problem.thresholds}")

result = run_consensus(problem)
for r in result.reports:
    eta = ", ".join(f"{e}={v:.3f}" for e, v in zip(problem.experts, r.eta))
    weights = np.array2string(r.attribute_weights, precision=3)
    print(f"round {r.round}: eta {eta}  weights {weights}  {'done' if r.terminated else ''}")

print("converged:", result.converged)

last = result.reports[-1]
print("\nfinal group matrix (first dimension):")
for alt, row in zip(problem.alternatives, last.group_matrix):
    print(" ", alt, "  ".join(f"[{c.a:.3f}, {c.b:.3f}]" for c in row))

print("\nranking:")
for pos, row in enumerate(rank_alternatives(last.group_matrix, last.attribute_weights, problem.scale,
                                            problem.alternatives), 1):
    print(f"  {pos}. {row.alternative}  {row.score:.4f}")

# A more optimistic aggregation changes how quickly the panel settles.
optimistic = run_consensus(problem.replace(alpha=2.0))
print(f"\nwith alpha=2 the panel settles after {len(optimistic.reports)} rounds")
