# %% [markdown]
# The cluster relations, checked pointwise on random elliptic curves.
#
# Projection from a marked line fibres the quartic into plane cubics.
# Each node on the line gives a section, and the involutions act on every
# fibre through the chord and tangent group law.

# %%
import random

from nodalquartic.dynamics import Line, PairPoint, Point
from nodalquartic.elliptic import FiberModel, PrimeField, cluster_relations, sample_curve, verify_relations
from nodalquartic.incidence import make_config

rng = random.Random(2024)
curve = sample_curve(PrimeField(), rng)
a, b = curve.random_point(rng), curve.random_point(rng)
print("a + b =", curve.add(a, b))
print("commutes:", curve.add(a, b) == curve.add(b, a))

# %%
two = make_config(["P1", "P2"], {"L": ["P1", "P2"]})
model = FiberModel.sample(curve, two, "L", rng)
x = curve.random_point(rng)
lhs = model.evaluate([PairPoint("P1", "P2", "L")], x)
rhs = model.evaluate([Point("P1"), Line("L"), Point("P2")], x)
print("pair involution as a product:", lhs == rhs)

# %% [markdown]
# The full battery, per relation, with a fixed seed.

# %%
three = make_config(["P1", "P2", "P3"], {"L": ["P1", "P2", "P3"]})
for config in (two, three):
    print(list(cluster_relations(config, "L")))
    for name, r in verify_relations(config, 500, seed=7)["L"].items():
        print(f"  {name:32} failures {r['failures']} of {r['samples']}")
