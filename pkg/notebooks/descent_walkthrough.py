# %% [markdown]
# Untwisting a birational self-map step by step.
#
# A word in the involutions acts on the degree vector (mu, nu_P, nu_L).
# The descent finds a non-canonical center, applies its involution and
# repeats until mu = 1.  Reading the steps backwards recovers the word.

# %%
from nodalquartic.dynamics import Line, PairPoint, Point, apply_word, compose
from nodalquartic.incidence import make_config
from nodalquartic.untwist import untwist
from nodalquartic.words import equal

config = make_config(["P1", "P2"], {"L": ["P1", "P2"]})
word = [PairPoint("P1", "P2", "L"), Line("L"), Point("P1"), Point("P2")]
start = apply_word(config, word)
print("start:", start)

# %%
trace = untwist(config, start)
for g, v in trace.steps:
    print(f"{str(g):>10}  ->  {v}")
print("status:", trace.status)
print("recovered:", [str(g) for g in trace.recovered])

# %% [markdown]
# The recovered word need not be letter-for-letter the input, but it
# defines the same map on degree vectors.

# %%
print("same action:", compose(config, trace.recovered) == compose(config, word))
print("word oracle:", equal(config, trace.recovered, word))

# %% [markdown]
# The pair involution alone, written out as a matrix.

# %%
m = compose(config, [PairPoint("P1", "P2", "L")]).reorder(["mu", "P1", "P2", "L"])
for row in m.as_ints():
    print(row)

# %% [markdown]
# An involution centred off the line forgets the multiplicities along it,
# so words mixing two clusters usually cannot be pushed through exactly.

# %%
mixed = make_config(["P1", "Q"], {"L": ["P1"], "M": ["Q"]})
print(apply_word(mixed, [Point("Q")], strict=False))
