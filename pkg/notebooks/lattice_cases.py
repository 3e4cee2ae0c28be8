# %% [markdown]
# Configurations of (-2)-curves on a hyperplane section.
#
# Condition (*) holds when every connected component of the unmarked
# curves is a finite or affine Dynkin diagram.  Two independent checks
# agree: one tests definiteness directly, the other recognises the graph.

# %%
from nodalquartic.corollary_cases import case_labels, corollary_case
from nodalquartic.lattice import (
    chain_pullback,
    check_star,
    check_star_by_recognition,
    classify_dynkin,
    definiteness,
    dynkin_diagram,
    intersection_matrix,
)

for label in ["D4", "E6^(1)", "E8", "A3^(1)"]:
    g = dynkin_diagram(label)
    d = definiteness(intersection_matrix(g))
    print(f"{label:8} {d.kind:30} kernel {d.kernel_dim}  classified {classify_dynkin(g).labels}")

# %% [markdown]
# Every excluded configuration from the case tables, rebuilt.

# %%
for label in case_labels():
    g, marked, expected = corollary_case(label)
    unmarked = g.induced(v for v in g.ids if v not in set(marked))
    found = sorted(classify_dynkin(unmarked).labels)
    star = check_star(g, marked).holds
    print(f"{label:48} {'+'.join(found):24} star {star} {'ok' if found == expected else 'MISMATCH'}")

# %% [markdown]
# Adding an edge to an affine diagram breaks (*).

# %%
g = dynkin_diagram("D4^(1)")
extra = type(g)(g.vertices, g.edges + (("v0", "v1", 1),))
print(check_star(extra).to_json(), check_star_by_recognition(extra))

# %% [markdown]
# Pull-back coefficients along an A_k chain are t/(k+1).

# %%
for k in (1, 2, 3, 6):
    print(k, [str(a) for a in chain_pullback(k)])
