# %% [markdown]
# Two explicit quartic threefolds, checked with exact arithmetic.

# %%
import json
from importlib import resources

from nodalquartic.incidence import QuarticIncidence
from nodalquartic.quartic import (
    HomogPoly,
    ProjLine,
    ProjPoint,
    eckardt_normal_form,
    is_node,
    is_singular,
    line_contained,
    local_equation,
    parse_coordinates,
    tangent_hyperplane_along_line,
    verify_incidence,
)


def load(name):
    return json.loads(resources.files("nodalquartic").joinpath("data", name).read_text())


pt = ProjPoint.of

# %% [markdown]
# Three collinear nodes, one of them an Eckardt point.

# %%
F = HomogPoly.from_json(load("eckardt_point_equation.json"))
print(F.poly.as_expr())
config = QuarticIncidence.from_json(load("eckardt_point_config.json"))
report = verify_incidence(F, config, parse_coordinates(config, load("eckardt_point_coords.json")))
for check in report.to_json()["checks"]:
    print(check)

nf = eckardt_normal_form(F, pt(0, 0, 0, 0, 1))
print("q2 =", nf.q2.as_expr())
print("q4 =", nf.q4.as_expr())

L = ProjLine(pt(1, 0, 0, 0, 1), pt(-1, 0, 0, 0, 1))
print("y = 0 tangent along L:", tangent_hyperplane_along_line(F, [0, 1, 0, 0, 0], L, nodes_on_line=3))

# %% [markdown]
# The second equation contains the line x = y = z = 0 and is singular at
# (0:0:0:1:0), but its local equation there starts in degree three, so
# the singular point is not a node.

# %%
G = HomogPoly.from_json(load("smooth_eckardt_equation.json"))
p = pt(0, 0, 0, 1, 0)
print("line contained:", line_contained(G, ProjLine(p, pt(0, 0, 0, 0, 1))))
print("singular:", is_singular(G, p), "node:", is_node(G, p))
print("local equation:", local_equation(G, p)[0].as_expr())
