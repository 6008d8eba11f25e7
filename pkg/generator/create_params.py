"""Write the desk-scale parameter files used for command line runs.

Run from the project root:

    python -m generator.create_params

The named instances are fixed; the random ones follow WEYL_SEED.
"""

import json
import os

from acceptance import _instances
from generator.helpers import get_rng, random_params
from params import make_params

OUTPUT_DIR = os.environ.get('WEYL_INSTANCE_DIR', 'instances')
NUM_RANDOM = 5

os.makedirs(OUTPUT_DIR, exist_ok=True)

named = dict(_instances())
named["n1_d2_c"] = named["n1_d2"].with_mode(c_formal=True)
named["n1_d3_units"] = named["n1_d3"].with_mode(formal_units=("u1",))
named["n1_d3_dual"] = make_params([(2, 3)])

rng = get_rng()
for i in range(NUM_RANDOM):
    named[f"random_free_{i}"] = random_params(rng, max_d=4, free=True)

for name, P in sorted(named.items()):
    with open(os.path.join(OUTPUT_DIR, f"{name}.json"), 'w') as out:
        json.dump(P.to_json(), out, indent=2, sort_keys=True)
        out.write("\n")

# A sample automorphism for aut-check: omega -> omega^2 swaps x and y.
with open(os.path.join(OUTPUT_DIR, "swap_n1_d3.json"), 'w') as out:
    json.dump({"tau": [-1], "mu": ["u1"], "nu": ["-e^-1*u1^-1"], "units": ["u1"]},
              out, indent=2, sort_keys=True)
    out.write("\n")
