"""
Sampling outcomes and drawing arrangements
==========================================

Draw seeded joint outcomes from a potentia table, then render SVG
depictions. Same seed, same counts; same arrangement, same bytes.
"""

import os

import numpy as np

import qlab

out_dir = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(out_dir, exist_ok=True)

shape = qlab.configuration(2)
table = qlab.build_from_mixture(
    [0.7, 0.3],
    [
        qlab.build_from_state_vector(np.array([1.0, 0.0]), shape),
        qlab.build_from_state_vector(np.array([0.0, 1.0]), shape),
    ],
    label="two detector table",
)

print("algorithm:", qlab.SAMPLER_ALGORITHM)
counts = qlab.sample_outcomes(table, 10_000, seed=7)
for index, count in counts.items():
    print(f"outcome {index}: {count}")
print("same seed repeats exactly:", counts == qlab.sample_outcomes(table, 10_000, seed=7))

# Render the table: one screen, so each power is a dot whose opacity is
# its potentia.
svg = qlab.render_arrangement_svg(table)
path = os.path.join(out_dir, "table.svg")
with open(path, "w", encoding="utf-8") as fh:
    fh.write(svg)
print("wrote", path)

# A four-screen arrangement renders powers as polygons touching one
# detector per screen.
four = qlab.configuration(2, 2, 2, 2)
v1 = np.zeros(16)
v1[four.flat_index((1, 2, 1, 2))] = 1.0
v2 = np.zeros(16)
v2[four.flat_index((2, 2, 2, 2))] = 1.0
pair = qlab.build_from_mixture(
    [0.5, 0.5],
    [qlab.build_from_state_vector(v1, four), qlab.build_from_state_vector(v2, four)],
    label="four screen pair",
)
options = qlab.RenderOptions(show_labels=True)
svg = qlab.render_arrangement_svg(pair, options)
path = os.path.join(out_dir, "pair.svg")
with open(path, "w", encoding="utf-8") as fh:
    fh.write(svg)
print("wrote", path)
print("glyphs drawn:", len(qlab.depicted_powers(pair, options)))
print("byte stable:", svg == qlab.render_arrangement_svg(pair, options))
