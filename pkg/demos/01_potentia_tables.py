"""
Potentia tables of a single-screen arrangement
==============================================

Build the two-detector arrangement whose outcomes carry weights 0.7 and
0.3, read off its potentia table, and evaluate projectors against it.
"""

import numpy as np

import qlab

# A screen with two detectors. Joint outcomes are indexed 1-based.
shape = qlab.configuration(2)

# Mix the two certain arrangements with weights 0.7 and 0.3.
first = qlab.build_from_state_vector(np.array([1.0, 0.0]), shape)
second = qlab.build_from_state_vector(np.array([0.0, 1.0]), shape)
ea = qlab.build_from_mixture([0.7, 0.3], [first, second], label="two detector table")

print("factorization:", ea.shape)
print("degree of complexity:", ea.dimension)

# The potentia table is the real diagonal: one weight per power.
for index in shape.all_indices():
    print(f"potentia{index} = {ea.potentia(index)}")

# The same numbers through the valuation: feed it basis projectors.
giv = qlab.GlobalIntensiveValuation(ea)
p1 = qlab.Power(shape, (1,)).projector()
print("valuation of the first power:", giv(p1))

# The identity always values to 1, and complements add up.
identity = qlab.GeneralProjector.identity(shape)
complement = qlab.GeneralProjector.from_matrix(
    identity.matrix.entries - p1.matrix.entries, shape
)
print("valuation of identity:", giv(identity))
print("first power plus complement:", giv(p1) + giv(complement))

# Validity is four named checks, each with a residual.
report = qlab.validate_isa(ea)
for check in report.checks:
    print(f"check {check.name}: passed={check.passed} residual={check.residual:.2e}")

# Arrangements round-trip through canonical text exactly.
text = qlab.serialize_arrangement(ea)
back = qlab.parse_arrangement(text)
print("file round trip exact:", np.array_equal(back.alpha.entries, ea.alpha.entries))
print()
print(text)
