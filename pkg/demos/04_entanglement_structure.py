"""
Correlation structure across screen cuts
========================================

Schmidt coefficients, rank profiles over every bipartition, and the
product test that compares an arrangement with the product of its
marginals.
"""

import numpy as np

import qlab

pair = qlab.configuration(2, 2)
triple = qlab.configuration(2, 2, 2)

# Three named states. The first two are maximally paired across the cut
# shown; the third spreads one excitation over three screens.
bell = np.zeros(4, dtype=np.complex128)
bell[0] = bell[3] = 1 / np.sqrt(2)

ghz = np.zeros(8, dtype=np.complex128)
ghz[0] = ghz[7] = 1 / np.sqrt(2)

w = np.zeros(8, dtype=np.complex128)
w[1] = w[2] = w[4] = 1 / np.sqrt(3)

cut = qlab.Bipartition((1,), (2,))
result = qlab.schmidt_decompose(bell, pair, cut)
print("paired state across", cut, "-> rank", result.rank,
      "coefficients", np.round(result.coefficients, 6))

result = qlab.schmidt_decompose(w, triple, qlab.Bipartition((1,), (2, 3)))
print("spread state across 1|2,3 -> coefficients", np.round(result.coefficients, 6))
print("squares:", np.round(np.square(result.coefficients), 6), "(sum to 1)")

# Every bipartition at once. Keys put screen 1 on the left.
print("rank profile of the three-screen paired state:")
for bipartition, rank in qlab.schmidt_rank_profile(ghz, triple).items():
    print(f"  {bipartition}: rank {rank}")

# A product state factors screen by screen.
factor = qlab.random_state_vector(2, qlab.make_rng(3))
product = np.kron(np.kron(factor, factor), factor)
separable, factors = qlab.is_fully_separable_pure(product, triple)
print("product state separable:", separable, "with", len(factors), "factors")
separable, _ = qlab.is_fully_separable_pure(ghz, triple)
print("paired state separable:", separable)

# The product test works on arrangements, pure or mixed. Mixing the two
# certain outcomes keeps classical correlation: not a product, but closer
# to one than the coherent pairing.
coherent = qlab.build_from_state_vector(bell, pair)
e11 = np.zeros(4)
e11[0] = 1.0
e22 = np.zeros(4)
e22[3] = 1.0
classical = qlab.build_from_mixture(
    [0.5, 0.5],
    [qlab.build_from_state_vector(e11, pair), qlab.build_from_state_vector(e22, pair)],
)
for name, ea in (("coherent", coherent), ("classical", classical)):
    flag, residual = qlab.is_product_across(ea, cut)
    print(f"{name} pairing product across {cut}: {flag}, residual {residual}")
