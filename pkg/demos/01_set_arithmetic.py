# # Set arithmetic in Z/qZ
#
# Sets are stored as bitsets over the residues 0..q-1. The usual
# operations return new sets, so they compose like Python frozensets.

import numpy as np

from sumprod import PrimeField, FieldSet, field_set
from sumprod import sum_set, product_set, difference_set, ratio_set, s_xi_set, i_set, repr_counts

F = PrimeField(101)
A = field_set(F, [1, 2, 3, 4])
print(A)

# An arithmetic progression has a small sum set but a larger product set.

print("|A+A| =", len(sum_set(A, A)))
print("|A.A| =", len(product_set(A, A)))
print("|A-A| =", len(difference_set(A, A)))
print("|A/A| =", len(ratio_set(A, A)))

# A geometric progression is the other way round.

G = field_set(F, [pow(3, i, 101) for i in range(4)])
print("geometric:", list(G.elements()))
print("|G+G| =", len(sum_set(G, G)), " |G.G| =", len(product_set(G, G)))

# S_xi(A) = {a + b xi} and the set I(A) of all a1(a2 - a3) + a4(a5 - a6).

B = field_set(7, [1, 2])
print("S_1({1,2}) in F_7:", list(s_xi_set(B, 1).elements()))
print("I({1,2}) in F_7:", list(i_set(B).elements()))

# Representation counts of a + b xi; the energy is the sum of squared counts.

table = repr_counts(B, 1)
print("counts:", dict(table.items()), " energy:", table.energy())

# Large sets go through an FFT convolution. Two random half-density sets
# modulo a prime near 10^6 cover the whole field.

q = 999983
rng = np.random.default_rng(0)
X = FieldSet.from_iterable(PrimeField(q), np.flatnonzero(rng.random(q) < 0.45))
Y = FieldSet.from_iterable(PrimeField(q), np.flatnonzero(rng.random(q) < 0.45))
print("|X| =", len(X), " |Y| =", len(Y), " |X+Y| =", len(sum_set(X, Y)))
