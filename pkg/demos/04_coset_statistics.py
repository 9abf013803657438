# # Popular ratios, cosets and difference statistics
#
# The ratios a/b hit often enough generate a subgroup G of F*. One of its
# cosets holds at least a third of A.

from sumprod import PrimeField, FieldSet, field_set, subgroup_of_order
from sumprod import popular_ratios, popular_subgroup, heavy_coset, coset_decomposition
from sumprod import coset_diff_counts, lemma5_stats, lemma5_empirical, hbk_partial_sums

F = PrimeField(37)
H12 = subgroup_of_order(F, 12)
A = H12.elements | field_set(F, [2])
print("popular ratios:", len(popular_ratios(A)), " G order:", popular_subgroup(A).order)
h = heavy_coset(A)
print("heavy coset rep", h.representative, "holds", len(h.intersection), "of", len(A))

# Cosets of the order-4 subgroup of F_13*.

G = subgroup_of_order(PrimeField(13), 4)
for rep, members in coset_decomposition(G):
    print(rep, list(members.elements()))

# N_t counts pairs of G with difference in the t-th coset. It does not
# depend on which member of the coset is used.

for r in coset_diff_counts(G):
    print("t =", r.t, " rep =", r.representative, " N =", r.N)

# L_t and M_t for a subset B of a subgroup.

G3 = subgroup_of_order(PrimeField(7), 3)
B = field_set(7, [1, 2])
st = lemma5_stats(B, G3)
print("N", st.N, " L", st.L, " M", st.M)
rec = lemma5_empirical(B, G3)
print("|B-B| =", rec.diff_size, " ratio =", round(rec.ratio, 3))

# Partial sums of the sorted N_t against (|G| T)^(2/3).

G = subgroup_of_order(PrimeField(101), 10)
for T in (1, 2, 5, 10):
    ps = hbk_partial_sums(G, T)
    print(T, ps.partial_sum, round(ps.reference, 2), ps.hypothesis)
