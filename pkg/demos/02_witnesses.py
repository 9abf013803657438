# # Witnesses for lower bounds on |I(A)|
#
# A collision a1 + b1 xi = a2 + b2 xi lets a scaled copy of S_xi(A)
# sit inside I(A). The functions below find such collisions and return
# the embedded set together with the bound it certifies.

from sumprod import PrimeField, field_set, subgroup_of_order
from sumprod import find_collision, embed_witness, select_xi_lemma2, select_xi_lemma4, theorem3_witness
from sumprod import NoCollision, TooSmall

A = field_set(7, [1, 2])
c = find_collision(A, 1)
print("collision:", c.pair1, c.pair2, "scale", c.scale)

w = embed_witness(A, 1)
print("embedded:", list(w.embedded.elements()), " |I(A)| =", w.i_size)

# With xi = 3 the map (a, b) -> a + 3b is injective on {1,2}^2.

try:
    embed_witness(A, 3)
except NoCollision as exc:
    print("no collision:", exc)

# Picking xi of least energy inside a subgroup G guarantees
# |S_xi(A)| >= |A|^2 |G| / (|A|^2 + |G|).

G = subgroup_of_order(PrimeField(7), 3)
choice = select_xi_lemma2(A, G)
print("xi =", choice.xi, " energy =", choice.energy, " |S_xi| =", choice.s_xi_size)

# Scanning the subgroup generated by popular ratios.

r = select_xi_lemma4(field_set(13, [1, 3, 9, 2]))
print(r.to_dict())

# Once |A|^2 > q some S_xi covers half the field.

print(theorem3_witness(field_set(7, [1, 2, 3])).to_dict())
try:
    theorem3_witness(A)
except TooSmall as exc:
    print("too small:", exc)
