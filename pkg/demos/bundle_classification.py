"""Classify rank-4 bundles over the 4-sphere from their clutching words.

A clutching word multiplies powers of two generator maps of the 3-sphere
into SO(4): `eta` (left quaternion multiplication) and `nu` (quaternion
conjugation).  Two integers classify the resulting bundle -- the Euler
number and the first Pontryagin number -- and the lattice coordinates
phi = (chi, -(p1 + 2*chi)/4) turn pointwise multiplication of words into
vector addition.
"""

import numpy as np

from spinfour import classify_word, parse_word, tangent_bundle_word
from spinfour.verify import random_word

print("generators and the tangent bundle")
print(f"{'word':<18}{'chi':>5}{'p1':>5}   phi")
for text in ("eta", "nu", "eta^2 * nu^-1", "eta^-1", "nu^3", ""):
    cls = classify_word(parse_word(text))
    print(f"{text or '1':<18}{cls.euler:>5}{cls.pontryagin:>5}   {cls.phi}")

# the tangent bundle of the 4-sphere: Euler number 2 (so no nonvanishing
# vector field), Pontryagin number 0
tau = classify_word(tangent_bundle_word())
print(f"\ntangent bundle of S^4: chi = {tau.euler}, p1 = {tau.pontryagin}")

# phi is a homomorphism: the class of a product is the sum of the classes
rng = np.random.default_rng(7)
print("\nproducts add in phi coordinates:")
for _ in range(5):
    w1, w2 = random_word(rng), random_word(rng)
    p1, p2 = classify_word(w1).phi, classify_word(w2).phi
    p12 = classify_word(w1 * w2).phi
    print(f"  phi({w1}) + phi({w2}) = {p1} + {p2} = {p12}")

# every lattice point is hit: eta^m * nu^n lands exactly on (m, n),
# so the classification is a bijection onto Z^2
print("\nphi values of eta^m * nu^n for m, n in [-2, 2]:")
for m in range(-2, 3):
    row = [classify_word(parse_word(f"eta^{m} * nu^{n}")).phi for n in range(-2, 3)]
    print("  " + "  ".join(f"({a:+d},{b:+d})" for a, b in row))
