"""Build a 3x3 box-cluster code for a 10x10 array, break a codeword, fix it."""

import numpy as np

from clustercodes import ShapeSpec, assemble, bounds_report, decode, encode, syndrome
from clustercodes.oracle import random_cluster

rng = np.random.default_rng(5)
shape = ShapeSpec.box(3, 3)
a = assemble((10, 10), shape)

print(f"route {a.route}, {a.k} information bits, {a.r} redundancy bits")
for code in a.components:
    print("  component:", code.describe())

info = rng.integers(0, 2, a.k, dtype=np.uint8)
word = encode(a, info)
print("codeword syndrome is zero:", syndrome(a, word).is_zero())

cluster = random_cluster(shape, a.dims, rng)
bad = word.copy()
for p in cluster.positions:
    bad[p] ^= 1
print("flipped:", sorted(cluster.positions))

fixed, found = decode(a, bad)
print("located:", sorted(found.positions))
print("recovered codeword:", np.array_equal(fixed, word))

print()
print("\n".join(bounds_report(a).lines()))
