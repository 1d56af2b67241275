"""
From arc scores to a dependency tree
====================================

A parser's last stage: given a matrix of head-attachment scores, pick
the best single-root tree and read off attachment probabilities.
"""

import numpy as np

from synconv import (ScoreMatrix, head_probabilities, heads_to_tree,
                     mst_decode, serialize_conllu)

# scores[h][d]: how much head h (row 0 is the virtual root) wants
# dependent d. Three tokens: "Anna" "singt" "laut".
m = ScoreMatrix(n=3, scores=[
    [1.0, 9.0, 0.0],   # root strongly prefers governing token 2 ("singt")
    [0.5, 1.0, 0.5],
    [8.0, 2.0, 6.0],   # "singt" is a good head for both neighbours
    [0.0, 0.5, 1.0],
])

heads = mst_decode(m)
print(f"decoded heads: {heads}")

probs = head_probabilities(m)
np.set_printoptions(precision=3, suppress=True)
print("attachment probabilities (rows = candidate heads):")
print(probs)
print(f"column sums: {probs.sum(axis=0)}")

tree = heads_to_tree(heads, forms=["Anna", "singt", "laut"])
print(serialize_conllu([tree]))

# Greedy per-token argmax can pick two root children; the decoder cannot.
# Here both tokens individually prefer the root, but a tree allows only
# one root child, so the weaker preference is redirected.
tough = ScoreMatrix(n=2, scores=[[10.0, 9.0], [0.0, 8.5], [8.0, 0.0]])
print(f"greedy picks: {[int(c) for c in np.argmax(tough.scores, axis=0)]}")
print(f"tree decode:  {mst_decode(tough)}")
