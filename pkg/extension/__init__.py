# Trivial ring extensions A ∝ E.
