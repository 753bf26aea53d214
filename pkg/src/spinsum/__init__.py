"""State-sum invariants of spin 3-manifolds from planar spin normal o-graphs."""
