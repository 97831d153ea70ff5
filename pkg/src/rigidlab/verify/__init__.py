"""Machine checks of rigidity-matroid identities, rank formulas and probes."""
