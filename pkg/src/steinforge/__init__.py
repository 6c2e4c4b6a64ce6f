"""steinforge: exact combinatorics of dyadic coverings, the groups they
generate, and the finite complexes used in their connectivity analysis."""

__version__ = "0.1.0"
