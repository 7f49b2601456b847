"""Graph colorings certified and constructed with the cluster-expansion local lemma."""

__version__ = "0.1.0"
