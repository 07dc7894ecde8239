"""Computer algebra for hyperfields: structures whose addition is multivalued.

The workbench covers finite hyperstructures given by dense tables, factor
hyperfields of prime fields and of the rationals, the signed tropical
hyperfield handled symbolically, orderings and preorderings, valuations and
valuation hyperrings, and the compatibility theory connecting the two up to
an executable Baer-Krull correspondence.
"""

__version__ = "0.1.0"
