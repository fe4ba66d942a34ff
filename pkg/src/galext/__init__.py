"""galext: extensions of braided fusion categories along symmetric subcategories.

The package builds the crossed-product extension of a concretely realized
braided fusion category by a Tannakian subcategory, enumerates the simple
objects of the result, computes the induced group grading / group action /
crossed braiding, and machine-checks the structural identities on a set of
built-in examples.
"""

__version__ = "0.1.0"
