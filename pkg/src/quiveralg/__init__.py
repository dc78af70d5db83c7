"""Exact computer algebra for quivers with potential.

Layers: quivers and Euler forms; the rational path algebra with cyclic
words and potentials; edge contraction and Higgsing; premutation/mutation;
the shuffle-algebra product and its contraction homomorphism; series
action ratios, small-rank coproduct, residue pairing and double cross
relations; King stability walls and truncated scattering diagrams; double
and triple quivers with their relation-level dimensional reduction.
"""

__version__ = "0.1.0"
