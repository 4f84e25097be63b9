"""equivar: exact computations with symmetric-group-equivariant modules.

The package works with finite truncations of the quotient of a polynomial
ring in N variables by the ideal of (s+1)st powers of the variables, carrying
the natural action of the symmetric group on N letters.  Everything is
computed in exact rational arithmetic.

Subpackages:

- ``linalg``          sparse rational matrices, rank/nullspace engine
- ``combinat``        partitions, characters, symmetric functions, injections
- ``truncated_ring``  the monomial basis of the truncated ring
- ``equivariant``     the P/Q module families and their constructions
- ``homcalc``         Hom/Ext/Tor solvers, complexes, stabilization
- ``fi_layer``        finitely presented FI-modules and the weight-s functor
- ``groth``           Grothendieck-group bookkeeping and basis changes
- ``cas_cat``         the combinatorial category with truncated-ring twists
- ``cli``             command line front end (``equivar``)

All public objects are immutable after construction and all operations are
pure, so values may be shared freely between threads.
"""

__version__ = "0.1.0"
