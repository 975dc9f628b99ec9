"""Genus-2 curves with (3,3)-split Jacobians.

Subpackages are organized by what they compute:

* :mod:`g2split.exact`     -- exact rational/polynomial arithmetic kernels
* :mod:`g2split.igusa`     -- sextic invariants and moduli-point comparison
* :mod:`g2split.autgroup`  -- reduced automorphism loci and classification
* :mod:`g2split.subcovers` -- the degree-3 cover family, its elliptic models
* :mod:`g2split.fiber`     -- counting curves with extra involutions over a base
* :mod:`g2split.points`    -- torsion, cover pullbacks, rational point search
* :mod:`g2split.tables`    -- the seven distinguished curves and errata notes
"""

__version__ = "0.1.0"
