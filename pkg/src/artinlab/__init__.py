"""artinlab: empirical workbench for primes with a prescribed primitive root.

Subpackages cover exact arithmetic (arith), quadratic character sums
(quadchar), the pre-sieving residue-class construction (discriminants),
primitive-root censuses (primroot), Maynard-Tao sieve sums (sieve), the
variational eigenvalue bound (mkopt) and density heuristics (heuristics).
"""

from ._backend import backend_name

__version__ = "0.1.0"

__all__ = ["backend_name", "__version__"]
