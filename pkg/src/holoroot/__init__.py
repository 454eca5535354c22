"""Exact Taylor expansion of the root near -1 of the universal monic equation.

The package is organised bottom-up:

* :mod:`holoroot.multiindex` -- length/weight combinatorics and the cone S(k)
* :mod:`holoroot.polyring`   -- sparse rational polynomials and m_{q,r}
* :mod:`holoroot.weyl`       -- differential operators, generators, Newton basis
* :mod:`holoroot.detres`     -- determinants, resultants, discriminant
* :mod:`holoroot.taylor`     -- the coefficient table C_{q,r} and the root series
* :mod:`holoroot.oracle`     -- floating-point Newton root and the k=2 radical series
* :mod:`holoroot.verify`     -- verification suites used by the CLI
"""

__version__ = "0.1.0"
