"""Frozen oracle values.

Every constant here was produced by tests/oracles/regenerate.py, which uses
only mpmath (40 digits), direct brute-force summation and closed forms. None
of these numbers were taken from the package under test.
"""

ZETA_HALF = -1.460354508809586812889499152515298012467
FIRST_ZERO = 14.13472514173469379045725198356247027078
ZETA_HALF_100 = complex(2.692619885681324090476096470521590577063, -0.02038602960259816177072685329832152099173)
ZETA_HALF_1E6 = complex(0.0760890697382271000055645583799273223108, 2.805102101019298955393836716564940236463)
ZETA_0676_1E5 = complex(1.834524883863448655929695698749793102771, 2.590335307225975470809791699408210056845)

# Gaussian upper tail at 1, mpmath quadrature of the density (stats_oracle.psi)
PSI_1 = 0.15865525393145705
