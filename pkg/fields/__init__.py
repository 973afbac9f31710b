"""
Periodic fields on the torus [0, 2pi]^3.

Spectral layout: full complex FFT arrays, forward transform scaled by 1/n^3
so that coeff(0) is the spatial mean.
"""
