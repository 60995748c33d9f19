"""
The `obeq.lab` package contains the statistical laboratory for the Lukacs characterization:
sampling, independence testing, density estimation,
and the end-to-end recovery of gamma parameters from samples.
"""
