"""
The obeq package turns the constructive solution of the Olkin-Baker functional equation
into executable algorithms:
exact evaluation of the solution family (`obeq.core.solutions`),
recovery of its parameters from tables corrupted on negligible sets (`obeq.core.reduction`),
a Fourier-based semi-constancy tester (`obeq.core.semiconstant`),
and a statistical laboratory for the Lukacs gamma characterization (`obeq.lab`).
"""

__version__ = '0.1.0'
