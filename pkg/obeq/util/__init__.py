"""
The `obeq.util` package contains various utilities used throughout the package:
logging setup, errors, robust statistics, seeded randomness, and JSON serialization.
"""
