# Quadratic forms, orthogonal groups and involutions in characteristic 2
__version__ = "0.1.0"
