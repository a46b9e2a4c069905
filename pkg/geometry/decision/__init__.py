"""
Decision kernels for field sentences: exact polynomials, Gröbner bases,
the ACF0 procedure for universal sentences and real quantifier elimination.
"""
