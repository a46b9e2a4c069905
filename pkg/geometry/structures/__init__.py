"""
Finite multi-sorted structures, model checking and finite-field builders.
"""
