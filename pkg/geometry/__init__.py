"""
Geometry application: synthetic plane geometry checked through field arithmetic.
"""
