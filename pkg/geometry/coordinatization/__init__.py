"""
Coordinatization of finite affine planes through planar ternary rings.
"""
