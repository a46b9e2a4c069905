"""
Segment arithmetic in the rational Cartesian plane.
"""
