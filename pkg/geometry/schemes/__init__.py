"""
Translation schemes: transductions of structures and translations of formulas.
"""
