"""
The axiom catalog and the definitions of derived geometric relations.
"""
