"""
Multi-sorted first-order syntax: vocabularies, terms, formulas, parsing,
printing and normal forms.
"""
