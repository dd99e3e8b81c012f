"""
HBG - Handlebody Group Presentation Verifier

Certified Tietze replay, abelian invariants, homomorphism counts and
certificate search for finite group presentations.
"""

from hbg.config import CONFIG

__version__ = CONFIG.VERSION
