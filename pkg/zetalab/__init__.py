"""
zetalab - verification workbench for integral representations, Laurent
expansions and summation rules around the Riemann zeta-function
"""

__version__ = "1.0.0"
