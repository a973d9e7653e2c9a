"""
Services layer for verification logic
Keeps the registries and sweeps apart from the command-line front end
"""
