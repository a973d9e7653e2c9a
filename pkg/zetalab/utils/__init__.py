"""
Pure numeric helpers: exact arithmetic, special functions, power series and
report serialization
"""
