"""
Core utilities package.

This package MUST NOT:
- import solver code (fields, taylor, stepper, oracle)
- depend on scipy

It is safe for:
- logging
- config
- small helpers
"""
