"""
Example scripts demonstrating Snevily Verifier functionality.
"""
