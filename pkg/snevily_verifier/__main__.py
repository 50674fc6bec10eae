"""
Main entry point for the Snevily verifier package.

This allows the package to be run as a module:
    python -m snevily_verifier
"""

from .cli import main

if __name__ == '__main__':
    exit(main())
