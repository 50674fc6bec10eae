"""
Basic usage examples for the Snevily Verifier.

Builds a group and field, finds a common character basis, constructs the
distinguished and distinct-sum permutations, and saves a witness with the
output manager.
"""

import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from snevily_verifier import (
    GroupSpec, build_finite_field, find_snevily_permutation, lemma4_permutation, snevily_polynomial,
    theorem1_characters,
)
from snevily_verifier.core.abelian_group import parse_elements
from snevily_verifier.core.output_manager import OutputManager
from snevily_verifier.analyzers.matroid import verify_witness_json, witness_to_json
from snevily_verifier.analyzers.snevily import count_attaining, multiset_signature


def example_common_basis():
    """Example: common character basis of two subsets of Z_3 x Z_3 over GF(4)"""
    print("=== COMMON CHARACTER BASIS ===")
    spec = GroupSpec((3, 3))
    ctx = build_finite_field(2, spec.exponent)
    A = parse_elements(spec, "(0,0);(1,0);(0,1)")
    B = parse_elements(spec, "(1,1);(2,2);(0,2)")

    chars = theorem1_characters(ctx, spec, A, B)
    print(f"Group: {spec}, field: {ctx.name}")
    print("Characters: " + ", ".join(str(u) for u in chars))

    witness = witness_to_json(ctx, spec, A, B, chars)
    print(f"detA = {witness['detA']}, detB = {witness['detB']}")
    print(f"Re-verified: {verify_witness_json(witness)}")

    output_manager = OutputManager("example_outputs")
    path = output_manager.save_witness(witness, "example_z3x3")
    print(f"Witness saved to {path}")


def example_permutations():
    """Example: distinguished and distinct-sum permutations in Z_5"""
    print("\n=== PERMUTATIONS ===")
    spec = GroupSpec((5,))
    A = parse_elements(spec, "(0);(1);(2)")
    B = parse_elements(spec, "(0);(1);(3)")

    pi = lemma4_permutation(spec, A, B)
    signature = multiset_signature(spec, A, B, pi)
    print(f"Distinguished permutation {pi}, attained {count_attaining(spec, A, B, signature)} time(s)")
    print(f"Its coefficient in the determinant polynomial: {snevily_polynomial(spec, A, B).coefficient(signature)}")

    sigma = find_snevily_permutation(spec, A, B)
    print(f"Distinct-sum permutation: {sigma}")


if __name__ == "__main__":
    example_common_basis()
    example_permutations()
