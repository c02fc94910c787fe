"""Determinant profiles: the two minor sequences attached to a moment sequence.

A sequence s_0, s_1, ... determines Hankel matrices H_n = (s_{i+j}) for
0 <= i, j <= n.  The profile collects D_n = det H_n together with the shifted
minors D'_{n+1} obtained by advancing the last column one step.  Everything
here is exact rational arithmetic.
"""

from fractions import Fraction as F

from hankelkit import (
    binomial_transform,
    determinant_transform,
    hankel_det,
    hankel_matrix,
    shifted_det,
)


def show(title, s):
    profile = determinant_transform(s)
    print(f"\n{title}")
    print(f"  s        = {[str(v) for v in s]}")
    print(f"  D_n      = {[str(v) for v in profile.d_values]}")
    print(f"  D'_(n+1) = {[str(v) for v in profile.d_prime_values]}")
    return profile


def main() -> None:
    # A geometric sequence has rank one: every 2x2 minor vanishes, so the
    # profile collapses to (s_0, 0, 0, ...).
    geometric = [F(1), F(3), F(9), F(27), F(81)]
    profile = show("geometric s_k = 3^k", geometric)
    assert profile.d_values[1:] == (0, 0)

    # Catalan numbers: every D_n equals 1, the signature of a totally
    # positive moment sequence.  (D'_{n+1} advances the *last column* of
    # H_n by one step; it is not the all-ones shifted determinant.)
    catalan = [1, 1, 2, 5, 14, 42, 132]
    profile = show("Catalan numbers", catalan)
    assert set(profile.d_values) == {1}

    # Zeros in the interior of a profile come in structured runs.  For a
    # sparse sequence, the run between nonzero determinants is consistent
    # with a single rank jump.
    sparse = [F(1), F(0), F(0), F(0), F(1), F(0), F(0), F(0)]
    show("sparse s = (1,0,0,0,1,0,0,0)", sparse)

    # Single determinants are available without the whole profile, and the
    # matrices themselves can be inspected.
    print("\nH_2 of the Catalan prefix:")
    for row in hankel_matrix(catalan, 2):
        print("   ", [str(v) for v in row])
    print(f"  det H_2  = {hankel_det(catalan, 2)}")
    print(f"  D'_3     = {shifted_det(catalan, 2)}  (H_2 with its last column advanced)")

    # The profile is invariant under the binomial transform
    # s_n -> sum_k C(n,k) s_k.
    shifted = binomial_transform(catalan)
    print(f"\nbinomial transform: {[str(v) for v in shifted.terms[:4]]} ...")
    assert determinant_transform(shifted).d_values == determinant_transform(catalan).d_values
    print("  determinant profile unchanged (checked exactly)")


if __name__ == "__main__":
    main()
