"""Determinant polynomials, the moment functional, and Jacobi data.

The bordered Hankel determinant P_n(x) generalizes orthogonal polynomials to
arbitrary (not necessarily positive) rational sequences: its coefficients are
signed maximal minors, its leading coefficient is D_{n-1}, and applying the
moment functional L (s_n = L(x^n)) gives L(x^n P_n) = D_n.  The second-kind
polynomial Q_n satisfies a cross identity with P_n whose right side is a
perfect square.
"""

from fractions import Fraction as F

from hankelkit import (
    apply_L,
    determinant_transform,
    jacobi_from_moments,
    kronecker_residual,
    moments_from_jacobi,
    poly_P,
    poly_Q,
    solve_prescribed,
)


def main() -> None:
    # Even moments of the semicircle-type weight: s = (1, 0, 1/2, 0, 3/8, 0).
    s = [F(1), F(0), F(1, 2), F(0), F(3, 8), F(0)]
    profile = determinant_transform(s)
    print("moments      :", [str(v) for v in s])
    print("D_n          :", [str(v) for v in profile.d_values])

    for n in range(3):
        p = poly_P(s, n)
        q = poly_Q(s, n)
        print(f"P_{n}(x) = {p}    Q_{n}(x) = {q}")

    # L(x^j P_n) vanishes for j < n and equals D_n at j = n: orthogonality
    # stated purely in terms of determinants.
    p2 = poly_P(s, 2)
    for j in range(3):
        value = apply_L(s, p2.times_x(j))
        print(f"L(x^{j} P_2) = {value}")
        assert value == (profile.d_values[2] if j == 2 else 0)

    # Cross identity: P_{r-1} Q_r - P_r Q_{r-1} is the constant D_{r-1}^2.
    # kronecker_residual returns the difference against D_{r-1}^2, so exact
    # inputs always give 0.
    combo = poly_P(s, 1) * poly_Q(s, 2) - poly_P(s, 2) * poly_Q(s, 1)
    print(f"P_1 Q_2 - P_2 Q_1 = {combo} = D_1^2 = {profile.d_values[1] ** 2}")
    assert kronecker_residual(s, 2) == 0

    # When no D_n vanishes the sequence carries a three-term recurrence
    # x P_n = P_{n+1}/? ... summarized by Jacobi coefficients (a_n, b_n).
    jac = jacobi_from_moments(s, 3)
    print("a_n          :", [str(v) for v in jac.a])
    print("b_n          :", [str(v) for v in jac.b])
    roundtrip = moments_from_jacobi(jac)
    assert roundtrip.terms[: len(s)] == tuple(s)
    print("moments_from_jacobi(jacobi_from_moments(s)) reproduces s exactly")

    # The determinant profile can also be prescribed directly: given nonzero
    # targets (t_n, t'_n) there is exactly one sequence realizing them.
    t = [F(2), F(1), F(-3)]
    t_prime = [F(1), F(0), F(5, 7)]
    solved = solve_prescribed(t, t_prime)
    check = determinant_transform(solved)
    print("prescribed D :", [str(v) for v in t], "->", [str(v) for v in solved.terms])
    assert check.d_values == tuple(t)
    assert check.d_prime_values == tuple(t_prime)
    print("realized profile matches the prescription exactly")


if __name__ == "__main__":
    main()
