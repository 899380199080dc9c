"""Independent oracles for the test suite.

Nothing here imports the package: series are plain lists of Fractions
(index = exponent), determinants use textbook Gaussian elimination, and
square roots of series use Newton's iteration.
"""

from fractions import Fraction


def pad(a, n):
    a = [Fraction(x) for x in a[:n]]
    return a + [Fraction(0)] * (n - len(a))


def mul(a, b, n):
    a, b = pad(a, n), pad(b, n)
    return [sum(a[i] * b[m - i] for i in range(m + 1)) for m in range(n)]


def inverse(a, n):
    """1/a for a series with a[0] != 0, by the coefficient recursion."""
    a = pad(a, n)
    out = [1 / a[0]]
    for m in range(1, n):
        out.append(-sum(a[i] * out[m - i] for i in range(1, m + 1)) / a[0])
    return out


def divide(a, b, n):
    return mul(a, inverse(b, n), n)


def sqrt(p, n):
    """Square root of a series with p[0] = 1, by Newton's iteration
    h <- (h + p/h) / 2, doubling the precision each round."""
    p = pad(p, n)
    assert p[0] == 1
    h = [Fraction(1)]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        q = divide(p[:prec], h + [Fraction(0)] * (prec - len(h)), prec)
        h = [(x + y) / 2 for x, y in zip(pad(h, prec), q)]
    return h[:n]


def closed_form_root(numerator, discriminant, n):
    """(numerator + sqrt(discriminant)) / (2q), first n coefficients."""
    root = sqrt(discriminant, n + 1)
    top = [x + y for x, y in zip(pad(numerator, n + 1), root)]
    assert top[0] == 0, "closed form is not a power series"
    return [x / 2 for x in top[1:n + 1]]


def poly(*coeffs):
    return [Fraction(c) for c in coeffs]


def golden_closed_form(n):
    # G = (q^2 + q - 1 + sqrt((1 - q + q^2)(1 + 3q + q^2))) / (2q)
    disc = mul(poly(1, -1, 1), poly(1, 3, 1), 5)
    return closed_form_root(poly(-1, 1, 1), disc, n)


def silver_closed_form(n):
    # S = (q^3 + 2q - 1 + sqrt((1 - q + q^2)(1 + q + 4q^2 + q^3 + q^4))) / (2q)
    disc = mul(poly(1, -1, 1), poly(1, 1, 4, 1, 1), 7)
    return closed_form_root(poly(-1, 2, 0, 1), disc, n)


def bronze_closed_form(n):
    disc = mul(poly(1, -1, 1), poly(1, 1, 2, 5, 2, 1, 1), 9)
    return closed_form_root(poly(-1, 2, 1, 0, 1), disc, n)


def platinum_closed_form(n):
    disc = mul(poly(1, -1, 1), poly(1, 1, 2, 3, 6, 3, 2, 1, 1), 11)
    return closed_form_root(poly(-1, 2, 1, 1, 0, 1), disc, n)


def det(matrix):
    """Determinant by Gaussian elimination over Fractions."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        result *= m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return sign * result


def hankel(coeffs, shift, n):
    return det([[coeffs[shift + i + j] for j in range(n)] for i in range(n)])


def hankel_row(coeffs, shift, n_max):
    return [hankel(coeffs, shift, n) for n in range(n_max + 1)]


def eval_fraction(layers, n):
    """Value of c0 q^e0 / (D1 + c1 q^e1 / (D2 + ...)) where ``layers`` is a
    list of (c, e, D) with D a coefficient list (D0 is unused)."""
    acc = None
    for i in range(len(layers) - 1, -1, -1):
        c, e, _ = layers[i]
        num = [Fraction(0)] * n
        if e < n:
            num[e] = Fraction(c)
        if acc is None:
            acc = num
        else:
            below = [x + y for x, y in zip(pad(layers[i + 1][2], n), acc)]
            acc = divide(num, below, n)
    return acc


def q_two_fifths(n):
    # q^2 / (1 + 2q^2 / (1 + (q/2) / (1 + q/2)))
    return eval_fraction([(1, 2, [1]), (2, 2, [1]), (Fraction(1, 2), 1, [1]),
                          (Fraction(1, 2), 1, [1])], n)


def q_three_fifths(n):
    # q / (1 + q / (1 + q / (1 + q^2)))
    return eval_fraction([(1, 1, [1]), (1, 1, [1]), (1, 1, [1]), (1, 2, [1])], n)


def backwards_q_integer(m):
    """[-m]_q as (numerator list, power of q in the denominator) by running
    [x]_q = ([x+1]_q - 1) / q downwards from [0]_q = 0."""
    num, den_power = [Fraction(0)], 0
    for _ in range(m):
        # ([x]_q - 1) / q with [x]_q = num / q^den_power
        shifted = [Fraction(0)] * den_power + [Fraction(-1)]
        num = [a + b for a, b in zip(pad(num, max(len(num), len(shifted))),
                                       pad(shifted, max(len(num), len(shifted))))]
        den_power += 1
    return num, den_power
