"""Integer Laurent polynomials, classical periods and algebraic mutations.

A Laurent polynomial is stored as a dict from exponent tuples to nonzero
integer coefficients.  The classical period is read off from the constant
terms of powers, with Newton-polytope pruning so that moderate depths stay
fast; mutations are performed by exact division of the graded pieces.
"""

from .errors import DomainError
from .exact import det, dot, mat_vec, vadd, vsub
from .polyhedra import Polytope


class LaurentPolynomial:
    """A Laurent polynomial with integer coefficients.

    terms maps exponent tuples (length nvars, entries any sign) to nonzero
    int coefficients.  Instances are immutable in spirit; all operations
    return fresh objects.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms):
        clean = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise DomainError("dimension_mismatch", "exponent length differs from nvars")
            if not isinstance(c, int):
                raise DomainError("bad_coefficient", "coefficients must be integers")
            if c:
                clean[e] = clean.get(e, 0) + c
                if clean[e] == 0:
                    del clean[e]
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars):
        return cls(nvars, {tuple(0 for _ in range(nvars)): 1})

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls(len(exponent), {tuple(exponent): coeff})

    def is_zero(self):
        return not self.terms

    def coefficient(self, exponent):
        return self.terms.get(tuple(exponent), 0)

    def constant_term(self):
        return self.terms.get(tuple(0 for _ in range(self.nvars)), 0)

    def support(self):
        return tuple(sorted(self.terms))

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPolynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __neg__(self):
        return LaurentPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, int):
            return LaurentPolynomial(
                self.nvars, {tuple(0 for _ in range(self.nvars)): other}
            )
        if isinstance(other, LaurentPolynomial):
            if other.nvars != self.nvars:
                raise DomainError("dimension_mismatch", "mixed variable counts")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial(
                self.nvars, {e: c * other for e, c in self.terms.items()}
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = vadd(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise DomainError("bad_exponent", "powers must be nonnegative integers")
        out = LaurentPolynomial.one(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        if not self.terms:
            return "LaurentPolynomial(0)"
        bits = []
        for e in sorted(self.terms):
            bits.append(f"{self.terms[e]}*x^{e}")
        return "LaurentPolynomial(" + " + ".join(bits) + ")"

    def newton_polytope(self):
        if not self.terms:
            raise DomainError("zero_polynomial", "Newton polytope of 0 is undefined")
        return Polytope.from_points(list(self.terms))


def monomial_substitution(f, matrix, shift=None):
    """Apply the exponent change e -> matrix * e + shift.

    matrix must be unimodular so the substitution is invertible on the
    torus; shift defaults to zero.
    """
    rows = tuple(tuple(int(c) for c in row) for row in matrix)
    if len(rows) != f.nvars or any(len(r) != f.nvars for r in rows):
        raise DomainError("dimension_mismatch", "matrix shape differs from nvars")
    if abs(det(rows)) != 1:
        raise DomainError("not_unimodular", "substitution matrix must have det +-1")
    if shift is None:
        shift = tuple(0 for _ in range(f.nvars))
    shift = tuple(int(c) for c in shift)
    out = {}
    for e, c in f.terms.items():
        new = vadd(mat_vec(rows, e), shift)
        out[new] = out.get(new, 0) + c
    return LaurentPolynomial(f.nvars, out)


def _prune(terms, ineqs, eqs, remaining):
    """Drop exponents that cannot reach 0 within `remaining` more factors.

    An exponent e survives when -e could lie in k * Newton for some
    0 <= k <= remaining, tested one constraint at a time (sound, not sharp).
    """
    out = {}
    for e, c in terms.items():
        ok = True
        for a, b in ineqs:
            bound = b if b < 0 else 0
            if -dot(a, e) < remaining * bound:
                ok = False
                break
        if ok:
            for a, b in eqs:
                val = -dot(a, e)
                if b == 0:
                    if val != 0:
                        ok = False
                        break
                else:
                    if val % b != 0 or not (0 <= val // b <= remaining):
                        ok = False
                        break
        if ok:
            out[e] = c
    return out


def classical_period(f, d_max):
    """Constant terms of f^0, f^1, ..., f^d_max.

    Powers are pruned against the Newton polytope: a term is kept only
    while it can still be cancelled back to exponent zero by the remaining
    factors.  The result equals naive powering.
    """
    if f.is_zero():
        raise DomainError("zero_polynomial", "period of the zero polynomial")
    if d_max < 0:
        raise DomainError("bad_exponent", "d_max must be nonnegative")
    newton = f.newton_polytope()
    ineqs = [(a, rhs) for a, rhs in newton.inequalities]
    eqs = [(a, rhs) for a, rhs in newton.equations]
    out = [1]
    power = LaurentPolynomial.one(f.nvars)
    for s in range(1, d_max + 1):
        power = power * f
        power = LaurentPolynomial(f.nvars, _prune(power.terms, ineqs, eqs, d_max - s))
        out.append(power.constant_term())
    return tuple(out)


def classical_period_naive(f, d_max):
    """Reference implementation of the period with no pruning."""
    if f.is_zero():
        raise DomainError("zero_polynomial", "period of the zero polynomial")
    out = [1]
    power = LaurentPolynomial.one(f.nvars)
    for _ in range(d_max):
        power = power * f
        out.append(power.constant_term())
    return tuple(out)


def _exact_divide(num, den):
    """Exact quotient num / den in the Laurent ring, or None.

    den must be nonzero.  Works by lex leading-term elimination; candidate
    quotient exponents are confined to the Minkowski difference of the
    Newton polytopes, which bounds the loop.
    """
    if num.is_zero():
        return LaurentPolynomial.zero(num.nvars)
    region, _ = num.newton_polytope().erode(den.newton_polytope())
    if region is None:
        return None
    allowed = set(region.integral_points())
    den_lead = max(den.terms)
    den_lead_coeff = den.terms[den_lead]
    current = dict(num.terms)
    quotient = {}
    while current:
        e_max = max(current)
        q_exp = vsub(e_max, den_lead)
        if q_exp in quotient or q_exp not in allowed:
            return None
        c = current[e_max]
        if c % den_lead_coeff:
            return None
        q_c = c // den_lead_coeff
        quotient[q_exp] = q_c
        for e, dc in den.terms.items():
            e2 = vadd(q_exp, e)
            current[e2] = current.get(e2, 0) - q_c * dc
            if current[e2] == 0:
                del current[e2]
    return LaurentPolynomial(num.nvars, quotient)


def algebraic_mutation(f, w, factor):
    """Mutate f along the weight w with the given orthogonal factor.

    f splits into graded pieces f_h by the pairing <w, exponent> = h; the
    result is sum over h of f_h * factor^h, where negative h demand exact
    divisibility by factor^|h|.  The inverse mutation uses -w with the same
    factor.
    """
    w = tuple(int(c) for c in w)
    if len(w) != f.nvars:
        raise DomainError("dimension_mismatch", "weight length differs from nvars")
    if not any(w):
        raise DomainError("zero_vector", "mutation weight must be nonzero")
    if factor.nvars != f.nvars:
        raise DomainError("dimension_mismatch", "factor variable count differs")
    if factor.is_zero():
        raise DomainError("zero_polynomial", "mutation factor must be nonzero")
    for e in factor.terms:
        if dot(w, e) != 0:
            raise DomainError(
                "factor_not_orthogonal", f"factor exponent {e} pairs to {dot(w, e)}"
            )
    levels = {}
    for e, c in f.terms.items():
        h = dot(w, e)
        levels.setdefault(h, {})[e] = c
    out = LaurentPolynomial.zero(f.nvars)
    for h in sorted(levels):
        piece = LaurentPolynomial(f.nvars, levels[h])
        if h >= 0:
            out = out + piece * factor ** h
        else:
            quotient = _exact_divide(piece, factor ** (-h))
            if quotient is None:
                raise DomainError(
                    "not_divisible",
                    f"level {h} is not divisible by the factor to the power {-h}",
                )
            out = out + quotient
    return out
