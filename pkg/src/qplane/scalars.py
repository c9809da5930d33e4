"""Exact scalar arithmetic for the two coefficient regimes.

A scalar lives in one of two fields, fixed by a FieldContext:

* root-of-unity regime: the cyclotomic field Q(zeta_ell), represented as
  Q[x] modulo the cyclotomic polynomial Phi_ell, with q = zeta_ell.  The
  coefficient vector has length deg(Phi_ell) and is always reduced, so
  equality is coefficient-wise.
* generic regime: the rational function field Q(q), represented as a
  reduced ratio of polynomials with monic denominator.  Here q is an
  indeterminate and the order of q is treated as infinite.

All coefficients are exact big-integer rationals (fractions.Fraction);
nothing in this module rounds.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, MixedContext, ParseError, ZeroArgument

F0 = Fraction(0)
F1 = Fraction(1)

INFINITE = math.inf  # the "order of q" in the generic regime


# ---------------------------------------------------------------------------
# dense polynomial helpers (little-endian Fraction tuples)
# ---------------------------------------------------------------------------

def _ptrim(c):
    """Drop trailing zero coefficients; the zero polynomial is ()."""
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    out = [F0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [F0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _ptrim(out)


def _pscale(a, c):
    if not c:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    """Exact division with remainder over Q; b must be nonzero."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    q = [F0] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        f = a[k + len(b) - 1] * inv
        if f:
            q[k] = f
            for j, y in enumerate(b):
                a[k + j] -= f * y
    return _ptrim(q), _ptrim(a)


def _pgcd(a, b):
    """Monic gcd over Q."""
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        a = _pscale(a, 1 / a[-1])
    return a


def _pext_inverse(a, mod):
    """Inverse of a modulo mod (mod irreducible, a nonzero mod mod)."""
    # extended Euclid, keeping only the cofactor of a
    r0, r1 = _ptrim(mod), _ptrim(a)
    u0, u1 = (), (F1,)
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _psub(u0, _pmul(q, u1))
    # r0 = gcd = u0*a (mod `mod`); must be a nonzero constant
    if len(r0) != 1:
        raise DivisionByZero("element is not invertible modulo the minimal polynomial")
    return _pscale(u0, 1 / r0[0])


def _peval(c, x):
    """Evaluate at a value supporting + and * (Horner)."""
    acc = None
    for coef in reversed(c):
        acc = coef if acc is None else acc * x + coef
    return acc if acc is not None else F0


def _pstr(c):
    """Render a polynomial in q using the scalar grammar (ascending powers)."""
    if not c:
        return "0"
    parts = []
    for k, coef in enumerate(c):
        if not coef:
            continue
        mag = abs(coef)
        if k == 0:
            body = str(mag)
        else:
            power = "q" if k == 1 else f"q^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not parts:
            parts.append(body if coef > 0 else "-" + body)
        else:
            parts.append((" + " if coef > 0 else " - ") + body)
    return "".join(parts)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(ell: int):
    """Little-endian coefficients of Phi_ell over Q.

    Computed by dividing x^ell - 1 by the cyclotomic polynomials of the
    proper divisors of ell.
    """
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    poly = tuple([F1 * (-1)] + [F0] * (ell - 1) + [F1])  # x^ell - 1
    for d in range(1, ell):
        if ell % d == 0:
            q, r = _pdivmod(poly, cyclotomic_polynomial(d))
            assert not r
            poly = q
    return poly


# ---------------------------------------------------------------------------
# field contexts
# ---------------------------------------------------------------------------

class FieldContext:
    """Fixes the coefficient field: Q(zeta_ell) or Q(q).

    Instances are interned (one object per distinct context), immutable and
    hashable.  ``ctx.ell`` is the multiplicative order of q: a positive
    integer in the root-of-unity regime, math.inf in the generic regime.
    """

    __slots__ = ("regime", "_ell", "_deg", "_phi", "_red")

    def __init__(self, regime, ell=None):
        self.regime = regime
        self._ell = ell
        if regime == "cyclotomic":
            phi = cyclotomic_polynomial(ell)
            deg = len(phi) - 1
            self._phi = phi
            self._deg = deg
            # reduction rows: x^(deg+k) mod Phi for k = 0 .. deg-2
            red = []
            head = _ptrim(phi[:-1])  # x^deg = -head (Phi is monic)
            row = _pneg(head)
            for _ in range(max(deg - 1, 0)):
                red.append(tuple(row) + (F0,) * (deg - len(row)))
                # multiply by x and reduce once more
                row = (F0,) + tuple(row)
                if len(row) > deg:
                    top = row[-1]
                    row = _padd(row[:-1], _pscale(_pneg(head), top))
                row = _ptrim(row)
            self._red = tuple(red)
        else:
            self._phi = None
            self._deg = 0
            self._red = ()

    # -- construction -------------------------------------------------------

    @staticmethod
    @lru_cache(maxsize=None)
    def root_of_unity(ell: int) -> "FieldContext":
        if not isinstance(ell, int) or ell < 1:
            raise ValueError("root_of_unity needs a positive integer ell")
        return FieldContext("cyclotomic", ell)

    @staticmethod
    @lru_cache(maxsize=None)
    def generic() -> "FieldContext":
        return FieldContext("generic_q")

    @staticmethod
    def for_order(ell) -> "FieldContext":
        """Context with q of order ell (math.inf selects the generic field)."""
        if ell == INFINITE:
            return FieldContext.generic()
        return FieldContext.root_of_unity(ell)

    # -- identity -----------------------------------------------------------

    @property
    def ell(self):
        return self._ell if self.regime == "cyclotomic" else INFINITE

    @property
    def is_generic(self) -> bool:
        return self.regime == "generic_q"

    def __eq__(self, other):
        return (
            isinstance(other, FieldContext)
            and self.regime == other.regime
            and self._ell == other._ell
        )

    def __hash__(self):
        return hash((self.regime, self._ell))

    def __repr__(self):
        if self.is_generic:
            return "FieldContext(generic_q)"
        return f"FieldContext(cyclotomic, ell={self._ell})"

    # -- scalar factories ---------------------------------------------------

    def zero(self) -> "QScalar":
        return self.rational(0)

    def one(self) -> "QScalar":
        return self.rational(1)

    def rational(self, value) -> "QScalar":
        c = Fraction(value)
        if self.is_generic:
            return QScalar(self, num=(c,) if c else (), den=(F1,))
        coeffs = [F0] * self._deg
        coeffs[0] = c
        return QScalar(self, coeffs=tuple(coeffs))

    def q(self) -> "QScalar":
        return self.q_power(1)

    def q_power(self, m: int) -> "QScalar":
        """The scalar q^m (m may be negative)."""
        if self.is_generic:
            if m >= 0:
                return QScalar(self, num=(F0,) * m + (F1,), den=(F1,))
            return QScalar(self, num=(F1,), den=(F0,) * (-m) + (F1,))
        m %= self._ell
        if m < self._deg:
            coeffs = [F0] * self._deg
            coeffs[m] = F1
            return QScalar(self, coeffs=tuple(coeffs))
        if self._deg == 1:
            # ell in {1, 2}: q is the rational root of the linear Phi_ell
            return self.rational((-self._phi[0]) ** m)
        out = self.one()
        step = QScalar(self, coeffs=tuple([F0, F1] + [F0] * (self._deg - 2)))
        for _ in range(m):
            out = out * step
        return out

    # -- serialization ------------------------------------------------------

    def to_obj(self):
        if self.is_generic:
            return {"type": "generic_q"}
        return {"type": "cyclotomic", "ell": self._ell}

    @staticmethod
    def from_obj(obj) -> "FieldContext":
        if not isinstance(obj, dict) or "type" not in obj:
            raise ParseError("field context must be an object with a 'type' key")
        kind = obj["type"]
        if kind == "generic_q":
            return FieldContext.generic()
        if kind == "cyclotomic":
            ell = obj.get("ell")
            if not isinstance(ell, int) or ell < 1:
                raise ParseError("cyclotomic context needs a positive integer 'ell'")
            return FieldContext.root_of_unity(ell)
        raise ParseError(f"unknown field context type {kind!r}")


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def _check_ctx(a, b):
    if a.ctx != b.ctx:
        raise MixedContext(f"cannot combine {a.ctx!r} with {b.ctx!r}")


class QScalar:
    """An exact element of the coefficient field of a FieldContext.

    Root-of-unity regime: ``coeffs`` is the reduced coefficient vector of
    length deg(Phi_ell).  Generic regime: ``num``/``den`` is a reduced
    fraction of polynomials with monic denominator.  Values are immutable;
    all arithmetic returns fresh scalars.
    """

    __slots__ = ("ctx", "coeffs", "num", "den")

    def __init__(self, ctx, coeffs=None, num=None, den=None):
        self.ctx = ctx
        if ctx.is_generic:
            self.coeffs = None
            num, den = _ptrim(num), _ptrim(den)
            if not den:
                raise DivisionByZero("zero denominator")
            if not num:
                num, den = (), (F1,)
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lc = den[-1]
                if lc != 1:
                    inv = 1 / lc
                    num = _pscale(num, inv)
                    den = _pscale(den, inv)
            self.num, self.den = num, den
        else:
            assert len(coeffs) == ctx._deg
            self.coeffs = tuple(coeffs)
            self.num = self.den = None

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QScalar):
            _check_ctx(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.rational(other)
        return None

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        if self.ctx.is_generic:
            return not self.num
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def as_rational(self):
        """The value as a Fraction if it is rational, else None."""
        if self.ctx.is_generic:
            if self.den == (F1,) and len(self.num) <= 1:
                return self.num[0] if self.num else F0
            return None
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.ctx.is_generic:
            num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
            return QScalar(self.ctx, num=num, den=_pmul(self.den, o.den))
        return QScalar(self.ctx, coeffs=tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        if self.ctx.is_generic:
            return QScalar(self.ctx, num=_pneg(self.num), den=self.den)
        return QScalar(self.ctx, coeffs=tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.ctx.is_generic:
            return QScalar(self.ctx, num=_pmul(self.num, o.num), den=_pmul(self.den, o.den))
        return QScalar(self.ctx, coeffs=self._cyc_mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def _cyc_mul(self, a, b):
        deg = self.ctx._deg
        if deg == 1:
            return (a[0] * b[0],)
        acc = [F0] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        acc[i + j] += x * y
        red = self.ctx._red
        for k in range(2 * deg - 2, deg - 1, -1):
            top = acc[k]
            if top:
                row = red[k - deg]
                for t, rt in enumerate(row):
                    if rt:
                        acc[t] += top * rt
        return tuple(acc[:deg])

    def inverse(self) -> "QScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.ctx.is_generic:
            return QScalar(self.ctx, num=self.den, den=self.num)
        inv = _pext_inverse(_ptrim(self.coeffs), self.ctx._phi)
        inv = tuple(inv) + (F0,) * (self.ctx._deg - len(inv))
        return QScalar(self.ctx, coeffs=inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        out = self.ctx.one()
        while exponent:
            if exponent & 1:
                out = out * base
            base = base * base
            exponent >>= 1
        return out

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.rational(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        if self.ctx != other.ctx:
            return False
        if self.ctx.is_generic:
            return self.num == other.num and self.den == other.den
        return self.coeffs == other.coeffs

    def __hash__(self):
        r = self.as_rational()
        if r is not None:
            return hash(r)
        if self.ctx.is_generic:
            return hash((self.num, self.den))
        return hash(self.coeffs)

    def __repr__(self):
        return f"<{format_scalar(self)}>"


def _frac_key(c: Fraction):
    # magnitude before sign, so 1 sorts ahead of -1
    return (abs(c), 0 if c >= 0 else 1)


def canonical_key(a: QScalar):
    """A deterministic sort key on scalars of one context.

    Compares the canonical coefficient vectors lexicographically, each
    coefficient by magnitude and then sign; used to fix block orderings and
    class-base choices.
    """
    if a.ctx.is_generic:
        return (tuple(map(_frac_key, a.num)), tuple(map(_frac_key, a.den)))
    return tuple(map(_frac_key, a.coeffs))


def substitute_q_inverse(a: QScalar) -> QScalar:
    """The image of a under the field map q -> 1/q.

    On a root-of-unity context this is the Galois automorphism sending the
    root to its inverse; on the generic context it substitutes 1/q into the
    rational function and renormalizes.
    """
    ctx = a.ctx
    if ctx.is_generic:
        top = max(len(a.num), len(a.den))
        num = tuple(reversed(tuple(a.num) + (F0,) * (top - len(a.num))))
        den = tuple(reversed(tuple(a.den) + (F0,) * (top - len(a.den))))
        return QScalar(ctx, num=num, den=den)
    out = ctx.zero()
    ell = ctx._ell
    for i, c in enumerate(a.coeffs):
        if c:
            out = out + ctx.rational(c) * ctx.q_power((ell - i) % ell)
    return out


# ---------------------------------------------------------------------------
# q-equivalence
# ---------------------------------------------------------------------------

def q_equivalent(a: QScalar, b: QScalar, ctx: FieldContext | None = None):
    """The exponent m with a = b * q^m, or None if no such integer exists.

    Root-of-unity regime: the least nonnegative such m (searched over
    0 <= m < ell).  Generic regime: the quotient a/b must be exactly the
    monomial q^m; the exponent is then unique but may be negative, and the
    signed value is returned so that the relation stays symmetric.
    """
    _check_ctx(a, b)
    if ctx is not None and a.ctx is not ctx:
        raise MixedContext("scalars do not belong to the given context")
    if a.is_zero() or b.is_zero():
        raise ZeroArgument("q_equivalent requires nonzero scalars")
    ratio = a / b
    ctx = a.ctx
    if ctx.is_generic:
        if ratio.den == (F1,) and ratio.num[-1] == 1 and not any(ratio.num[:-1]):
            return len(ratio.num) - 1
        if ratio.num == (F1,) and not any(ratio.den[:-1]):
            # den is monic q^k by canonical form
            return -(len(ratio.den) - 1)
        return None
    power = ctx.one()
    q = ctx.q()
    for m in range(ctx.ell):
        if ratio == power:
            return m
        power = power * q
    return None


# ---------------------------------------------------------------------------
# parsing and formatting
# ---------------------------------------------------------------------------

def format_scalar(a: QScalar) -> str:
    """Canonical string form; parse_scalar inverts it exactly."""
    if a.ctx.is_generic:
        if a.den == (F1,):
            return _pstr(a.num)
        return f"({_pstr(a.num)})/({_pstr(a.den)})"
    return _pstr(_ptrim(a.coeffs))


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a digit", start)
        return int(self.text[start:self.pos])


def _parse_poly_sum(scan: _Scanner, ctx: FieldContext, stop_char="") -> QScalar:
    total = ctx.zero()
    first = True
    while True:
        scan.skip_ws()
        ch = scan.peek()
        if ch == "" or ch == stop_char:
            if first:
                raise ParseError("empty scalar expression", scan.pos)
            return total
        sign = 1
        if ch in "+-":
            if first and ch == "+":
                raise ParseError("unexpected leading '+'", scan.pos)
            sign = -1 if ch == "-" else 1
            scan.pos += 1
            scan.skip_ws()
            ch = scan.peek()
        elif not first:
            raise ParseError("expected '+' or '-' between terms", scan.pos)
        first = False
        # term: rational [* q-power] | q-power
        if ch.isdigit():
            numerator = scan.integer()
            coeff = Fraction(numerator)
            if scan.peek() == "/":
                scan.pos += 1
                denom_pos = scan.pos
                denominator = scan.integer()
                if denominator == 0:
                    raise DivisionByZero(f"zero denominator at position {denom_pos}")
                coeff = Fraction(numerator, denominator)
            exponent = 0
            save = scan.pos
            scan.skip_ws()
            if scan.peek() == "*":
                scan.pos += 1
                scan.skip_ws()
                if scan.peek() != "q":
                    raise ParseError("expected 'q' after '*'", scan.pos)
                scan.pos += 1
                exponent = 1
                if scan.peek() == "^":
                    scan.pos += 1
                    exponent = scan.integer()
            else:
                scan.pos = save
        elif ch == "q":
            scan.pos += 1
            coeff = F1
            exponent = 1
            if scan.peek() == "^":
                scan.pos += 1
                exponent = scan.integer()
        else:
            raise ParseError(f"unexpected character {ch!r}", scan.pos)
        term = ctx.q_power(exponent) * coeff if exponent else ctx.rational(coeff)
        total = total + (term if sign > 0 else -term)


def parse_scalar(text: str, ctx: FieldContext) -> QScalar:
    """Parse the scalar grammar: signed sums of rational, rational*q^k, q^k, q.

    In the generic regime a top-level ratio "(sum)/(sum)" is also accepted,
    which is what format_scalar emits for elements with a nontrivial
    denominator.
    """
    if not isinstance(text, str):
        raise ParseError("scalar input must be a string")
    stripped = text.strip()
    if ctx.is_generic and stripped.startswith("(") and stripped.endswith(")") \
            and ")/(" in stripped:
        head, _, tail = stripped.partition(")/(")
        num_scan = _Scanner(head[1:])
        num = _parse_poly_sum(num_scan, ctx)
        den_scan = _Scanner(tail[:-1])
        den = _parse_poly_sum(den_scan, ctx)
        if den.is_zero():
            raise DivisionByZero("zero denominator polynomial")
        return num / den
    scan = _Scanner(text)
    value = _parse_poly_sum(scan, ctx)
    scan.skip_ws()
    if scan.pos != len(text):
        raise ParseError("trailing characters after scalar", scan.pos)
    return value
