"""Sparse multivariate polynomials over Q or over a number field.

A polynomial in variables x_0..x_{nvars-1} is a dict from exponent tuples to
nonzero coefficients.  Coefficients are Fractions when ``domain`` is None
(the rationals) and FieldElements of ``domain`` otherwise.  Binary
operations insist on equal domains; use :meth:`SparsePoly.over` to lift a
rational polynomial into a field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainMismatch, NotDivisible, NotLinear, ZeroPivotCoefficient
from .numberfield import FieldElement, NumberField, make_field

Exp = tuple  # tuple[int, ...]


def grlex_key(e: Exp):
    return (sum(e), e)


def _domain_name(domain: NumberField | None) -> str:
    return "Q" if domain is None else repr(domain)


class SparsePoly:
    __slots__ = ("nvars", "terms", "domain")

    def __init__(self, nvars: int, terms: Mapping | Iterable = (), domain: NumberField | None = None):
        self.nvars = nvars
        self.domain = domain
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e} for {nvars} variables")
            c = self._coeff(c)
            if e in clean:
                c = clean[e] + c
            clean[e] = c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    def _coeff(self, c):
        if self.domain is None:
            if isinstance(c, FieldElement):
                raise DomainMismatch("field coefficient in a rational polynomial")
            return Fraction(c)
        return self.domain(c)

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, domain=None) -> "SparsePoly":
        return cls(nvars, {}, domain)

    @classmethod
    def const(cls, c, nvars: int, domain=None) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: c}, domain)

    @classmethod
    def var(cls, i: int, nvars: int, domain=None) -> "SparsePoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, domain)

    @classmethod
    def linear(cls, coeffs: Sequence, domain=None) -> "SparsePoly":
        """sum_i coeffs[i] * x_i; the domain defaults to the field of any FieldElement coefficient."""
        n = len(coeffs)
        if domain is None:
            domain = next((c.field for c in coeffs if isinstance(c, FieldElement)), None)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)}, domain)

    @classmethod
    def _raw(cls, nvars, terms, domain) -> "SparsePoly":
        p = cls.__new__(cls)
        p.nvars, p.terms, p.domain = nvars, terms, domain
        return p

    # basic queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exp, object]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exp, object]:
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def coeff(self, e: Sequence[int]):
        e = tuple(e)
        if e in self.terms:
            return self.terms[e]
        return Fraction(0) if self.domain is None else self.domain.zero

    def is_rational(self) -> bool:
        if self.domain is None:
            return True
        return all(c.is_rational() for c in self.terms.values())

    def to_rational(self) -> "SparsePoly":
        """Drop to Q; every coefficient must be rational."""
        if self.domain is None:
            return self
        return SparsePoly._raw(self.nvars, {e: c.to_rational() for e, c in self.terms.items()}, None)

    def over(self, K: NumberField | None) -> "SparsePoly":
        """The same polynomial with coefficients viewed in K (None for Q)."""
        if K == self.domain:
            return self
        if K is None:
            return self.to_rational()
        if self.domain is not None:
            raise DomainMismatch(f"cannot move {_domain_name(self.domain)} to {K}")
        return SparsePoly._raw(self.nvars, {e: K.from_poly([c]) for e, c in self.terms.items()}, K)

    def map_coeffs(self, fn, domain="same") -> "SparsePoly":
        dom = self.domain if domain == "same" else domain
        return SparsePoly(self.nvars, {e: fn(c) for e, c in self.terms.items()}, dom)

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "SparsePoly") -> None:
        if not isinstance(other, SparsePoly):
            raise TypeError("expected a SparsePoly")
        if other.nvars != self.nvars:
            raise DomainMismatch(f"{self.nvars} vs {other.nvars} variables")
        if other.domain != self.domain:
            raise DomainMismatch(f"{_domain_name(self.domain)} vs {_domain_name(other.domain)}")

    def _is_scalar(self, c) -> bool:
        if isinstance(c, (int, Fraction)):
            return True
        return isinstance(c, FieldElement) and self.domain is not None and c.field == self.domain

    def __add__(self, other):
        if self._is_scalar(other):
            other = SparsePoly.const(other, self.nvars, self.domain)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out[e] + c if e in out else c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return SparsePoly._raw(self.nvars, out, self.domain)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.nvars, {e: -c for e, c in self.terms.items()}, self.domain)

    def __sub__(self, other):
        if self._is_scalar(other):
            other = SparsePoly.const(other, self.nvars, self.domain)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._is_scalar(other):
            if other == 0:
                return SparsePoly.zero(self.nvars, self.domain)
            if self.domain is not None and not isinstance(other, FieldElement):
                other = Fraction(other)
            return SparsePoly._raw(self.nvars, {e: c * other for e, c in self.terms.items()}, self.domain)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return SparsePoly._raw(self.nvars, {e: c for e, c in out.items() if c != 0}, self.domain)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        result = SparsePoly.const(1, self.nvars, self.domain)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.const(other, self.nvars, self.domain)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.domain == other.domain and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms)))

    def __repr__(self):
        return f"SparsePoly({self}, domain={_domain_name(self.domain)})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k
            )
            if isinstance(c, FieldElement):
                coef = f"({c})" if not c.is_rational() else str(c.coords[0])
            else:
                coef = str(c)
            if not mono:
                parts.append(coef)
            elif coef == "1":
                parts.append(mono)
            elif coef == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # serialization ------------------------------------------------------------
    def to_json(self) -> dict:
        dom = "Q" if self.domain is None else {"minpoly": self.domain.to_json()}
        terms = []
        for e, c in self.sorted_terms():
            terms.append({"e": list(e), "c": c.to_json() if isinstance(c, FieldElement) else str(c)})
        return {"nvars": self.nvars, "domain": dom, "terms": terms}

    @staticmethod
    def from_json(data: Mapping) -> "SparsePoly":
        dom = data.get("domain", "Q")
        K = None if dom == "Q" else make_field([int(c) for c in dom["minpoly"]])
        terms = []
        for t in data["terms"]:
            c = t["c"]
            if K is None:
                if isinstance(c, list):
                    raise DomainMismatch("coordinate list in a rational polynomial")
                terms.append((t["e"], Fraction(c)))
            else:
                if isinstance(c, list):
                    if len(c) != K.degree:
                        raise ValueError("coordinate list has the wrong length")
                    terms.append((t["e"], FieldElement(K, tuple(Fraction(x) for x in c))))
                else:
                    terms.append((t["e"], K.from_poly([Fraction(c)])))
        return SparsePoly(int(data["nvars"]), terms, K)


# --- operations ---------------------------------------------------------------

def poly_arith(a: SparsePoly, b: SparsePoly, op: str) -> SparsePoly:
    a._check(b)
    return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__}[op](b)


def divide_with_remainder(f: SparsePoly, g: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
    """Multivariate division by a single polynomial in graded-lex order.

    Returns (q, r) with f = q*g + r and no term of r divisible by the
    leading monomial of g.  The remainder is linear in f.
    """
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm, lc = g.leading_term()
    inv = 1 / lc
    rest = [(e, c) for e, c in g.terms.items() if e != lm]
    p = dict(f.terms)
    q: dict = {}
    r: dict = {}
    while p:
        e = max(p, key=grlex_key)
        c = p.pop(e)
        if all(a >= b for a, b in zip(e, lm)):
            qe = tuple(a - b for a, b in zip(e, lm))
            qc = c * inv
            q[qe] = qc
            for ge, gc in rest:
                te = tuple(a + b for a, b in zip(qe, ge))
                v = p.get(te, 0) - qc * gc
                if v == 0:
                    p.pop(te, None)
                else:
                    p[te] = v
        else:
            r[e] = c
    return SparsePoly._raw(f.nvars, q, f.domain), SparsePoly._raw(f.nvars, r, f.domain)


def exact_divide(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """q with f = q*g, or NotDivisible.

    A single polynomial is a Groebner basis of the ideal it generates, so
    the grlex division remainder vanishes exactly when g divides f.
    """
    q, r = divide_with_remainder(f, g)
    if not r.is_zero():
        raise NotDivisible(f"{g} does not divide {f}")
    return q


def _check_linear(l: SparsePoly) -> None:
    if not l.is_zero() and any(sum(e) != 1 for e in l.terms):
        raise NotLinear(f"{l} is not a linear form")


def linear_coeffs(l: SparsePoly) -> list:
    _check_linear(l)
    zero = Fraction(0) if l.domain is None else l.domain.zero
    out = [zero] * l.nvars
    for e, c in l.terms.items():
        out[e.index(1)] = c
    return out


def vandermonde_form(K: NumberField, nvars: int) -> SparsePoly:
    """sum_i a^i x_i for the generator a of K."""
    a = K.gen
    return SparsePoly.linear([a**i for i in range(nvars)], K)


# resultants over Q[x] ---------------------------------------------------------

def _udeg(a: list) -> int:
    return len(a) - 1


def _utrim(a: list) -> list:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    r = list(a)
    db = _udeg(b)
    lb = b[-1]
    e = _udeg(a) - db + 1
    while r and _udeg(r) >= db:
        lr = r[-1]
        k = _udeg(r) - db
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + k] = r[i + k] - lr * c
        _utrim(r)
        e -= 1
    if e > 0:
        scale = lb**e
        r = [c * scale for c in r]
    return r


def resultant(a: list, b: list) -> SparsePoly:
    """Resultant of two univariate polynomials (lists, constant first) whose
    coefficients are SparsePolys over Q; subresultant pseudo-remainder sequence."""
    a, b = _utrim(list(a)), _utrim(list(b))
    if not a or not b:
        raise ValueError("resultant with zero polynomial")
    nv, dom = a[0].nvars, a[0].domain
    one = SparsePoly.const(1, nv, dom)
    g = h = one
    s = 1
    if _udeg(b) == 0:
        return b[0] ** _udeg(a)
    if _udeg(a) == 0:
        return a[0] ** _udeg(b)
    if _udeg(a) < _udeg(b):
        a, b = b, a
        if _udeg(a) % 2 and _udeg(b) % 2:
            s = -s
    while True:
        delta = _udeg(a) - _udeg(b)
        if _udeg(a) % 2 and _udeg(b) % 2:
            s = -s
        r = _prem(a, b)
        a = b
        if not r:
            return SparsePoly.zero(nv, dom)
        div = g * h**delta
        b = [exact_divide(c, div) for c in r]
        g = a[-1]
        h = exact_divide(g**delta, h ** (delta - 1)) if delta >= 1 else h
        if _udeg(b) == 0:
            da = _udeg(a)
            h = exact_divide(b[-1] ** da, h ** (da - 1)) if da >= 1 else h
            return h * s


def norm_form(K: NumberField, l: SparsePoly) -> SparsePoly:
    """N_{K/Q}(l) = Res_t(m(t), L(t, x)) for a linear form l over K."""
    if l.domain != K:
        l = l.over(K)
    _check_linear(l)
    nv = l.nvars
    d = K.degree
    cs = linear_coeffs(l)
    # L(t, x) = sum_k t^k * (sum_j coords_j[k] x_j)
    L = [
        SparsePoly.linear([c.coords[k] for c in cs]) for k in range(d)
    ]
    L = _utrim(L)
    if not L:
        return SparsePoly.zero(nv)
    if len(L) == 1:
        # constant in t: the norm is L_0^d
        return L[0] ** d
    M = [SparsePoly.const(c, nv) for c in K.minpoly]
    res = resultant(M, L)
    assert res.domain is None
    return res


def trace_poly(p: SparsePoly) -> SparsePoly:
    """Coefficientwise trace K -> Q."""
    from .numberfield import trace

    if p.domain is None:
        raise DomainMismatch("trace_poly needs coefficients in a number field")
    return SparsePoly(p.nvars, {e: trace(c) for e, c in p.terms.items()}, None)


def restrict_to_hyperplane(p: SparsePoly, l: SparsePoly, pivot: int) -> SparsePoly:
    """Substitute x_pivot from l = 0; the result drops the pivot variable."""
    if p.nvars != l.nvars:
        raise DomainMismatch("variable count mismatch")
    dom = p.domain or l.domain
    if p.domain is not None and l.domain is not None and p.domain != l.domain:
        raise DomainMismatch("polynomial and linear form live over different fields")
    p, l = p.over(dom), l.over(dom)
    cs = linear_coeffs(l)
    if cs[pivot] == 0:
        raise ZeroPivotCoefficient(f"x{pivot} does not occur in {l}")
    n = p.nvars - 1
    others = [i for i in range(p.nvars) if i != pivot]
    inv = 1 / cs[pivot]
    sub = SparsePoly.linear([-cs[i] * inv for i in others], dom) if n else None
    powers = [SparsePoly.const(1, n, dom)]
    out = SparsePoly.zero(n, dom)
    for e, c in p.terms.items():
        k = e[pivot]
        while len(powers) <= k:
            powers.append(powers[-1] * sub)
        mono = SparsePoly._raw(n, {tuple(e[i] for i in others): c}, dom)
        out = out + mono * powers[k]
    return out


def evaluate(p: SparsePoly, point: Sequence):
    if len(point) != p.nvars:
        raise DomainMismatch("point has the wrong length")
    vals = []
    for v in point:
        if isinstance(v, FieldElement) and v.field != p.domain:
            raise DomainMismatch("point coordinate lives in another field")
        vals.append(v if isinstance(v, FieldElement) else Fraction(v))
    acc = Fraction(0) if p.domain is None else p.domain.zero
    for e, c in p.terms.items():
        t = c
        for v, k in zip(vals, e):
            if k:
                t = t * v**k
        acc = acc + t
    return acc


def parse_poly(text: str, nvars: int, domain: NumberField | None = None) -> SparsePoly:
    """Parse an expression in x0, x1, ... (and ``a`` for the field generator).

    Uses Python's expression grammar with ``^`` accepted for powers; meant
    for tests and the command line, not untrusted input.
    """
    import ast

    tree = ast.parse(text.replace("^", "**"), mode="eval")
    one = SparsePoly.const(1, nvars, domain)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return one * node.value
        if isinstance(node, ast.Name):
            if node.id == "a" and domain is not None:
                return one * domain.gen
            if node.id.startswith("x") and node.id[1:].isdigit():
                return SparsePoly.var(int(node.id[1:]), nvars, domain)
            raise ValueError(f"unknown name {node.id}")
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
        if isinstance(node, ast.BinOp):
            left = ev(node.left)
            if isinstance(node.op, ast.Pow):
                if not isinstance(node.right, ast.Constant):
                    raise ValueError("exponent must be a literal")
                return left ** int(node.right.value)
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.degree() > 0:
                    raise ValueError("division by a non-constant")
                return left * (1 / right.coeff((0,) * nvars))
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")

    return ev(tree)
