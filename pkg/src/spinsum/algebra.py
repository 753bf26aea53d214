"""Finite groups, cyclotomic scalars and super 3-cocycles.

A super 3-cocycle on a finite group G is a pair (alpha, omega) where omega is
a Z_2-valued 2-cocycle and alpha is an invertible 3-cochain satisfying

    alpha(g,h,k) alpha(g,hk,l) alpha(h,k,l)
        = (-1)^{omega(g,h) omega(k,l)} alpha(gh,k,l) alpha(g,h,kl)

>>> c = zn_example_cocycle(2)
>>> check_super3cocycle(c).ok
True
>>> c.alpha(1, 1, 1) == Scalar.root(4, 1)
True
"""
import cmath
import os
import itertools
from fractions import Fraction

import numpy as np

FLOAT_TOL = 1e-9


class AlgebraError(ValueError):
    pass


class GroupValidationError(AlgebraError):
    """Raised when a multiplication table is not a group.

    `axiom` names the first violated axiom and `witness` holds the offending
    elements.
    """

    def __init__(self, axiom, witness, message):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class InvalidCocycleError(AlgebraError):
    pass


class IncompatibleScalarError(AlgebraError):
    pass


# ---------------------------------------------------------------- polynomials
# Integer polynomials are tuples of coefficients, lowest degree first.

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    """Exact division of integer polynomials by a monic divisor."""
    a = list(a)
    b = _trim(b)
    assert b[-1] in (1, -1)
    q = [0] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    return _trim(q), _trim(a)


_PHI_CACHE = {}


def cyclotomic_poly(n):
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first.

    Obtained by dividing x^n - 1 by Phi_d for every proper divisor d of n.

    >>> cyclotomic_poly(4)
    (1, 0, 1)
    >>> cyclotomic_poly(6)
    (1, -1, 1)
    """
    if n < 1:
        raise AlgebraError("root order must be positive")
    if n not in _PHI_CACHE:
        p = [-1] + [0] * (n - 1) + [1]
        for d in range(1, n):
            if n % d == 0:
                p, r = _poly_divmod(p, cyclotomic_poly(d))
                assert not r
        _PHI_CACHE[n] = tuple(p)
    return _PHI_CACHE[n]


def _reduce(coeffs, n):
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        t = c[i]
        if t:
            for j in range(deg + 1):
                c[i - deg + j] -= t * phi[j]
    c = c[:deg] + [0] * max(0, deg - len(c))
    return tuple(c)


def _qpoly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qpoly_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if len(a) < len(b):
        return [Fraction(0)], _trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    return q, _trim(a)


def _qpoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


# --------------------------------------------------------------------- Scalar

def _root_float(k, N):
    """zeta_N ** k as a complex number, exact at multiples of a quarter turn."""
    k %= N
    if (4 * k) % N == 0:
        return (1, 1j, -1, -1j)[4 * k // N]
    return cmath.exp(2j * cmath.pi * k / N)


class Scalar:
    """An element of Z[zeta_N] (exact mode) or of C (float mode).

    Exact elements are integer polynomials in zeta_N reduced modulo the N-th
    cyclotomic polynomial, so equality is coefficient equality.

    >>> i = Scalar.root(4, 1)
    >>> i * i == Scalar.integer(-1, 4)
    True
    >>> i.inv() == Scalar.root(4, 3)
    True
    >>> (Scalar.integer(1, 4) + i) * (Scalar.integer(1, 4) - i)
    Scalar(N=4, (2, 0))
    """

    __slots__ = ("N", "coeffs", "value")

    def __init__(self, coeffs=None, N=None, value=None):
        if N is None:
            self.N = None
            self.coeffs = None
            self.value = complex(value)
        else:
            if N < 1:
                raise AlgebraError("root order must be positive")
            self.N = int(N)
            self.coeffs = _reduce([int(c) for c in coeffs], self.N)
            self.value = None

    @classmethod
    def root(cls, N, k=1):
        """zeta_N ** k."""
        k %= N
        return cls([0] * k + [1], N)

    @classmethod
    def integer(cls, n, N=1):
        return cls([n], N)

    @classmethod
    def from_complex(cls, z):
        return cls(value=z)

    @property
    def exact(self):
        return self.N is not None

    def to_float(self):
        if not self.exact:
            return self.value
        return complex(sum(c * _root_float(i, self.N) for i, c in enumerate(self.coeffs)))

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if self.exact and other.exact and self.N != other.N:
                raise IncompatibleScalarError(
                    "cannot combine roots of unity of order %d and %d" % (self.N, other.N))
            return other
        if isinstance(other, int):
            return Scalar([other], self.N) if self.exact else Scalar(value=other)
        if isinstance(other, (float, complex)):
            return Scalar(value=other)
        return NotImplemented

    def _pair(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return None, None
        if self.exact and other.exact:
            return self, other
        return Scalar(value=self.to_float()), Scalar(value=other.to_float())

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if a.exact:
            return Scalar([x + y for x, y in zip(a.coeffs, b.coeffs)], a.N)
        return Scalar(value=a.value + b.value)

    __radd__ = __add__

    def __neg__(self):
        if self.exact:
            return Scalar([-x for x in self.coeffs], self.N)
        return Scalar(value=-self.value)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if not a.exact:
            return Scalar(value=a.value * b.value)
        out = [0] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    out[i + j] += x * y
        return Scalar(out, a.N)

    __rmul__ = __mul__

    def is_zero(self):
        if self.exact:
            return not any(self.coeffs)
        return abs(self.value) < FLOAT_TOL

    def inv(self):
        """Multiplicative inverse.

        Exact mode needs a unit of Z[zeta_N]; the inverse is found by the
        extended Euclidean algorithm over Q and must come out integral.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverting zero")
        if not self.exact:
            return Scalar(value=1 / self.value)
        phi = list(cyclotomic_poly(self.N))
        r0, r1 = [Fraction(x) for x in phi], _trim([Fraction(x) for x in self.coeffs])
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
        c = r1[0]
        inv = [x / c for x in s1]
        if any(x.denominator != 1 for x in inv):
            raise InvalidCocycleError("%r is not a unit of Z[zeta_%d]" % (self, self.N))
        out = Scalar([int(x) for x in inv], self.N)
        assert out * self == Scalar.integer(1, self.N)
        return out

    def __pow__(self, k):
        base = self if k >= 0 else self.inv()
        k = abs(k)
        out = Scalar.integer(1, self.N) if self.exact else Scalar(value=1)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.exact and other.exact:
            return self.coeffs == other.coeffs
        return abs(self.to_float() - other.to_float()) < FLOAT_TOL

    def __hash__(self):
        if self.exact:
            return hash((self.N, self.coeffs))
        return hash(round(self.value.real, 6)) ^ hash(round(self.value.imag, 6))

    def __repr__(self):
        if self.exact:
            return "Scalar(N=%d, %s)" % (self.N, self.coeffs)
        return "Scalar(%r)" % self.value

    def to_json(self):
        z = self.to_float()
        d = {"value_float": [z.real, z.imag]}
        if self.exact:
            d["value_exact"] = {"root_order": self.N, "coefficients": list(self.coeffs)}
        return d


def scalar_mul(a, b):
    return a * b


def scalar_inv(a):
    return a.inv()


def scalar_eq(a, b):
    return a == b


def sign(e, like):
    """(-1)**e as a scalar compatible with `like`."""
    v = -1 if e % 2 else 1
    return Scalar.integer(v, like.N) if like.exact else Scalar(value=v)


# ---------------------------------------------------------------- FiniteGroup

class FiniteGroup:
    """A finite group given by its multiplication table.

    Elements are the indices 0..order-1 and table[g, h] is the product gh.
    The constructor checks the group axioms.

    >>> G = make_cyclic_group(5)
    >>> G.mul(3, 4)
    2
    >>> G.inverse[2]
    3
    """

    def __init__(self, table, element_names=None, name=None):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupValidationError("shape", None, "table must be a non-empty square array")
        n = t.shape[0]
        bad = np.argwhere((t < 0) | (t >= n))
        if len(bad):
            g, h = map(int, bad[0])
            raise GroupValidationError("closure", (g, h),
                                       "product %d*%d = %d is not an element" % (g, h, t[g, h]))
        ar = np.arange(n)
        ids = [e for e in range(n) if (t[e] == ar).all() and (t[:, e] == ar).all()]
        if not ids:
            raise GroupValidationError("identity", None, "no identity element")
        e = ids[0]
        inverse = []
        for g in range(n):
            cands = [h for h in range(n) if t[g, h] == e and t[h, g] == e]
            if not cands:
                raise GroupValidationError("inverse", (g,), "no inverse for %d" % g)
            inverse.append(cands[0])
        # (gh)k == g(hk) for all triples, vectorised
        lhs = t[t[:, :, None], ar[None, None, :]]
        rhs = t[ar[:, None, None], t[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            g, h, k = map(int, bad[0])
            raise GroupValidationError("associativity", (g, h, k),
                                       "(%d*%d)*%d != %d*(%d*%d)" % (g, h, k, g, h, k))
        t.setflags(write=False)
        self.table = t
        self.order = n
        self.identity = e
        self.inverse = tuple(inverse)
        self.element_names = list(element_names) if element_names else [str(g) for g in range(n)]
        self.name = name or "G%d" % n
        self._rows = [tuple(int(x) for x in row) for row in t]

    def mul(self, g, h):
        return self._rows[g][h]

    def elements(self):
        return range(self.order)

    def power(self, g, p):
        x = self.identity
        for _ in range(p):
            x = self.mul(x, g)
        return x

    def is_abelian(self):
        return bool((self.table == self.table.T).all())

    def __repr__(self):
        return "FiniteGroup(%s, order=%d)" % (self.name, self.order)


def make_cyclic_group(n):
    """Z_n under addition mod n.

    >>> make_cyclic_group(2).mul(1, 1)
    0
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise GroupValidationError("order", (n,), "cyclic group order must be >= 1, got %r" % (n,))
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, name="Z%d" % n)


def make_group_from_table(table, element_names=None, name=None):
    """Validate a multiplication table and return the group.

    >>> make_group_from_table([[0, 1], [1, 1]])
    Traceback (most recent call last):
    ...
    spinsum.algebra.GroupValidationError: no inverse for 1
    """
    return FiniteGroup(table, element_names, name)


def make_symmetric_group(k):
    """S_k acting on {0..k-1}; element 0 is the identity permutation."""
    perms = list(itertools.permutations(range(k)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(a[b[x]] for x in range(k))] for b in perms] for a in perms]
    names = ["".join(map(str, p)) for p in perms]
    return FiniteGroup(table, names, name="S%d" % k)


def direct_product(G, H):
    els = [(a, b) for a in G.elements() for b in H.elements()]
    idx = {x: i for i, x in enumerate(els)}
    table = [[idx[(G.mul(a[0], b[0]), H.mul(a[1], b[1]))] for b in els] for a in els]
    return FiniteGroup(table, ["(%s,%s)" % (G.element_names[a], H.element_names[b]) for a, b in els],
                       name="%sx%s" % (G.name, H.name))


GROUPS = {
    "Z1": lambda: make_cyclic_group(1),
    "S3": lambda: make_symmetric_group(3),
}


def group_by_name(name):
    """Look up 'Z<n>', 'S3' or a product like 'Z2xZ2'."""
    parts = name.split("x")
    if len(parts) > 1:
        G = group_by_name(parts[0])
        for p in parts[1:]:
            G = direct_product(G, group_by_name(p))
        return G
    if name in GROUPS:
        return GROUPS[name]()
    if name[:1] in "Zz" and name[1:].isdigit():
        return make_cyclic_group(int(name[1:]))
    if name[:1] in "Ss" and name[1:].isdigit():
        return make_symmetric_group(int(name[1:]))
    raise AlgebraError("unknown group %r" % name)


# --------------------------------------------------------------- SuperCocycle

class SuperCocycle:
    """The pair (alpha, omega) on a finite group.

    `omega` is an n x n array of 0/1 values and `alpha` an n x n x n nested
    list of Scalars.  Construction does not check the cocycle equations; use
    check_super3cocycle for that.
    """

    def __init__(self, group, omega, alpha, name=None):
        n = group.order
        om = np.asarray(omega, dtype=np.int64) % 2
        if om.shape != (n, n):
            raise InvalidCocycleError("omega must be %dx%d" % (n, n))
        om.setflags(write=False)
        self.group = group
        self.omega_table = om
        self._om = [tuple(int(x) for x in row) for row in om]
        self._al = [[[alpha[a][b][c] for c in range(n)] for b in range(n)] for a in range(n)]
        first = self._al[0][0][0] if n else None
        self.N = first.N if first is not None else 1
        self.exact = first.exact
        for a, b, c in itertools.product(range(n), repeat=3):
            v = self._al[a][b][c]
            if not isinstance(v, Scalar):
                raise InvalidCocycleError("alpha(%d,%d,%d) is not a Scalar" % (a, b, c))
            if v.exact != self.exact or (v.exact and v.N != self.N):
                raise InvalidCocycleError("alpha values must share one scalar ring")
        self.name = name or "cocycle"
        self._inv = None

    def omega(self, g, h):
        return self._om[g][h]

    def alpha(self, g, h, k):
        return self._al[g][h][k]

    def alpha_inv(self, g, h, k):
        if self._inv is None:
            n = self.group.order
            inv = [[[None] * n for _ in range(n)] for _ in range(n)]
            for a, b, c in itertools.product(range(n), repeat=3):
                try:
                    inv[a][b][c] = self._al[a][b][c].inv()
                except (ZeroDivisionError, InvalidCocycleError) as e:
                    raise InvalidCocycleError("alpha(%d,%d,%d) is not invertible: %s" % (a, b, c, e))
            self._inv = inv
        return self._inv[g][h][k]

    def one(self):
        return Scalar.integer(1, self.N) if self.exact else Scalar(value=1)

    def zero(self):
        return Scalar.integer(0, self.N) if self.exact else Scalar(value=0)

    def sign(self, e):
        return sign(e, self.one())

    def __repr__(self):
        return "SuperCocycle(%s on %s)" % (self.name, self.group.name)


class CocycleReport:
    """Result of a cocycle check; `violations` lists failing tuples."""

    def __init__(self, ok, violations, two_cocycle_violations=(), checked=0):
        self.ok = ok
        self.violations = list(violations)
        self.two_cocycle_violations = list(two_cocycle_violations)
        self.checked = checked

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "CocycleReport(ok=%s, violations=%d, 2-cocycle violations=%d)" % (
            self.ok, len(self.violations), len(self.two_cocycle_violations))


def check_2cocycle(omega, G, limit=None):
    """Check omega(g,h)+omega(gh,k) = omega(h,k)+omega(g,hk) mod 2.

    `omega` may be an array or a callable.  Returns a CocycleReport whose
    violations are (g, h, k) triples.

    >>> G = make_cyclic_group(2)
    >>> check_2cocycle([[0, 0], [0, 1]], G).ok
    True
    >>> check_2cocycle([[0, 1], [0, 1]], G).violations[0]
    (0, 0, 1)
    """
    om = omega if callable(omega) else (lambda g, h, _t=np.asarray(omega): int(_t[g][h]))
    bad = []
    for g, h, k in itertools.product(G.elements(), repeat=3):
        if (om(g, h) + om(G.mul(g, h), k) + om(h, k) + om(g, G.mul(h, k))) % 2:
            bad.append((g, h, k))
            if limit and len(bad) >= limit:
                break
    return CocycleReport(not bad, bad, bad, G.order ** 3)


def check_super3cocycle(c, limit=None):
    """Check the super 3-cocycle equation on every 4-tuple, plus the 2-cocycle
    condition on omega.

    Raises InvalidCocycleError if some alpha value is not invertible.
    """
    G = c.group
    n = G.order
    m = G.mul
    for a, b, k in itertools.product(range(n), repeat=3):
        if c.alpha(a, b, k).is_zero():
            raise InvalidCocycleError("alpha(%d,%d,%d) is zero" % (a, b, k))
    two = check_2cocycle(c.omega, G)
    bad = []
    for g, h, k, l in itertools.product(range(n), repeat=4):
        lhs = c.alpha(g, h, k) * c.alpha(g, m(h, k), l) * c.alpha(h, k, l)
        rhs = c.alpha(m(g, h), k, l) * c.alpha(g, h, m(k, l))
        if c.omega(g, h) * c.omega(k, l):
            rhs = -rhs
        if not lhs == rhs:
            bad.append((g, h, k, l))
            if limit and len(bad) >= limit:
                break
    return CocycleReport(not bad and two.ok, bad, two.violations, n ** 4)


def trivial_cocycle(G, N=1):
    """alpha = 1, omega = 0."""
    n = G.order
    one = Scalar.integer(1, N)
    return SuperCocycle(G, np.zeros((n, n), dtype=int),
                        [[[one] * n for _ in range(n)] for _ in range(n)], name="trivial")


def zn_example_cocycle(n):
    """The Z_n super cocycle omega(a,b) = [a+b >= n],
    alpha(a,b,c) = zeta_{2n} ** (omega(a,b) c), in exact mode with N = 2n.

    >>> c = zn_example_cocycle(2)
    >>> c.alpha(1, 0, 1) == 1, c.alpha(0, 1, 1) == 1
    (True, True)
    """
    if n < 1:
        raise GroupValidationError("order", (n,), "n must be >= 1")
    G = make_cyclic_group(n)
    om = [[1 if a + b >= n else 0 for b in range(n)] for a in range(n)]
    al = [[[Scalar.root(2 * n, om[a][b] * c) for c in range(n)] for b in range(n)] for a in range(n)]
    return SuperCocycle(G, om, al, name="zn:%d" % n)


def gauge_transform(c, beta=None, mu=None):
    """Change (alpha, omega) by a coboundary.

    omega' = omega + d(beta) for beta: G -> Z_2, and alpha is multiplied by the
    compensating sign together with d(mu) for mu: G x G -> units (given as a
    nested list of Scalars).  The result is again a super cocycle and yields the
    same state sum on spin diagrams.
    """
    G = c.group
    n = G.order
    m = G.mul
    beta = list(beta) if beta is not None else [0] * n
    om = [[(c.omega(a, b) + beta[a] + beta[b] + beta[m(a, b)]) % 2 for b in range(n)] for a in range(n)]
    al = [[[None] * n for _ in range(n)] for _ in range(n)]
    for a, b, k in itertools.product(range(n), repeat=3):
        e = beta[a] * c.omega(b, k) + c.omega(a, b) * beta[k] + beta[a] * (beta[b] + beta[k] + beta[m(b, k)])
        v = c.sign(e) * c.alpha(a, b, k)
        if mu is not None:
            v = v * mu[b][k] * mu[a][m(b, k)] * mu[m(a, b)][k].inv() * mu[a][b].inv()
        al[a][b][k] = v
    return SuperCocycle(G, om, al, name=c.name + "+gauge")


# ------------------------------------------------------------- proof identities

def r3_sign_identity_violations(c):
    """Tuples (a,b,g,h,k) where the sign identity used for triple-crossing moves
    fails: w(a,b)(w(g,h)+w(h,k)) = w(a,b)(w(gh,k)+w(g,hk)) mod 2."""
    G = c.group
    m = G.mul
    om = c.omega
    bad = []
    for a, b, g, h, k in itertools.product(G.elements(), repeat=5):
        x = om(a, b) * (om(g, h) + om(h, k))
        y = om(a, b) * (om(m(g, h), k) + om(g, m(h, k)))
        if (x - y) % 2:
            bad.append((a, b, g, h, k))
    return bad


def mp_identity_violations(c):
    """Tuples (g,h,k,l) violating the identity behind the 2-3 move:
    alpha(g,h,k) alpha(l,l^-1 g,hk) =
      (-1)^{w(l,l^-1 g) w(h,k)} alpha(l,l^-1 gh,k) alpha(l,l^-1 g,h) alpha(l^-1 g,h,k)."""
    G = c.group
    m = G.mul
    inv = G.inverse
    bad = []
    for g, h, k, l in itertools.product(G.elements(), repeat=4):
        lg = m(inv[l], g)
        lhs = c.alpha(g, h, k) * c.alpha(l, lg, m(h, k))
        rhs = c.sign(c.omega(l, lg) * c.omega(h, k)) * c.alpha(l, m(lg, h), k) * \
            c.alpha(l, lg, h) * c.alpha(lg, h, k)
        if not lhs == rhs:
            bad.append((g, h, k, l))
    return bad


def cp_identity_violations(c):
    """Elements g violating either identity used for the spin CP move:
    alpha(1,g,1) = (-1)^{w(1,g)} and
    alpha(1,g,g^-1)^-1 = (-1)^{w(g,g^-1)w(1,1)+w(1,1)} alpha(1,1,g)."""
    G = c.group
    e = G.identity
    bad = []
    for g in G.elements():
        gi = G.inverse[g]
        first = c.alpha(e, g, e) == c.sign(c.omega(e, g) * c.omega(e, g))
        second = c.alpha_inv(e, g, gi) == c.sign(c.omega(g, gi) * c.omega(e, e) + c.omega(e, e) ** 2) * \
            c.alpha(e, e, g)
        if not (first and second):
            bad.append(g)
    return bad


# ------------------------------------------------------------- table files

class CocycleTableError(AlgebraError):
    """Malformed cocycle table file; `line` locates the problem."""

    def __init__(self, message, line=None):
        super().__init__(("line %d: %s" % (line, message)) if line else message)
        self.line = line


def load_group_table(path):
    """Read a multiplication table: one row of element indices per line."""
    rows = []
    with open(path, encoding="utf-8") as f:
        for raw in f:
            body = raw.split("#", 1)[0].split()
            if body:
                rows.append([int(x) for x in body])
    name = os.path.splitext(os.path.basename(path))[0]
    return make_group_from_table(rows, name=name)


def parse_cocycle_table(text, base_dir=".", name="table"):
    """Read a super cocycle from the line based table format.

    One header line chooses the group: ``group <n>`` (cyclic of order n),
    ``group <name>`` (as group_by_name) or ``table <path>`` (a multiplication
    table file, relative to base_dir).  Then ``omega g h v`` lines and
    ``alpha g h k N c_0 ... c_{N-1}`` lines giving alpha(g,h,k) as the
    integer combination sum c_i zeta_N^i.  Missing omega values are 0 and
    missing alpha values are 1.

    >>> c = parse_cocycle_table('''
    ... group 2
    ... omega 1 1 1
    ... alpha 1 1 1  4 0 1 0 0
    ... ''')
    >>> check_super3cocycle(c).ok, c.alpha(1, 1, 1) == Scalar.root(4)
    (True, True)
    """
    G = None
    om, al = {}, {}
    N = None
    for ln, raw in enumerate(text.splitlines(), 1):
        tok = raw.split("#", 1)[0].split()
        if not tok:
            continue
        kw, args = tok[0], tok[1:]
        try:
            if kw in ("group", "table"):
                if G is not None:
                    raise CocycleTableError("group given twice", ln)
                if len(args) != 1:
                    raise CocycleTableError("%s expects one argument" % kw, ln)
                if kw == "table":
                    G = load_group_table(os.path.join(base_dir, args[0]))
                elif args[0].isdigit():
                    G = make_cyclic_group(int(args[0]))
                else:
                    G = group_by_name(args[0])
                continue
            if G is None:
                raise CocycleTableError("the group must be declared first", ln)
            vals = [int(x) for x in args]
            if kw == "omega":
                if len(vals) != 3:
                    raise CocycleTableError("omega expects g h v", ln)
                g, h, v = vals
                _check_elements(G, (g, h), ln)
                om[(g, h)] = v % 2
            elif kw == "alpha":
                if len(vals) < 5 or len(vals) != 4 + vals[3]:
                    raise CocycleTableError("alpha expects g h k N and N coefficients", ln)
                g, h, k, n = vals[:4]
                _check_elements(G, (g, h, k), ln)
                if N is not None and n != N:
                    raise CocycleTableError("all alpha values must use the same root order", ln)
                N = n
                al[(g, h, k)] = Scalar(vals[4:], n)
            else:
                raise CocycleTableError("unknown keyword %r" % kw, ln)
        except ValueError as e:
            if isinstance(e, AlgebraError):
                if isinstance(e, CocycleTableError):
                    raise
                raise CocycleTableError(str(e), ln) from None
            raise CocycleTableError("expected integers", ln) from None
    if G is None:
        raise CocycleTableError("no group declared")
    N = N or 1
    n = G.order
    one = Scalar.integer(1, N)
    omega = [[om.get((a, b), 0) for b in range(n)] for a in range(n)]
    alpha = [[[al.get((a, b, k), one) for k in range(n)] for b in range(n)] for a in range(n)]
    return SuperCocycle(G, omega, alpha, name=name)


def _check_elements(G, xs, ln):
    for x in xs:
        if not 0 <= x < G.order:
            raise CocycleTableError("%d is not an element of %s" % (x, G.name), ln)


def load_cocycle_table(path):
    with open(path, encoding="utf-8") as f:
        text = f.read()
    name = "table:" + os.path.basename(path)
    return parse_cocycle_table(text, os.path.dirname(os.path.abspath(path)), name)


def format_cocycle_table(c, group_line=None):
    """Write an exact cocycle in the table format (non-default entries only)."""
    if not c.exact:
        raise CocycleTableError("only exact cocycles can be written")
    G = c.group
    out = [group_line or "group %s" % G.name]
    for a, b in itertools.product(G.elements(), repeat=2):
        if c.omega(a, b):
            out.append("omega %d %d 1" % (a, b))
    one = c.one()
    for a, b, k in itertools.product(G.elements(), repeat=3):
        v = c.alpha(a, b, k)
        if not v == one:
            cs = list(v.coeffs) + [0] * (c.N - len(v.coeffs))
            out.append("alpha %d %d %d %d %s" % (a, b, k, c.N, " ".join(map(str, cs))))
    return "\n".join(out) + "\n"
