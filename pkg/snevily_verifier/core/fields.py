"""
Exact field arithmetic for the two backends over which a group is fully representable.

- ``PrimePowerFieldCtx``: GF(p^d) with d the multiplicative order of p modulo n,
  elements stored as coefficient tuples of length d (constant term first).
- ``CyclotomicFieldCtx``: Q(zeta_n) = Q[x] / Phi_n, elements stored as integer
  numerator tuples of length phi(n) over a common denominator.

Each context carries ``zeta``, an element of exact multiplicative order n. Contexts
are built deterministically (first admissible modulus and root in canonical order)
and cached, so rebuilding one returns the identical object.
"""

import functools
import logging
import math
from abc import ABC, abstractmethod
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import FieldError, ParseError

logger = logging.getLogger(__name__)

_INT64_LIMIT = 2 ** 62


class FieldBackend(Enum):
    """Available field backends"""
    FINITE = "finite"
    CYCLOTOMIC = "cyclotomic"


# ---------------------------------------------------------------------------
# Integer helpers
# ---------------------------------------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> List[int]:
    """Distinct prime divisors of n by trial division"""
    primes = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    return primes


def euler_phi(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result = result // p * (p - 1)
    return result


def multiplicative_order(p: int, n: int) -> int:
    """Least d >= 1 with p^d = 1 mod n (1 when n = 1)"""
    if n == 1:
        return 1
    if math.gcd(p, n) != 1:
        raise FieldError(f"{p} is not invertible modulo {n}")
    d, power = 1, p % n
    while power != 1:
        power = power * p % n
        d += 1
    return d


def admissible_primes(n: int, count: int) -> List[int]:
    """The ``count`` smallest primes not dividing n"""
    primes, p = [], 2
    while len(primes) < count:
        if is_prime(p) and n % p != 0:
            primes.append(p)
        p += 1
    return primes


# ---------------------------------------------------------------------------
# Dense polynomial helpers; polynomials are lists, constant term first
# ---------------------------------------------------------------------------

def _trim(a: List) -> List:
    while a and not a[-1]:
        a.pop()
    return a


def _poly_sub(a: Sequence, b: Sequence, norm: Callable) -> List:
    size = max(len(a), len(b))
    return _trim([norm((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) for i in range(size)])


def _poly_mul(a: Sequence, b: Sequence, norm: Callable) -> List:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([norm(c) for c in out])


def _poly_divmod(a: Sequence, b: Sequence, inv: Callable, norm: Callable) -> Tuple[List, List]:
    """Quotient and remainder of a by a nonzero b"""
    rem = _trim([norm(c) for c in a])
    b = _trim(list(b))
    if not b:
        raise FieldError("polynomial division by zero")
    lead_inv = inv(b[-1])
    quot = [0] * max(len(rem) - len(b) + 1, 0)
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = norm(rem[-1] * lead_inv)
        quot[shift] = c
        for j, y in enumerate(b):
            rem[shift + j] = norm(rem[shift + j] - c * y)
        _trim(rem)
    return _trim(quot), rem


def _poly_gcd(a: Sequence, b: Sequence, inv: Callable, norm: Callable) -> List:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_divmod(a, b, inv, norm)[1]
    return a


def _poly_inverse_mod(a: Sequence, modulus: Sequence, inv: Callable, norm: Callable) -> List:
    """Inverse of a modulo an irreducible modulus, by the extended Euclidean algorithm"""
    r0, r1 = _trim(list(modulus)), _trim(list(a))
    s0, s1 = [], [1]
    while r1:
        q, r = _poly_divmod(r0, r1, inv, norm)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, norm), norm)
    if len(r0) != 1:
        raise FieldError("element is not invertible modulo the field polynomial")
    scale = inv(r0[0])
    return [norm(c * scale) for c in s0]


def _poly_powmod(base: List, exponent: int, modulus: Sequence, inv: Callable, norm: Callable) -> List:
    result = [1]
    base = _poly_divmod(base, modulus, inv, norm)[1]
    while exponent:
        if exponent & 1:
            result = _poly_divmod(_poly_mul(result, base, norm), modulus, inv, norm)[1]
        base = _poly_divmod(_poly_mul(base, base, norm), modulus, inv, norm)[1]
        exponent >>= 1
    return result


def is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: monic f of degree d is irreducible iff gcd(f, x^(p^i) - x) = 1 for i <= d/2"""
    norm = functools.partial(_mod, p=p)
    inv = functools.partial(_inv_mod, p=p)
    f = _trim([c % p for c in f])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    h = [0, 1]
    for _ in range(d // 2):
        h = _poly_powmod(h, p, f, inv, norm)
        g = _poly_gcd(f, _poly_sub(h, [0, 1], norm), inv, norm)
        if len(g) > 1:
            return False
    return True


def _mod(c: int, p: int) -> int:
    return c % p


def _inv_mod(c: int, p: int) -> int:
    return pow(c, -1, p)


def _exact(c):
    return c


def _fraction_inv(c: Fraction) -> Fraction:
    return 1 / Fraction(c)


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Tuple[int, ...]:
    """Phi_n with exact integer coefficients, constant term first"""
    if n < 1:
        raise FieldError(f"cyclotomic polynomial needs n >= 1, got {n}")
    numerator = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            numerator, rem = _poly_divmod(numerator, cyclotomic_poly(d), _exact, _exact)
            if rem:
                raise FieldError(f"Phi_{d} does not divide x^{n} - 1")
    return tuple(int(c) for c in numerator)


# ---------------------------------------------------------------------------
# Elements and contexts
# ---------------------------------------------------------------------------

class FieldElem:
    """An element of a FieldCtx, always reduced modulo the context's polynomial"""

    __slots__ = ('ctx', 'value')

    def __init__(self, ctx: 'FieldCtx', value: tuple):
        self.ctx = ctx
        self.value = value

    @property
    def backend(self) -> FieldBackend:
        return self.ctx.backend

    @property
    def coeffs(self) -> List:
        return self.ctx.coefficients(self.value)

    def is_zero(self) -> bool:
        return self.ctx.value_is_zero(self.value)

    def _coerce(self, other) -> 'FieldElem':
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise FieldError("cannot combine elements of different fields")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ctx.add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ctx.sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ctx.sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ctx.mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ctx.mul(self, self.ctx.inv(other))

    def __neg__(self):
        return self.ctx.neg(self)

    def __pow__(self, exponent: int):
        return self.ctx.pow(self, exponent)

    def inverse(self) -> 'FieldElem':
        return self.ctx.inv(self)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return other.ctx is self.ctx and other.value == self.value

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.value))

    def __str__(self) -> str:
        return format_elem(self)

    def __repr__(self) -> str:
        return f"FieldElem({self.ctx.name}, {format_elem(self)})"


class FieldCtx(ABC):
    """A field containing an element ``zeta`` of exact multiplicative order ``root_order``.

    Arithmetic is available on two levels. ``add``/``mul``/... take and return
    ``FieldElem``; the ``*_values`` methods work on bare value tuples and skip the
    context checks, for inner loops such as elimination.
    """

    backend: FieldBackend
    characteristic: int
    root_order: int
    degree: int

    def __init__(self):
        self.zeta: Optional[FieldElem] = None
        self._zeta_powers: Optional[Tuple[FieldElem, ...]] = None
        self._zeta_products: Optional[Tuple[np.ndarray, Optional[np.ndarray], int]] = None

    @property
    @abstractmethod
    def name(self) -> str:
        """Short human readable name"""

    @abstractmethod
    def _reduce(self, poly: List) -> tuple:
        """Reduce a coefficient list to a canonical value"""

    @abstractmethod
    def _invert(self, value: tuple) -> tuple:
        """Inverse of a nonzero value"""

    @abstractmethod
    def _as_integers(self, value: tuple) -> Tuple[List[int], int]:
        """Integer coefficients of value and a positive denominator dividing all of them out"""

    @abstractmethod
    def _from_integers(self, coeffs: Sequence[int], den: int) -> tuple:
        """Canonical value of (coeffs) / den for a reduced coefficient list"""

    @abstractmethod
    def zero_value(self) -> tuple:
        """Value of the zero element"""

    @abstractmethod
    def add_values(self, x: tuple, y: tuple) -> tuple:
        """x + y on values"""

    @abstractmethod
    def sub_values(self, x: tuple, y: tuple) -> tuple:
        """x - y on values"""

    @abstractmethod
    def neg_value(self, x: tuple) -> tuple:
        """-x on values"""

    @abstractmethod
    def mul_values(self, x: tuple, y: tuple) -> tuple:
        """x * y on values"""

    def value_is_zero(self, value: tuple) -> bool:
        return not any(value)

    def coefficients(self, value: tuple) -> List:
        """Coefficients of a value, constant term first"""
        return list(value)

    def inv_value(self, value: tuple) -> tuple:
        if self.value_is_zero(value):
            raise FieldError("inversion of zero")
        return self._invert(value)

    def element(self, coeffs: Sequence) -> FieldElem:
        """Class of the polynomial with the given coefficients (constant term first)"""
        return FieldElem(self, self._reduce(list(coeffs)))

    def zero(self) -> FieldElem:
        return FieldElem(self, self.zero_value())

    def one(self) -> FieldElem:
        return self.from_int(1)

    def from_int(self, k: int) -> FieldElem:
        """Image of the integer k"""
        return self.element([k])

    def _check(self, *elems: FieldElem) -> None:
        for e in elems:
            if e.ctx is not self:
                raise FieldError(f"element of {e.ctx.name} used in {self.name}")

    def add(self, a: FieldElem, b: FieldElem) -> FieldElem:
        self._check(a, b)
        return FieldElem(self, self.add_values(a.value, b.value))

    def sub(self, a: FieldElem, b: FieldElem) -> FieldElem:
        self._check(a, b)
        return FieldElem(self, self.sub_values(a.value, b.value))

    def neg(self, a: FieldElem) -> FieldElem:
        self._check(a)
        return FieldElem(self, self.neg_value(a.value))

    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        self._check(a, b)
        return FieldElem(self, self.mul_values(a.value, b.value))

    def inv(self, a: FieldElem) -> FieldElem:
        self._check(a)
        return FieldElem(self, self.inv_value(a.value))

    def pow(self, a: FieldElem, exponent: int) -> FieldElem:
        """Square-and-multiply; negative exponents go through the inverse"""
        self._check(a)
        if exponent < 0:
            a, exponent = self.inv(a), -exponent
        result, base = self.one().value, a.value
        while exponent:
            if exponent & 1:
                result = self.mul_values(result, base)
            base = self.mul_values(base, base)
            exponent >>= 1
        return FieldElem(self, result)

    def zeta_pow(self, e: int) -> FieldElem:
        """zeta^e, read from a cached table of the n powers"""
        if self._zeta_powers is None:
            powers, current = [], self.one()
            for _ in range(self.root_order):
                powers.append(current)
                current = current * self.zeta
            self._zeta_powers = tuple(powers)
        return self._zeta_powers[e % self.root_order]

    def _zeta_product_table(self) -> Tuple[np.ndarray, Optional[np.ndarray], int]:
        """Row e * degree + j holds the integer coefficients of zeta^e * x^j.

        Returned as an object array, an int64 copy (None if it would overflow) and the
        largest absolute entry. zeta is integral in both backends, so no row has a
        denominator.
        """
        if self._zeta_products is None:
            basis = [self._reduce([0] * j + [1]) for j in range(self.degree)]
            rows = []
            for e in range(self.root_order):
                power = self.zeta_pow(e).value
                for b in basis:
                    coeffs, den = self._as_integers(self.mul_values(power, b))
                    if den != 1:
                        raise FieldError(f"zeta^{e} is not integral in {self.name}")
                    rows.append(coeffs)
            table = np.array(rows, dtype=object).reshape(self.root_order * self.degree, self.degree)
            bound = max((abs(c) for row in rows for c in row), default=0)
            fast = table.astype(np.int64) if bound < _INT64_LIMIT else None
            self._zeta_products = (table, fast, bound)
        return self._zeta_products

    def zeta_power_sum(self, exponents: Sequence[int]) -> FieldElem:
        """sum over e in exponents of zeta^e"""
        n, d = self.root_order, self.degree
        counts = np.bincount(np.asarray(exponents, dtype=np.int64) % n, minlength=n)
        table, fast, bound = self._zeta_product_table()
        if fast is not None and int(counts.sum()) * bound < _INT64_LIMIT:
            total = counts @ fast[0::d]
        else:
            total = counts.astype(object) @ table[0::d]
        return FieldElem(self, self._from_integers([int(c) for c in total.tolist()], 1))

    def zeta_weighted_sums(self, exponents, values: Sequence[FieldElem], divisor: int = 1) -> List[FieldElem]:
        """Row u of the result is divisor^-1 * sum_g values[g] * zeta^exponents[u][g].

        ``exponents`` is a count x len(values) integer array. Each value is spread over
        the n exponent buckets with one matrix product and the buckets are folded back
        with the table of zeta^e * x^j, all in integers.
        """
        self._check(*values)
        exponents = np.asarray(exponents, dtype=np.int64)
        if exponents.ndim != 2 or exponents.shape[1] != len(values):
            raise FieldError(f"exponent array of shape {exponents.shape} for {len(values)} values")
        if divisor < 1:
            raise FieldError(f"divisor must be a positive integer, got {divisor}")
        n, d = self.root_order, self.degree
        count, width = exponents.shape
        den = functools.reduce(_lcm, (self._as_integers(v.value)[1] for v in values), 1)
        rows = []
        for v in values:
            coeffs, own = self._as_integers(v.value)
            rows.append([c * (den // own) for c in coeffs])
        table, fast, bound = self._zeta_product_table()
        largest = max((abs(c) for row in rows for c in row), default=0)
        exact_int64 = fast is not None and largest * max(width, 1) * bound * d < _INT64_LIMIT
        dtype = np.int64 if exact_int64 else object
        onehot = np.zeros((count, n, width), dtype=dtype)
        onehot[np.arange(count)[:, None], exponents % n, np.arange(width)[None, :]] = 1
        coefficients = np.array(rows, dtype=dtype).reshape(width, d)
        buckets = (onehot @ coefficients).reshape(count, n * d)
        sums = buckets @ (fast if exact_int64 else table)
        return [FieldElem(self, self._from_integers([int(c) for c in row], den * divisor))
                for row in sums.tolist()]

    def has_exact_order(self, e: FieldElem, n: int) -> bool:
        return has_exact_order(self, e, n)

    def describe(self) -> dict:
        return {
            "backend": self.backend.value,
            "characteristic": self.characteristic,
            "root_order": self.root_order,
            "degree": self.degree,
            "zeta": format_elem(self.zeta),
        }


class PrimePowerFieldCtx(FieldCtx):
    """GF(p^d) = GF(p)[x] / (modulus)"""

    backend = FieldBackend.FINITE

    def __init__(self, p: int, n: int):
        super().__init__()
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if n < 1:
            raise FieldError(f"root order must be positive, got {n}")
        if n % p == 0:
            raise FieldError(f"characteristic {p} divides {n}; the group cannot be fully represented")
        self.p = p
        self.characteristic = p
        self.root_order = n
        self.degree = multiplicative_order(p, n)
        self.q = p ** self.degree
        self.modulus = first_irreducible(p, self.degree)
        self._norm = functools.partial(_mod, p=p)
        self._inv_coeff = functools.partial(_inv_mod, p=p)
        self.mul_values = functools.lru_cache(maxsize=1 << 16)(self.mul_values)
        self._invert = functools.lru_cache(maxsize=1 << 12)(self._invert)
        self.zeta = find_root_of_unity(self, n)
        logger.debug("built GF(%d^%d) modulus=%s zeta=%s", p, self.degree, list(self.modulus), self.zeta)

    @property
    def name(self) -> str:
        return f"GF({self.p}^{self.degree})"

    def _reduce(self, poly: List) -> tuple:
        poly = [c % self.p for c in poly]
        d, mod = self.degree, self.modulus
        for i in range(len(poly) - 1, d - 1, -1):
            c = poly[i]
            if c:
                for j in range(d):
                    poly[i - d + j] = (poly[i - d + j] - c * mod[j]) % self.p
                poly[i] = 0
        poly = poly[:d]
        return tuple(poly + [0] * (d - len(poly)))

    def zero_value(self) -> tuple:
        return (0,) * self.degree

    def add_values(self, x: tuple, y: tuple) -> tuple:
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def sub_values(self, x: tuple, y: tuple) -> tuple:
        p = self.p
        return tuple((a - b) % p for a, b in zip(x, y))

    def neg_value(self, x: tuple) -> tuple:
        p = self.p
        return tuple(-a % p for a in x)

    def mul_values(self, x: tuple, y: tuple) -> tuple:
        return self._reduce(_poly_mul(x, y, self._norm))

    def _invert(self, value: tuple) -> tuple:
        return self._reduce(_poly_inverse_mod(list(value), self.modulus, self._inv_coeff, self._norm))

    def _as_integers(self, value: tuple) -> Tuple[List[int], int]:
        return list(value), 1

    def _from_integers(self, coeffs: Sequence[int], den: int) -> tuple:
        if den % self.p == 0:
            raise FieldError(f"{den} is not invertible in {self.name}")
        scale = pow(den, -1, self.p)
        return tuple(c * scale % self.p for c in coeffs)

    def elements(self) -> Iterator[FieldElem]:
        """All q elements in canonical order: coefficient vectors read as base-p integers, constant term lowest"""
        for index in range(self.q):
            yield FieldElem(self, _digits(index, self.p, self.degree))

    def describe(self) -> dict:
        info = super().describe()
        info.update({"p": self.p, "q": self.q, "modulus": list(self.modulus)})
        return info


class CyclotomicFieldCtx(FieldCtx):
    """Q(zeta_n) = Q[x] / Phi_n.

    A value is ``(numerators, denominator)``: an integer tuple of length phi(n) over a
    positive common denominator, in lowest terms. Phi_n is monic with integer
    coefficients, so reduction never leaves the integers.
    """

    backend = FieldBackend.CYCLOTOMIC
    characteristic = 0

    def __init__(self, n: int):
        super().__init__()
        if n < 1:
            raise FieldError(f"root order must be positive, got {n}")
        self.root_order = n
        self.phi = cyclotomic_poly(n)
        self.degree = len(self.phi) - 1
        self._phi_terms = tuple((j, c) for j, c in enumerate(self.phi[:-1]) if c)
        self.mul_values = functools.lru_cache(maxsize=1 << 12)(self.mul_values)
        self.zeta = find_root_of_unity(self, n)

    @property
    def name(self) -> str:
        return f"Q(zeta_{self.root_order})"

    @staticmethod
    def _canonical(nums: List[int], den: int) -> tuple:
        if den < 0:
            nums, den = [-c for c in nums], -den
        if den != 1:
            g = functools.reduce(math.gcd, nums, den)
            if g != 1:
                nums, den = [c // g for c in nums], den // g
        return tuple(nums), den

    def _reduce_integers(self, poly: List[int]) -> List[int]:
        """Remainder of an integer polynomial modulo Phi_n"""
        d = self.degree
        for i in range(len(poly) - 1, d - 1, -1):
            c = poly[i]
            if c:
                base = i - d
                for j, f in self._phi_terms:
                    poly[base + j] -= c * f
        poly = poly[:d]
        return poly + [0] * (d - len(poly))

    def _reduce(self, poly: List) -> tuple:
        coeffs = [Fraction(c) for c in poly]
        den = functools.reduce(_lcm, (c.denominator for c in coeffs), 1)
        nums = [c.numerator * (den // c.denominator) for c in coeffs]
        return self._canonical(self._reduce_integers(nums), den)

    def zero_value(self) -> tuple:
        return (0,) * self.degree, 1

    def value_is_zero(self, value: tuple) -> bool:
        return not any(value[0])

    def coefficients(self, value: tuple) -> List:
        nums, den = value
        return [Fraction(c, den) for c in nums]

    def add_values(self, x: tuple, y: tuple) -> tuple:
        (xn, xd), (yn, yd) = x, y
        if xd == yd:
            return self._canonical([a + b for a, b in zip(xn, yn)], xd)
        return self._canonical([a * yd + b * xd for a, b in zip(xn, yn)], xd * yd)

    def sub_values(self, x: tuple, y: tuple) -> tuple:
        (xn, xd), (yn, yd) = x, y
        if xd == yd:
            return self._canonical([a - b for a, b in zip(xn, yn)], xd)
        return self._canonical([a * yd - b * xd for a, b in zip(xn, yn)], xd * yd)

    def neg_value(self, x: tuple) -> tuple:
        nums, den = x
        return tuple(-c for c in nums), den

    def mul_values(self, x: tuple, y: tuple) -> tuple:
        (xn, xd), (yn, yd) = x, y
        xs = [(i, c) for i, c in enumerate(xn) if c]
        ys = [(j, c) for j, c in enumerate(yn) if c]
        if not xs or not ys:
            return self.zero_value()
        if len(xs) > len(ys):
            xs, ys = ys, xs
        out = [0] * (2 * self.degree - 1)
        for i, a in xs:
            for j, b in ys:
                out[i + j] += a * b
        return self._canonical(self._reduce_integers(out), xd * yd)

    def _invert(self, value: tuple) -> tuple:
        return self._reduce(_poly_inverse_mod(self.coefficients(value), self.phi, _fraction_inv, Fraction))

    def _as_integers(self, value: tuple) -> Tuple[List[int], int]:
        nums, den = value
        return list(nums), den

    def _from_integers(self, coeffs: Sequence[int], den: int) -> tuple:
        return self._canonical(list(coeffs), den)

    def describe(self) -> dict:
        info = super().describe()
        info["phi"] = list(self.phi)
        return info


def _digits(index: int, p: int, d: int) -> tuple:
    out = []
    for _ in range(d):
        index, r = divmod(index, p)
        out.append(r)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def first_irreducible(p: int, d: int) -> Tuple[int, ...]:
    """First monic irreducible degree-d polynomial mod p in canonical order"""
    for index in range(p ** d):
        candidate = list(_digits(index, p, d)) + [1]
        if is_irreducible_mod_p(candidate, p):
            return tuple(candidate)
    raise FieldError(f"no irreducible polynomial of degree {d} mod {p}")


def has_exact_order(ctx: FieldCtx, e: FieldElem, n: int) -> bool:
    """True iff e^n = 1 and e^(n/p) != 1 for every prime p dividing n"""
    if e.is_zero():
        raise FieldError("zero has no multiplicative order")
    one = ctx.one()
    if ctx.pow(e, n) != one:
        return False
    return all(ctx.pow(e, n // p) != one for p in prime_factors(n))


def find_root_of_unity(ctx: FieldCtx, n: int) -> FieldElem:
    """Deterministic element of exact order n"""
    if isinstance(ctx, CyclotomicFieldCtx):
        return ctx.element([0, 1])
    cofactor = (ctx.q - 1) // n
    for e in ctx.elements():
        if e.is_zero():
            continue
        candidate = ctx.pow(e, cofactor)
        if has_exact_order(ctx, candidate, n):
            return candidate
    raise FieldError(f"{ctx.name} has no element of order {n}")


@functools.lru_cache(maxsize=None)
def build_finite_field(p: int, n: int) -> PrimePowerFieldCtx:
    """The smallest GF(p^d) containing an element of order n"""
    return PrimePowerFieldCtx(p, n)


@functools.lru_cache(maxsize=None)
def build_cyclotomic_field(n: int) -> CyclotomicFieldCtx:
    return CyclotomicFieldCtx(n)


def parse_field_spec(text: str) -> Tuple[FieldBackend, Optional[int]]:
    """``gf:p`` or ``cyc``"""
    text = text.strip().lower()
    if text == "cyc":
        return FieldBackend.CYCLOTOMIC, None
    if text.startswith("gf:"):
        try:
            p = int(text[3:])
        except ValueError as e:
            raise ParseError(f"field spec gf:p needs an integer p, got {text!r}") from e
        return FieldBackend.FINITE, p
    raise ParseError(f"field spec must be gf:p or cyc, got {text!r}")


def build_field(text: str, n: int) -> FieldCtx:
    """Build the field named by a field spec for root order n"""
    backend, p = parse_field_spec(text)
    if backend is FieldBackend.CYCLOTOMIC:
        return build_cyclotomic_field(n)
    return build_finite_field(p, n)


def format_field_spec(ctx: FieldCtx) -> str:
    return "cyc" if ctx.backend is FieldBackend.CYCLOTOMIC else f"gf:{ctx.characteristic}"


def format_elem(e: FieldElem) -> str:
    """Coefficient list, constant term first, e.g. ``[1,1]``"""
    return "[" + ",".join(str(c) for c in e.coeffs) + "]"


def parse_elem(ctx: FieldCtx, text: str) -> FieldElem:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"field element must look like [c0,c1,...], got {text!r}")
    body = text[1:-1].strip()
    try:
        coeffs = [Fraction(part.strip()) for part in body.split(",")] if body else []
    except ValueError as e:
        raise ParseError(f"bad coefficient in {text!r}") from e
    if ctx.backend is FieldBackend.FINITE:
        if any(c.denominator != 1 for c in coeffs):
            raise ParseError(f"finite field coefficients must be integers, got {text!r}")
        coeffs = [int(c) for c in coeffs]
    return ctx.element(coeffs)


def random_element(ctx: FieldCtx, rng) -> FieldElem:
    """A pseudorandom element drawn from a numpy Generator"""
    if isinstance(ctx, PrimePowerFieldCtx):
        return ctx.element([int(c) for c in rng.integers(0, ctx.p, size=ctx.degree)])
    return ctx.element([int(c) for c in rng.integers(-3, 4, size=ctx.degree)])
