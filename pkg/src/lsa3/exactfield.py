"""Exact scalar fields: GF(p^k) and the rationals.

Arrays over a field are plain numpy arrays. Finite-field elements are encoded
as integers ``a_0 + a_1 p + ... + a_{k-1} p^{k-1}`` (the residue coefficients
of a polynomial in the generator ``t``), so prime-field arrays are just
residues mod p. Rational arrays are object arrays of :class:`fractions.Fraction`.
Every algorithm in the package goes through the :class:`Field` methods, never
through raw numpy arithmetic, so the same code runs over every backend.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property

import numpy as np

__all__ = [
    "FieldError",
    "FieldSpec",
    "Field",
    "FieldScalar",
    "make_field",
    "GF",
    "QQ",
    "IntegerRing",
    "ZZ",
]

# float32 BLAS is exact while every partial sum stays below 2**24
_F32_LIMIT = 2**24
_F64_LIMIT = 2**53

_denominator = np.frompyfunc(lambda x: x.denominator, 1, 1)
_numerator = np.frompyfunc(lambda x: x.numerator, 1, 1)
_as_fraction = np.frompyfunc(Fraction, 2, 1)


def _integer_form(A):
    """``(Z, D)`` with integer object array ``Z = D * A``."""
    dens = _denominator(A)
    D = int(np.lcm.reduce(dens.ravel())) if A.size else 1
    nums = _numerator(A)
    return (nums if D == 1 else nums * (D // dens)), D


def _rational_matmul(A, B):
    """Exact product of rational arrays through integers (float BLAS when bounds allow)."""
    Za, Da = _integer_form(A)
    Zb, Db = _integer_form(B)
    ma = max(abs(int(x)) for x in Za.ravel())
    mb = max(abs(int(x)) for x in Zb.ravel())
    if A.shape[-1] * ma * mb < _F64_LIMIT:
        P = np.rint(np.matmul(Za.astype(np.float64), Zb.astype(np.float64))).astype(np.int64).astype(object)
    else:
        P = np.matmul(Za, Zb)
    if Da * Db == 1:
        return _as_fraction(P, 1).astype(object)
    return _as_fraction(P, Da * Db).astype(object)


class FieldError(ValueError):
    """Malformed field data or an illegal scalar operation."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _poly_has_root_factor(modulus, p):
    """True if the monic polynomial has a factor of degree <= deg/2 over GF(p)."""
    k = len(modulus) - 1
    for deg in range(1, k // 2 + 1):
        # every monic polynomial of this degree, tried as a divisor
        for tail in itertools.product(range(p), repeat=deg):
            divisor = list(tail) + [1]
            rem = list(modulus)
            for shift in range(k - deg, -1, -1):
                c = rem[shift + deg] % p
                if c:
                    for i, d in enumerate(divisor):
                        rem[shift + i] = (rem[shift + i] - c * d) % p
            if not any(r % p for r in rem[:deg]):
                return True
    return False


@dataclass(frozen=True)
class FieldSpec:
    """Serializable description of a field.

    ``kind`` is ``"gf"`` or ``"q"``. ``modulus`` lists the coefficients of a
    monic irreducible polynomial over GF(p), constant term first.
    """

    kind: str = "gf"
    p: int = 3
    k: int = 1
    modulus: tuple = dc_field(default=())

    def __post_init__(self):
        if self.kind == "q":
            object.__setattr__(self, "p", 0)
            object.__setattr__(self, "k", 1)
            object.__setattr__(self, "modulus", ())
            return
        if self.kind != "gf":
            raise FieldError(f"unknown field kind {self.kind!r}")
        if not _is_prime(self.p):
            raise FieldError(f"p={self.p} is not prime")
        if self.k < 1:
            raise FieldError("extension degree must be >= 1")
        mod = tuple(int(c) % self.p for c in self.modulus)
        if not mod:
            mod = _default_modulus(self.p, self.k)
        if len(mod) != self.k + 1 or mod[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {self.k}")
        if self.k > 1 and (mod[0] == 0 or _poly_has_root_factor(mod, self.p)):
            raise FieldError(f"modulus {list(mod)} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)

    def to_json(self) -> dict:
        if self.kind == "q":
            return {"kind": "q"}
        return {"kind": "gf", "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "kind" not in obj:
            raise FieldError(f"bad field spec {obj!r}")
        if obj["kind"] == "q":
            return cls(kind="q")
        return cls(kind="gf", p=int(obj.get("p", 3)), k=int(obj.get("k", 1)),
                   modulus=tuple(obj.get("modulus", ())))

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Short names used on the command line: ``gf3``, ``gf9``, ``q`` or JSON."""
        t = text.strip().lower()
        if t in ("q", "qq", "rational", "rationals"):
            return cls(kind="q")
        if t.startswith("gf"):
            order = int(t[2:])
            for p in range(2, order + 1):
                if order % p == 0:
                    break
            k = 0
            n = order
            while n % p == 0:
                n //= p
                k += 1
            if n != 1:
                raise FieldError(f"{order} is not a prime power")
            return cls(kind="gf", p=p, k=k)
        return cls.from_json(text)


def _default_modulus(p, k):
    if k == 1:
        return (0, 1)
    if p == 3 and k == 2:
        return (1, 0, 1)  # t^2 + 1
    for tail in itertools.product(range(p), repeat=k):
        mod = tuple(tail) + (1,)
        if mod[0] and not _poly_has_root_factor(mod, p):
            return mod
    raise FieldError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """A handle for exact arithmetic on scalars and numpy arrays."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.is_finite = spec.kind == "gf"
        self.p = spec.p
        self.k = spec.k
        self.characteristic = spec.p
        if self.is_finite:
            self.order = spec.p**spec.k
            self.dtype = np.int64
            if self.k > 1:
                self._build_tables()
        else:
            self.order = None
            self.dtype = object

    def __repr__(self):
        if not self.is_finite:
            return "Field(QQ)"
        if self.k == 1:
            return f"Field(GF({self.p}))"
        return f"Field(GF({self.p}^{self.k}), modulus={list(self.spec.modulus)})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    # -- extension-field tables -------------------------------------------
    def _digits(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        return [(codes // self.p**i) % self.p for i in range(self.k)]

    def _undigits(self, digits):
        out = np.zeros_like(digits[0])
        for i, d in enumerate(digits):
            out = out + (d % self.p) * self.p**i
        return out

    def _poly_reduce(self, coeffs):
        """Reduce digit arrays of length 2k-1 modulo the field polynomial."""
        coeffs = list(coeffs)
        mod = self.spec.modulus
        k = self.k
        for s in range(len(coeffs) - 1, k - 1, -1):
            c = coeffs[s]
            for l in range(k):
                coeffs[s - k + l] = coeffs[s - k + l] - c * mod[l]
        return [c % self.p for c in coeffs[:k]]

    def _build_tables(self):
        q = self.order
        a = np.arange(q).repeat(q).reshape(q, q)
        b = a.T.copy()
        da, db = self._digits(a), self._digits(b)
        self._add = self._undigits([(x + y) % self.p for x, y in zip(da, db)])
        prod = [np.zeros_like(a) for _ in range(2 * self.k - 1)]
        for i in range(self.k):
            for j in range(self.k):
                prod[i + j] = prod[i + j] + da[i] * db[j]
        self._mul = self._undigits(self._poly_reduce(prod))
        self._neg = self._undigits([(-x) % self.p for x in self._digits(np.arange(q))])
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.nonzero(self._mul[x] == 1)[0][0])
        self._inv = inv

    # -- construction -------------------------------------------------------
    def zeros(self, shape):
        if self.is_finite:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def ones(self, shape):
        return self.from_int(np.ones(shape, dtype=np.int64))

    def eye(self, n):
        return self.from_int(np.eye(n, dtype=np.int64))

    def from_int(self, x):
        """Image of integers (scalars or arrays) under the canonical map Z -> F."""
        if self.is_finite:
            if isinstance(x, np.ndarray) and x.dtype == object:
                x = np.vectorize(lambda v: int(v) % self.p, otypes=[np.int64])(x)
            return np.asarray(x, dtype=np.int64) % self.p
        if isinstance(x, np.ndarray):
            if x.dtype == object:
                return np.vectorize(Fraction, otypes=[object])(x) if x.size else x.copy()
            return np.vectorize(lambda v: Fraction(int(v)), otypes=[object])(x) if x.size \
                else np.empty(x.shape, dtype=object)
        return Fraction(x)

    def from_fraction(self, num, den=1):
        """Image of ``num/den``; raises if ``den`` is not invertible in the field."""
        if not self.is_finite:
            return Fraction(int(num), int(den))
        den = int(den) % self.p
        if den == 0:
            raise FieldError(f"denominator divisible by the characteristic {self.p}")
        return (int(num) * pow(den, -1, self.p)) % self.p

    def from_fractions(self, arr):
        """Elementwise image of an object array of rationals."""
        arr = np.asarray(arr, dtype=object)
        if not self.is_finite:
            return np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr.copy()
        flat = [self.from_fraction(int(Fraction(v).numerator), int(Fraction(v).denominator))
                for v in arr.ravel()]
        return np.array(flat, dtype=np.int64).reshape(arr.shape)

    def to_int_lift(self, a):
        """Integer lift of prime-field codes (symmetric residues); None if impossible."""
        if not self.is_finite:
            a = np.asarray(a, dtype=object)
            if all(Fraction(v).denominator == 1 for v in a.ravel()):
                return np.array([int(v) for v in a.ravel()], dtype=np.int64).reshape(a.shape)
            return None
        a = np.asarray(a, dtype=np.int64)
        if self.k > 1 and np.any(a >= self.p):
            return None
        half = self.p // 2
        return np.where(a > half, a - self.p, a)

    def random(self, shape, rng):
        if self.is_finite:
            return rng.integers(0, self.order, size=shape, dtype=np.int64)
        ints = rng.integers(-5, 6, size=shape)
        dens = rng.integers(1, 4, size=shape)
        out = np.empty(shape, dtype=object)
        for idx in np.ndindex(*np.shape(ints)):
            out[idx] = Fraction(int(ints[idx]), int(dens[idx]))
        return out

    def elements(self):
        if not self.is_finite:
            raise FieldError("the rationals cannot be enumerated")
        return list(range(self.order))

    @cached_property
    def generator(self):
        """The class of ``t`` (a primitive element of GF(p) when k = 1)."""
        if not self.is_finite:
            raise FieldError("no generator for QQ")
        if self.k > 1:
            return self.p
        for g in range(1, self.p):
            if len({pow(g, e, self.p) for e in range(self.p - 1)}) == self.p - 1:
                return g
        return 1

    # -- elementwise arithmetic ------------------------------------------------
    def add(self, a, b):
        if not self.is_finite:
            return np.add(a, b) if isinstance(a, np.ndarray) or isinstance(b, np.ndarray) else a + b
        if self.k == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return self._add[a, b]

    def neg(self, a):
        if not self.is_finite:
            return -a
        if self.k == 1:
            return (-np.asarray(a)) % self.p
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not self.is_finite:
            return np.multiply(a, b) if isinstance(a, np.ndarray) or isinstance(b, np.ndarray) else a * b
        if self.k == 1:
            return (np.asarray(a) * np.asarray(b)) % self.p
        return self._mul[a, b]

    def inv(self, a):
        if self.is_zero_scalar(a):
            raise FieldError("inverse of zero")
        if not self.is_finite:
            return 1 / Fraction(a)
        if self.k == 1:
            return pow(int(a), -1, self.p)
        return int(self._inv[int(a)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    @property
    def zero(self):
        return 0 if self.is_finite else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_finite else Fraction(1)

    def is_zero_scalar(self, a) -> bool:
        return a == 0

    def is_zero(self, a) -> np.ndarray:
        if self.is_finite:
            return np.asarray(a) == 0
        return np.vectorize(lambda v: v == 0, otypes=[bool])(a) if np.size(a) else \
            np.zeros(np.shape(a), dtype=bool)

    def all_zero(self, a) -> bool:
        if self.is_finite:
            return not np.any(a)
        return all(v == 0 for v in np.asarray(a, dtype=object).ravel())

    def equal(self, a, b) -> bool:
        return self.all_zero(self.sub(a, b))

    def sum(self, a, axis=None):
        if self.is_finite and self.k == 1:
            return np.sum(a, axis=axis) % self.p
        if self.is_finite:
            a = np.asarray(a)
            if axis is None:
                a = a.ravel()
                axis = 0
            a = np.moveaxis(a, axis, 0)
            out = self.zeros(a.shape[1:])
            for row in a:
                out = self.add(out, row)
            return out
        return np.sum(a, axis=axis) if axis is not None else sum(np.asarray(a).ravel(), Fraction(0))

    # -- matrix products ---------------------------------------------------------
    def _blas(self, A, B):
        """Exact integer matrix product of small non-negative residues via BLAS."""
        depth = A.shape[-1] if A.ndim else 1
        bound = depth * (self.p - 1) ** 2
        if bound < _F32_LIMIT:
            return np.rint(np.matmul(A.astype(np.float32), B.astype(np.float32))).astype(np.int64)
        if bound < _F64_LIMIT:
            return np.rint(np.matmul(A.astype(np.float64), B.astype(np.float64))).astype(np.int64)
        return np.matmul(A.astype(object), B.astype(object))  # pragma: no cover

    def matmul(self, A, B):
        A = np.asarray(A, dtype=self.dtype)
        B = np.asarray(B, dtype=self.dtype)
        if not self.is_finite:
            if A.ndim == 1 and B.ndim == 1:
                return sum((x * y for x, y in zip(A, B)), Fraction(0))
            if A.ndim >= 2 and B.ndim >= 2 and A.size and B.size:
                return _rational_matmul(A, B)
            out = np.matmul(A, B)
            if isinstance(out, np.ndarray) and out.dtype == object:
                # np.matmul seeds empty sums with int 0
                return self.from_fractions(out) if out.size else self.zeros(out.shape)
            return Fraction(out)
        if self.k == 1:
            return self._blas(A, B) % self.p
        da, db = self._digits(A), self._digits(B)
        prod = [None] * (2 * self.k - 1)
        for i in range(self.k):
            for j in range(self.k):
                t = self._blas(da[i], db[j])
                prod[i + j] = t if prod[i + j] is None else prod[i + j] + t
        return self._undigits(self._poly_reduce(prod))

    def scale(self, c, A):
        return self.mul(c, A)

    def matpow(self, A, e: int):
        out = self.eye(A.shape[0])
        for _ in range(e):
            out = self.matmul(out, A)
        return out

    # -- scalars -------------------------------------------------------------
    def __call__(self, value) -> "FieldScalar":
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise FieldError("scalar from a different field")
            return value
        if isinstance(value, Fraction) or not self.is_finite:
            v = Fraction(value)
            return FieldScalar(self, self.from_fraction(v.numerator, v.denominator))
        return FieldScalar(self, int(self.from_int(int(value))))

    def element(self, code) -> "FieldScalar":
        """Scalar from its internal code (finite fields) or value (QQ)."""
        return FieldScalar(self, code if not self.is_finite else int(code) % self.order)

    def fmt(self, a) -> str:
        if not self.is_finite:
            return str(a)
        if self.k == 1:
            return str(int(a))
        digs = [int(d) for d in self._digits(np.array(a))]
        terms = []
        for i, d in enumerate(digs):
            if d:
                terms.append(str(d) if i == 0 else (f"{d}*t" if i == 1 else f"{d}*t^{i}")
                             .replace("1*", ""))
        return "+".join(reversed(terms)) or "0"

    def parse_scalar(self, text: str):
        """Inverse of :meth:`fmt` for dump files."""
        text = text.strip()
        if not self.is_finite:
            return Fraction(text)
        if self.k == 1:
            return int(text) % self.p
        val = 0
        for term in text.split("+"):
            term = term.strip()
            if "t" not in term:
                val = self.add(val, int(term) % self.p)
                continue
            coef, _, rest = term.partition("t")
            coef = coef.rstrip("*") or "1"
            e = int(rest[1:]) if rest.startswith("^") else 1
            val = self.add(val, self.mul(int(coef) % self.p, self.pow(self.p, e)))
        return int(val)


@dataclass(frozen=True)
class FieldScalar:
    """An immutable field element with operator overloading."""

    field: Field
    value: object

    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise FieldError("mixed-field operands")
            return other.value
        if isinstance(other, (int, Fraction, np.integer)):
            return self.field(other).value
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldScalar(self.field, _py(self.field.add(self.value, o)))

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar(self.field, _py(self.field.neg(self.value)))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldScalar(self.field, _py(self.field.sub(self.value, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldScalar(self.field, _py(self.field.mul(self.value, o)))

    __rmul__ = __mul__

    def inv(self):
        return FieldScalar(self.field, _py(self.field.inv(self.value)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FieldScalar(self.field, o).inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return FieldScalar(self.field, _py(self.field.pow(self.value, e)))

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.field == other.field and self.value == other.value
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.value == o

    def __hash__(self):
        return hash((self.field.spec, self.value))

    def __bool__(self):
        return not self.field.is_zero_scalar(self.value)

    def __repr__(self):
        return self.field.fmt(self.value)


def _py(v):
    if isinstance(v, np.ndarray):
        v = v.item()
    if isinstance(v, np.integer):
        return int(v)
    return v


def make_field(spec: FieldSpec | dict | str | None = None) -> Field:
    """Field handle from a spec, a JSON dict, or a short name like ``"gf9"``."""
    if spec is None:
        spec = FieldSpec()
    elif isinstance(spec, dict):
        spec = FieldSpec.from_json(spec)
    elif isinstance(spec, str):
        spec = FieldSpec.parse(spec)
    return Field(spec)


def GF(p: int, k: int = 1, modulus=()) -> Field:
    return Field(FieldSpec(kind="gf", p=p, k=k, modulus=tuple(modulus)))


def QQ() -> Field:
    return Field(FieldSpec(kind="q"))


class IntegerRing:
    """The integers with the :class:`Field` array interface (no division).

    Used to build the integral forms of the algebras before reducing them into
    a field; entries stay small, so int64 is exact for every shape built here.
    """

    is_finite = False
    characteristic = 0
    p = 0
    k = 1
    dtype = np.int64
    zero = 0
    one = 1

    def __repr__(self):
        return "IntegerRing()"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def ones(self, shape):
        return np.ones(shape, dtype=np.int64)

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def from_int(self, x):
        return np.asarray(x, dtype=np.int64) if isinstance(x, np.ndarray) else int(x)

    def add(self, a, b):
        return np.add(a, b)

    def neg(self, a):
        return np.negative(a)

    def sub(self, a, b):
        return np.subtract(a, b)

    def mul(self, a, b):
        return np.multiply(a, b)

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        bound = (A.shape[-1] if A.ndim else 1) * int(np.abs(A).max(initial=0)) * \
            int(np.abs(B).max(initial=0))
        if bound < _F64_LIMIT:
            return np.rint(np.matmul(A.astype(np.float64), B.astype(np.float64))).astype(np.int64)
        return np.matmul(A, B)  # pragma: no cover

    def is_zero(self, a):
        return np.asarray(a) == 0

    def is_zero_scalar(self, a):
        return a == 0

    def all_zero(self, a):
        return not np.any(a)

    def equal(self, a, b):
        return bool(np.array_equal(np.asarray(a), np.asarray(b)))

    def sum(self, a, axis=None):
        return np.sum(a, axis=axis)

    def inv(self, a):
        if a in (1, -1):
            return int(a)
        raise FieldError(f"{a} is not a unit in ZZ")

    def random(self, shape, rng):
        return rng.integers(-3, 4, size=shape, dtype=np.int64)


ZZ = IntegerRing()
