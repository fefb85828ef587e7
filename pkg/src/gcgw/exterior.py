"""Exact scalars and the complexified exterior algebra of a based vector space.

Everything here is immutable and exact: coefficients are Gaussian rationals
(``a + b i`` with ``a, b`` rational) and multivectors are finite maps from
strictly increasing index tuples to nonzero coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, Mapping, Sequence


class StructuralError(ValueError):
    """Objects living over different spaces were combined."""


class ContractViolation(ValueError):
    """An operation was called outside its precondition."""


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            object.__setattr__(self, "re", re.re)
            object.__setattr__(self, "im", re.im)
            return
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating point complex numbers are not exact")
        return cls(x)

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        from .grammar import format_scalar

        return format_scalar(self)

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Rational)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            n = other.re * other.re + other.im * other.im
            if n == 0:
                raise ZeroDivisionError("division by zero")
            return self * GaussianRational(other.re / n, -other.im / n)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return GaussianRational(other) / self
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (ONE / self) ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gq(x) -> GaussianRational:
    return GaussianRational.coerce(x)


@dataclass(frozen=True)
class BasedSpace:
    """A real vector space with an ordered basis ``labels``.

    The index order of ``labels`` fixes every sign convention downstream.
    """

    labels: tuple

    def __init__(self, labels: Iterable[str] | int):
        if isinstance(labels, int):
            labels = tuple(f"e{j}" for j in range(1, labels + 1))
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"basis labels must be distinct: {labels}")
        for lab in labels:
            if lab == "i":
                raise ValueError("'i' is reserved for the imaginary unit")
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def dual_label(self, j: int) -> str:
        return f"{self.labels[j]}*"


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation that sorts ``seq`` (entries distinct)."""
    inversions = 0
    n = len(seq)
    for a in range(n):
        for b in range(a + 1, n):
            if seq[a] > seq[b]:
                inversions += 1
    return -1 if inversions & 1 else 1


def _merge_sign(a: tuple, b: tuple) -> int:
    # parity of the shuffle that sorts a + b; a, b each increasing
    count = 0
    for x in a:
        for y in b:
            if x > y:
                count += 1
    return -1 if count & 1 else 1


class Multivector:
    """Element of the complexified exterior algebra over ``space``.

    ``terms`` maps strictly increasing index tuples (0-based) to nonzero
    :class:`GaussianRational` coefficients. Mixed degrees are allowed.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space: BasedSpace, terms: Mapping | None = None):
        clean = {}
        if terms:
            for idx, c in terms.items():
                idx = tuple(idx)
                if any(j < 0 or j >= space.dim for j in idx):
                    raise StructuralError(f"index {idx} outside a space of dimension {space.dim}")
                if len(set(idx)) != len(idx):
                    continue
                sign = permutation_sign(idx)
                key = tuple(sorted(idx))
                c = gq(c) * sign
                if key in clean:
                    c = clean[key] + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # constructors
    @classmethod
    def scalar(cls, space: BasedSpace, c=1) -> "Multivector":
        return cls(space, {(): c})

    @classmethod
    def basis(cls, space: BasedSpace, *indices: int, coeff=1) -> "Multivector":
        return cls(space, {tuple(indices): coeff})

    @classmethod
    def one_form(cls, space: BasedSpace, coeffs: Sequence) -> "Multivector":
        if len(coeffs) != space.dim:
            raise StructuralError("coefficient list length does not match the space")
        return cls(space, {(j,): c for j, c in enumerate(coeffs) if c})

    @classmethod
    def parse(cls, space: BasedSpace, text: str) -> "Multivector":
        from .grammar import parse_form

        return parse_form(space, text)

    # basic structure
    def _check(self, other: "Multivector"):
        if not isinstance(other, Multivector):
            raise TypeError(f"expected Multivector, got {type(other).__name__}")
        if other.space != self.space:
            raise StructuralError("multivectors live over different spaces")

    def __repr__(self):
        return f"Multivector({str(self)!r})"

    def __str__(self):
        from .grammar import format_form

        return format_form(self)

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.space == other.space and self.terms == other.terms
        if isinstance(other, (int, Rational, GaussianRational)):
            return self == Multivector.scalar(self.space, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {len(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Degree of a homogeneous element (0 for the zero element)."""
        ds = self.degrees()
        if len(ds) > 1:
            raise ContractViolation(f"mixed-degree multivector has degrees {sorted(ds)}")
        return ds.pop() if ds else 0

    def part(self, r: int) -> "Multivector":
        return Multivector(self.space, {k: c for k, c in self.terms.items() if len(k) == r})

    def coefficient(self, *indices: int) -> GaussianRational:
        key = tuple(indices)
        sign = permutation_sign(key) if len(set(key)) == len(key) else 0
        return self.terms.get(tuple(sorted(key)), ZERO) * sign

    def top(self) -> GaussianRational:
        """Coefficient of ``e_1 ^ ... ^ e_n``."""
        return self.terms.get(tuple(range(self.space.dim)), ZERO)

    # linear structure
    def __add__(self, other):
        if isinstance(other, (int, Rational, GaussianRational)):
            other = Multivector.scalar(self.space, other)
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, ZERO) + c
        return Multivector(self.space, terms)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational, GaussianRational)):
            c = gq(other)
            return Multivector(self.space, {k: v * c for k, v in self.terms.items()})
        if isinstance(other, Multivector):
            return wedge(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, GaussianRational)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        return self * (ONE / gq(other))

    def __xor__(self, other):
        return wedge(self, other)

    def conjugate(self) -> "Multivector":
        return Multivector(self.space, {k: c.conjugate() for k, c in self.terms.items()})

    def real_part(self) -> "Multivector":
        return Multivector(self.space, {k: GaussianRational(c.re) for k, c in self.terms.items()})

    def imag_part(self) -> "Multivector":
        return Multivector(self.space, {k: GaussianRational(c.im) for k, c in self.terms.items()})

    def is_real(self) -> bool:
        return all(c.is_real for c in self.terms.values())

    def coords(self, r: int) -> list:
        """Coefficient vector in the lexicographic basis of degree ``r``."""
        return [self.terms.get(idx, ZERO) for idx in combinations(range(self.space.dim), r)]

    @classmethod
    def from_coords(cls, space: BasedSpace, r: int, coords: Sequence) -> "Multivector":
        basis = list(combinations(range(space.dim), r))
        if len(coords) != len(basis):
            raise StructuralError("coordinate vector has the wrong length")
        return cls(space, {idx: c for idx, c in zip(basis, coords) if c})


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Exterior product; bilinear, associative and graded-commutative."""
    a._check(b)
    out: dict = {}
    for ka, ca in a.terms.items():
        sa = set(ka)
        for kb, cb in b.terms.items():
            if sa.intersection(kb):
                continue
            key = tuple(sorted(ka + kb))
            c = ca * cb
            if _merge_sign(ka, kb) < 0:
                c = -c
            out[key] = out.get(key, ZERO) + c
    return Multivector(a.space, {k: c for k, c in out.items() if c})


def wedge_all(space: BasedSpace, factors: Iterable[Multivector]) -> Multivector:
    result = Multivector.scalar(space)
    for f in factors:
        result = wedge(result, f)
    return result


class GeneralizedVector:
    """An element ``X + xi`` of ``(V + V*) (x) C`` with constant coefficients."""

    __slots__ = ("space", "vector", "form")

    def __init__(self, space: BasedSpace, vector: Sequence = None, form: Sequence = None):
        n = space.dim
        vector = tuple(gq(c) for c in (vector if vector is not None else [0] * n))
        form = tuple(gq(c) for c in (form if form is not None else [0] * n))
        if len(vector) != n or len(form) != n:
            raise StructuralError(f"both parts must have length {n}")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "vector", vector)
        object.__setattr__(self, "form", form)

    def __setattr__(self, name, value):
        raise AttributeError("GeneralizedVector is immutable")

    @classmethod
    def from_coords(cls, space: BasedSpace, coords: Sequence) -> "GeneralizedVector":
        n = space.dim
        return cls(space, coords[:n], coords[n:])

    @classmethod
    def e(cls, space: BasedSpace, j: int) -> "GeneralizedVector":
        """The basis vector ``e_j`` (0-based)."""
        v = [0] * space.dim
        v[j] = 1
        return cls(space, v, None)

    @classmethod
    def dual(cls, space: BasedSpace, j: int) -> "GeneralizedVector":
        """The dual basis covector ``e^j`` (0-based)."""
        v = [0] * space.dim
        v[j] = 1
        return cls(space, None, v)

    @property
    def coords(self) -> tuple:
        return self.vector + self.form

    def form_part(self) -> Multivector:
        return Multivector.one_form(self.space, self.form)

    def _check(self, other):
        if not isinstance(other, GeneralizedVector) or other.space != self.space:
            raise StructuralError("generalized vectors live over different spaces")

    def __eq__(self, other):
        if not isinstance(other, GeneralizedVector):
            return NotImplemented
        return self.space == other.space and self.coords == other.coords

    def __hash__(self):
        return hash((self.space, self.coords))

    def __add__(self, other):
        self._check(other)
        return GeneralizedVector(
            self.space,
            [a + b for a, b in zip(self.vector, other.vector)],
            [a + b for a, b in zip(self.form, other.form)],
        )

    def __neg__(self):
        return GeneralizedVector(self.space, [-a for a in self.vector], [-a for a in self.form])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = gq(c)
        return GeneralizedVector(self.space, [a * c for a in self.vector], [a * c for a in self.form])

    __rmul__ = __mul__

    def conjugate(self):
        return GeneralizedVector(
            self.space, [a.conjugate() for a in self.vector], [a.conjugate() for a in self.form]
        )

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        from .grammar import format_generalized

        return f"GeneralizedVector({format_generalized(self)!r})"


def interior(X, omega: Multivector) -> Multivector:
    """Contraction ``i_X omega`` with a vector (a GeneralizedVector with zero
    form part, or a plain coefficient sequence)."""
    if isinstance(X, GeneralizedVector):
        if X.space != omega.space:
            raise StructuralError("vector and form live over different spaces")
        if any(X.form):
            raise ContractViolation("interior product needs a pure vector")
        coeffs = X.vector
    else:
        coeffs = tuple(gq(c) for c in X)
        if len(coeffs) != omega.space.dim:
            raise StructuralError("vector length does not match the space")
    out: dict = {}
    for key, c in omega.terms.items():
        for pos, j in enumerate(key):
            x = coeffs[j]
            if not x:
                continue
            rest = key[:pos] + key[pos + 1:]
            v = c * x
            if pos & 1:
                v = -v
            out[rest] = out.get(rest, ZERO) + v
    return Multivector(omega.space, {k: v for k, v in out.items() if v})


def clifford_act(v: GeneralizedVector, rho: Multivector) -> Multivector:
    """Spin action ``(X + eta) . rho = i_X rho + eta ^ rho``."""
    if v.space != rho.space:
        raise StructuralError("generalized vector and form live over different spaces")
    X = GeneralizedVector(v.space, v.vector, None)
    return interior(X, rho) + wedge(v.form_part(), rho)


def pairing(u: GeneralizedVector, v: GeneralizedVector) -> GaussianRational:
    """``<X + xi, Y + eta> = (xi(Y) + eta(X)) / 2``."""
    u._check(v)
    s = ZERO
    for a, b in zip(u.form, v.vector):
        s += a * b
    for a, b in zip(v.form, u.vector):
        s += a * b
    return s / 2


def form_exp(beta: Multivector) -> Multivector:
    """``sum_k beta^k / k!`` for an even form with no scalar part."""
    for key in beta.terms:
        if len(key) % 2 or len(key) == 0:
            raise ContractViolation("form_exp needs even-degree components of degree >= 2")
    space = beta.space
    result = Multivector.scalar(space)
    power = Multivector.scalar(space)
    for k in range(1, space.dim // 2 + 1):
        power = wedge(power, beta)
        if power.is_zero():
            break
        result = result + power * Fraction(1, math.factorial(k))
    return result


def linear_substitute(omega: Multivector, images: Sequence[Multivector], target: BasedSpace) -> Multivector:
    """Apply the algebra map sending the generator ``j`` to ``images[j]``.

    ``images`` are 1-forms over ``target``; this is the pullback along a linear
    map written in dual bases.
    """
    if len(images) != omega.space.dim:
        raise StructuralError("need one image per generator")
    for im in images:
        if im.space != target:
            raise StructuralError("images must live over the target space")
    out = Multivector(target)
    for key, c in omega.terms.items():
        out = out + wedge_all(target, (images[j] for j in key)) * c
    return out


def reversal(omega: Multivector) -> Multivector:
    """Main anti-automorphism: degree r picks up ``(-1)^(r(r-1)/2)``."""
    return Multivector(
        omega.space,
        {k: (c if (len(k) * (len(k) - 1) // 2) % 2 == 0 else -c) for k, c in omega.terms.items()},
    )


def mukai_pairing(a: Multivector, b: Multivector) -> GaussianRational:
    """Top-degree coefficient of ``reversal(a) ^ b``."""
    return wedge(reversal(a), b).top()
