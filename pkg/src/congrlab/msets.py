"""Structured subsets of F_p^* and their multiplicative combinations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from .arith import PrimeContext, mod_inverse, mult_order
from .errors import ContextMismatch, EmptySet, InvalidSpec, NotInvertible, SliceTooLarge


@dataclass(frozen=True)
class Interval:
    """Residues of the integers L+1, ..., L+H."""

    H: int
    L: int = 0


@dataclass(frozen=True)
class Subgroup:
    d: int


@dataclass(frozen=True)
class GeomProg:
    """1, b, b^2, ..., b^(N-1); ``base=None`` means the primitive root."""

    N: int
    base: int | None = None


@dataclass(frozen=True)
class Explicit:
    elements: tuple[int, ...]

    def __init__(self, elements: Iterable[int]):
        object.__setattr__(self, "elements", tuple(int(e) for e in elements))


SetSpec = Union[Interval, Subgroup, GeomProg, Explicit]


class ResidueSet:
    """Immutable subset of F_p held as a dense boolean indicator."""

    __slots__ = ("ctx", "mask", "cardinality")

    def __init__(self, ctx: PrimeContext, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (ctx.p,):
            raise ValueError("indicator length must equal p")
        mask = mask.copy()
        mask.flags.writeable = False
        self.ctx = ctx
        self.mask = mask
        self.cardinality = int(mask.sum())

    @classmethod
    def from_elements(cls, ctx: PrimeContext, elements) -> ResidueSet:
        mask = np.zeros(ctx.p, dtype=bool)
        mask[np.asarray(list(elements), dtype=np.int64) % ctx.p] = True
        return cls(ctx, mask)

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __len__(self):
        return self.cardinality

    def __iter__(self):
        return (int(x) for x in self.elements())

    def __contains__(self, x):
        return bool(self.mask[int(x) % self.ctx.p])

    def __eq__(self, other):
        if not isinstance(other, ResidueSet):
            return NotImplemented
        return self.ctx.p == other.ctx.p and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash((self.ctx.p, self.mask.tobytes()))

    def __repr__(self):
        elems = self.elements()
        shown = ", ".join(str(x) for x in elems[:8])
        more = ", ..." if len(elems) > 8 else ""
        return f"ResidueSet(p={self.ctx.p}, {{{shown}{more}}})"

    def complement(self) -> ResidueSet:
        """F_p^* minus this set."""
        mask = ~self.mask
        mask[0] = False
        return ResidueSet(self.ctx, mask)


def generator_powers(h: int, n: int, p: int) -> np.ndarray:
    out = np.empty(n, dtype=np.int64)
    x = 1
    for k in range(n):
        out[k] = x
        x = x * h % p
    return out


def _subgroup_generator(d: int, ctx: PrimeContext) -> int:
    if d < 1 or (ctx.p - 1) % d:
        raise InvalidSpec(f"subgroup order {d} does not divide p-1={ctx.p - 1}")
    return pow(ctx.g, (ctx.p - 1) // d, ctx.p)


def cyclic_order(spec: Subgroup | GeomProg, ctx: PrimeContext) -> np.ndarray:
    """Elements of a cyclic spec listed as consecutive powers of its generator."""
    if isinstance(spec, Subgroup):
        return generator_powers(_subgroup_generator(spec.d, ctx), spec.d, ctx.p)
    if isinstance(spec, GeomProg):
        base = ctx.g if spec.base is None else spec.base % ctx.p
        if spec.N < 1:
            raise InvalidSpec("geometric progression needs N >= 1")
        if base == 0 or mult_order(base, ctx) < spec.N:
            raise InvalidSpec(f"base {base} has order < N={spec.N}; elements repeat")
        return generator_powers(base, spec.N, ctx.p)
    raise InvalidSpec(f"{type(spec).__name__} has no cyclic order")


def build_set(spec: SetSpec, ctx: PrimeContext) -> ResidueSet:
    p = ctx.p
    if isinstance(spec, Interval):
        if spec.H < 1 or spec.H >= p:
            raise InvalidSpec(f"interval length must satisfy 1 <= H < p, got {spec.H}")
        # wraps modulo p; a multiple of p inside the range contributes nothing
        vals = np.arange(spec.L + 1, spec.L + spec.H + 1, dtype=np.int64) % p
        mask = np.zeros(p, dtype=bool)
        mask[vals] = True
        mask[0] = False
        return ResidueSet(ctx, mask)
    if isinstance(spec, (Subgroup, GeomProg)):
        return ResidueSet.from_elements(ctx, cyclic_order(spec, ctx))
    if isinstance(spec, Explicit):
        elems = spec.elements
        if any(e < 0 or e >= p for e in elems):
            raise InvalidSpec("explicit elements must lie in [0, p)")
        if len(set(elems)) != len(elems):
            raise InvalidSpec("duplicate explicit elements")
        return ResidueSet.from_elements(ctx, elems)
    raise InvalidSpec(f"unknown set spec {spec!r}")


def _check_same(A: ResidueSet, B: ResidueSet):
    if A.ctx.p != B.ctx.p:
        raise ContextMismatch(f"sets live modulo {A.ctx.p} and {B.ctx.p}")


def product_set(A: ResidueSet, B: ResidueSet) -> ResidueSet:
    """{ab mod p : a in A, b in B}."""
    _check_same(A, B)
    p = A.ctx.p
    if A.cardinality > B.cardinality:
        A, B = B, A
    b = B.elements()
    mask = np.zeros(p, dtype=bool)
    for a in A.elements():
        mask[(int(a) * b) % p] = True
    return ResidueSet(A.ctx, mask)


def m_fold_product(A: ResidueSet, m: int) -> ResidueSet:
    if m < 1:
        raise ValueError("m must be >= 1")
    out = A
    for _ in range(m - 1):
        out = product_set(out, A)
    return out


def doubling_ratio(U: ResidueSet) -> Fraction:
    if U.cardinality == 0:
        raise EmptySet("doubling ratio of the empty set")
    return Fraction(product_set(U, U).cardinality, U.cardinality)


def small_doubling_slice(G: Subgroup | GeomProg, N: int, ctx: PrimeContext) -> ResidueSet:
    """First N consecutive powers of G's generator; |U.U| <= 2N - 1."""
    powers = cyclic_order(G, ctx)
    if N < 1 or N > len(powers):
        raise SliceTooLarge(f"slice of size {N} from a set of size {len(powers)}")
    return ResidueSet.from_elements(ctx, powers[:N])


def dilate(U: ResidueSet, c: int) -> ResidueSet:
    p = U.ctx.p
    c %= p
    if c == 0:
        raise NotInvertible("dilation by 0")
    return ResidueSet.from_elements(U.ctx, (c * U.elements()) % p)


def undilate(U: ResidueSet, c: int) -> ResidueSet:
    return dilate(U, mod_inverse(c, U.ctx))
