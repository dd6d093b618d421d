"""The chain algebra of Pin(2): F2[s, j] / (sj = j^3 s, s^2 = 0, j^4 = 1).

An element is an 8-bit mask over the monomials ``j^a s^b``; the monomial
``j^a s^b`` has index ``a + 4*b``.  ``s`` has degree 1, ``j`` degree 0, and the
differential is the derivation with ``ds = 1 + j^2``, ``dj = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

MONOMIALS = tuple(range(8))


def mono(a: int, b: int = 0) -> int:
    return (a % 4) + 4 * b


def mono_parts(m: int) -> tuple[int, int]:
    return m % 4, m // 4


def mono_name(m: int) -> str:
    a, b = mono_parts(m)
    if a == 0 and b == 0:
        return "1"
    out = ""
    if a == 1:
        out = "j"
    elif a > 1:
        out = f"j{a}"
    if b:
        out += "s"
    return out


def mono_mul(m1: int, m2: int) -> int | None:
    """Product of two monomials, or None when it vanishes (s*s = 0)."""
    a, b = mono_parts(m1)
    c, d = mono_parts(m2)
    if b and d:
        return None
    # s j^c = j^(3c) s
    shift = 3 * c if b else c
    return mono(a + shift, b | d)


def mono_degree(m: int) -> int:
    return m // 4


@dataclass(frozen=True)
class GElement:
    mask: int = 0

    def __post_init__(self):
        if not 0 <= self.mask < 256:
            raise ValueError("GElement mask must fit in 8 bits")

    @classmethod
    def monomial(cls, a: int, b: int = 0) -> "GElement":
        return cls(1 << mono(a, b))

    @classmethod
    def from_monomials(cls, *monos: tuple[int, int]) -> "GElement":
        mask = 0
        for a, b in monos:
            mask ^= 1 << mono(a, b)
        return cls(mask)

    def monomials(self) -> list[int]:
        return [m for m in MONOMIALS if self.mask >> m & 1]

    def __add__(self, other: "GElement") -> "GElement":
        return GElement(self.mask ^ other.mask)

    def __mul__(self, other: "GElement") -> "GElement":
        out = 0
        for m1 in self.monomials():
            for m2 in other.monomials():
                p = mono_mul(m1, m2)
                if p is not None:
                    out ^= 1 << p
        return GElement(out)

    def __bool__(self):
        return self.mask != 0

    def boundary(self) -> "GElement":
        out = 0
        for m in self.monomials():
            a, b = mono_parts(m)
            if b:
                # d(j^a s) = j^a (1 + j^2)
                out ^= (1 << mono(a)) ^ (1 << mono(a + 2))
        return GElement(out)

    def conjugate(self) -> "GElement":
        """Image under the anti-automorphism j -> j^3, s -> j^2 s.

        This is the rule that moves an algebra element across a balanced
        tensor product: ``(g e) (x) z ~ e (x) conjugate(g) z``.
        """
        out = 0
        for m in self.monomials():
            a, b = mono_parts(m)
            # conj(j^a s^b) = conj(s)^b conj(j)^a = (j^2 s)^b j^(3a)
            if b:
                # j^2 s j^(3a) = j^(2 + 9a) s
                out ^= 1 << mono(2 + 9 * a, 1)
            else:
                out ^= 1 << mono(3 * a)
        return GElement(out)

    def __repr__(self):
        if not self.mask:
            return "GElement(0)"
        return "GElement(" + " + ".join(mono_name(m) for m in self.monomials()) + ")"


ZERO = GElement(0)
ONE = GElement.monomial(0)
J = GElement.monomial(1)
S = GElement.monomial(0, 1)


def galg_mul(a: GElement, b: GElement) -> GElement:
    return a * b


def galg_boundary(a: GElement) -> GElement:
    return a.boundary()
