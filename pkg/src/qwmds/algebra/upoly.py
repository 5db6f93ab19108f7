from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class UPoly:
    """Univariate integer polynomial, ``coeffs[k]`` multiplies ``var**k``."""

    coeffs: tuple[int, ...] = ()
    var: str = "q"

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    @classmethod
    def from_dict(cls, terms: dict[int, int], var: str = "q") -> "UPoly":
        if not terms:
            return cls((), var)
        if min(terms) < 0:
            raise ValueError("negative exponent in a univariate polynomial")
        c = [0] * (max(terms) + 1)
        for k, v in terms.items():
            c[k] += v
        return cls(tuple(c), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs and self.var == other.var
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.var))

    def __str__(self):
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"UPoly({self})"

    @classmethod
    def parse(cls, text: str, var: str = "q") -> "UPoly":
        """Inverse of ``str`` for the simple sums it produces."""
        text = text.replace(" ", "")
        if text == "0":
            return cls((), var)
        if text[0] not in "+-":
            text = "+" + text
        terms: dict[int, int] = {}
        i = 0
        while i < len(text):
            j = i + 1
            while j < len(text) and text[j] not in "+-":
                j += 1
            chunk, sign = text[i + 1:j], -1 if text[i] == "-" else 1
            coef, _, mono = chunk.partition("*") if "*" in chunk else (
                (chunk, "", "") if chunk[0].isdigit() else ("1", "", chunk))
            if mono == "":
                k = 0
            elif mono == var:
                k = 1
            else:
                k = int(mono.split("^")[1])
            terms[k] = terms.get(k, 0) + sign * int(coef)
            i = j
        return cls.from_dict(terms, var)
