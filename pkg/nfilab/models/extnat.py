"""
Entiers naturels étendus par un infini symbolique.

Toutes les capacités et tous les coûts passent par ce type : une arête de
coût INF ne peut jamais être retirée, une arête de capacité INF n'a pas de
limite de débit.
"""

from __future__ import annotations

from functools import total_ordering
from typing import Optional, Union

INF_TOKEN = "inf"


@total_ordering
class ExtNat:
    """Entier naturel ou INF. Immuable et hachable."""

    __slots__ = ("_value",)

    def __init__(self, value: Optional[int]):
        if value is not None:
            if isinstance(value, bool):
                raise TypeError("un booléen n'est pas un entier naturel")
            try:
                as_int = int(value)
            except (TypeError, ValueError) as e:
                raise TypeError(f"valeur non entière: {value!r}") from e
            if as_int != value:
                raise ValueError(f"valeur non entière: {value!r}")
            if as_int < 0:
                raise ValueError(f"valeur négative: {value}")
            value = as_int
        object.__setattr__(self, "_value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ExtNat est immuable")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------
    @classmethod
    def of(cls, value: Union["ExtNat", int, str]) -> "ExtNat":
        """Convertit un entier, un jeton texte ou un ExtNat."""
        if isinstance(value, ExtNat):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(value)

    @classmethod
    def parse(cls, token: str) -> "ExtNat":
        token = token.strip()
        if token.lower() == INF_TOKEN:
            return INF
        if not token.isdigit():
            raise ValueError(f"jeton invalide pour un entier naturel: {token!r}")
        return cls(int(token))

    # ------------------------------------------------------------------
    # Accès
    # ------------------------------------------------------------------
    @property
    def is_inf(self) -> bool:
        return self._value is None

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def value(self) -> int:
        if self._value is None:
            raise ArithmeticError("INF n'a pas de valeur entière")
        return self._value

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self._value is None or self._value != 0

    # ------------------------------------------------------------------
    # Arithmétique
    # ------------------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_inf or other.is_inf:
            return INF
        return ExtNat(self._value + other._value)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_inf:
            # INF - INF comme fini - INF ne sont jamais définis
            raise ArithmeticError(f"soustraction indéfinie: {self} - inf")
        if self.is_inf:
            return INF
        if other._value > self._value:
            raise ArithmeticError(f"résultat négatif: {self} - {other}")
        return ExtNat(self._value - other._value)

    def __mul__(self, other):
        if isinstance(other, ExtNat):
            if other.is_inf:
                return _mul_inf(self)
            other = other._value
        if isinstance(other, bool) or not isinstance(other, int):
            return NotImplemented
        if other < 0:
            raise ArithmeticError("multiplication par un entier négatif")
        if self.is_inf:
            return INF if other > 0 else ZERO
        return ExtNat(self._value * other)

    __rmul__ = __mul__

    # ------------------------------------------------------------------
    # Comparaisons
    # ------------------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._value == other._value

    def __lt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_inf:
            return False
        if other.is_inf:
            return True
        return self._value < other._value

    def __hash__(self):
        if self._value is None:
            return hash(INF_TOKEN)
        return hash(self._value)

    def __repr__(self):
        return "INF" if self._value is None else f"ExtNat({self._value})"

    def __str__(self):
        return INF_TOKEN if self._value is None else str(self._value)

    def to_json(self) -> Union[int, str]:
        """Forme sérialisable : entier ou "inf"."""
        return INF_TOKEN if self._value is None else self._value


def _coerce(other) -> Optional[ExtNat]:
    if isinstance(other, ExtNat):
        return other
    if isinstance(other, bool):
        return None
    if isinstance(other, int):
        return ExtNat(other) if other >= 0 else None
    return None


def _mul_inf(x: ExtNat) -> ExtNat:
    return ZERO if x == ZERO else INF


INF = ExtNat(None)
ZERO = ExtNat(0)


def ext_sum(values) -> ExtNat:
    """Somme d'un itérable d'ExtNat/entiers (ZERO si vide)."""
    total = ZERO
    for v in values:
        total = total + v
        if total.is_inf:
            return INF
    return total
