"""Conjuntos finitos de pontos em Z_n^d"""
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from znfal.exceptions import DimensionMismatchError, DuplicatePointError
from znfal.ring import Modulus, Vector, factorize


@dataclass(frozen=True)
class PointSet:
    """
    E contido em Z_n^d, sem repetições.

    Os pontos ficam reduzidos mod n e em ordem lexicográfica, então duas
    instâncias com o mesmo conjunto são iguais. O conjunto vazio é
    representável, mas as operações de distância o rejeitam.
    """
    modulus: Modulus
    d: int
    points: Tuple[Vector, ...]

    def __post_init__(self):
        if self.d < 1:
            raise DimensionMismatchError(f"Dimensão deve ser >= 1, recebida {self.d}")
        for point in self.points:
            if len(point) != self.d:
                raise DimensionMismatchError(
                    f"Ponto {point} tem {len(point)} coordenadas, esperado d={self.d}"
                )
            if any(not 0 <= c < self.modulus.n for c in point):
                raise DimensionMismatchError(f"Ponto {point} não está reduzido mod {self.modulus.n}")
        if len(set(self.points)) != len(self.points):
            raise DuplicatePointError("PointSet não aceita pontos repetidos")

    @classmethod
    def build(cls, n, d: int, points: Iterable, dedupe: bool = False) -> "PointSet":
        """
        Reduz coordenadas mod n e ordena

        Args:
            n: Módulo (int ou Modulus)
            d: Dimensão
            points: Iterável de sequências com d inteiros
            dedupe: Se True, descarta repetições em vez de falhar

        Raises:
            DuplicatePointError: pontos repetidos após a redução e dedupe=False
        """
        modulus = n if isinstance(n, Modulus) else factorize(n)
        reduced = []
        for point in points:
            point = tuple(point)
            if len(point) != d:
                raise DimensionMismatchError(
                    f"Ponto {point} tem {len(point)} coordenadas, esperado d={d}"
                )
            reduced.append(modulus.reduce_vector(point))
        unique = sorted(set(reduced))
        if not dedupe and len(unique) != len(reduced):
            raise DuplicatePointError(
                f"{len(reduced) - len(unique)} ponto(s) repetido(s) após redução mod {modulus.n}"
            )
        return cls(modulus=modulus, d=d, points=tuple(unique))

    @property
    def n(self) -> int:
        return self.modulus.n

    @property
    def size(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, point):
        return tuple(point) in set(self.points)

    def as_array(self) -> np.ndarray:
        """Matriz int64 (|E|, d)."""
        return np.array(self.points, dtype=np.int64).reshape(len(self.points), self.d)

    def translate(self, w) -> "PointSet":
        w = tuple(w)
        if len(w) != self.d:
            raise DimensionMismatchError(f"Translação {w} não tem dimensão {self.d}")
        return PointSet.build(
            self.modulus, self.d, (tuple(x + y for x, y in zip(p, w)) for p in self.points)
        )

    def subset(self, predicate) -> "PointSet":
        return PointSet(self.modulus, self.d, tuple(p for p in self.points if predicate(p)))

    def difference(self, other: "PointSet") -> "PointSet":
        removed = set(other.points)
        return PointSet(self.modulus, self.d, tuple(p for p in self.points if p not in removed))
