"""
Structure union-find (ensembles disjoints) sur les entiers 0..n-1.

Union par taille et compression de chemin.
"""

from typing import Dict, List, Tuple


class UnionFind:
    """Partition de 0..n-1 maintenue par union-find."""

    def __init__(self, size: int):
        self.parents: List[int] = list(range(size))
        self.sizes: List[int] = [1] * size

    def find(self, item: int) -> int:
        root = item
        while self.parents[root] != root:
            root = self.parents[root]
        # compression de chemin
        while self.parents[item] != root:
            self.parents[item], item = root, self.parents[item]
        return root

    def union(self, a: int, b: int) -> bool:
        """Fusionne les classes de a et b ; False si elles étaient déjà confondues."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.sizes[ra] < self.sizes[rb]:
            ra, rb = rb, ra
        self.parents[rb] = ra
        self.sizes[ra] += self.sizes[rb]
        return True

    def same(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def relabel(self) -> Tuple[Tuple[int, ...], int]:
        """
        Numérote les classes dans l'ordre de leur plus petit élément.

        Returns:
            (mapping élément -> classe, nombre de classes)
        """
        labels: Dict[int, int] = {}
        mapping = []
        for item in range(len(self.parents)):
            root = self.find(item)
            if root not in labels:
                labels[root] = len(labels)
            mapping.append(labels[root])
        return tuple(mapping), len(labels)
