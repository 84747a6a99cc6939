"""Total maps on an enumerated group, stored as action tables."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

from reflekt.errors import NotAHomomorphismError, NotAnAutomorphismError, ParameterError
from reflekt.services.group import GroupData, GroupKey, WreathElement, multiply

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GroupMap:
    """A map G → G given by ``images[i]`` = ordinal of the image of ``group.elements[i]``."""

    group: GroupData
    images: tuple[int, ...]
    name: str = ""

    @classmethod
    def from_function(
        cls,
        group: GroupData,
        fn: Callable[[WreathElement], WreathElement],
        name: str = "",
        audit: bool = True,
    ) -> GroupMap:
        """
        Tabulate fn on every element.

        Raises:
            NotAnAutomorphismError: an image leaves the group, or the audit fails
        """
        images = []
        for g in group.elements:
            h = fn(g)
            ordinal = group.index.get(h)
            if ordinal is None:
                raise NotAnAutomorphismError(
                    f"{name or 'map'} sends {g} outside {group.key}", "closure"
                )
            images.append(ordinal)
        result = cls(group, tuple(images), name)
        if audit:
            result.audit()
        return result

    @classmethod
    def identity(cls, group: GroupData) -> GroupMap:
        return cls(group, tuple(range(group.order)), "id")

    @property
    def key(self) -> GroupKey:
        return self.group.key

    def __call__(self, g: WreathElement) -> WreathElement:
        return self.group.elements[self.images[self.group.index[g]]]

    def compose(self, other: GroupMap) -> GroupMap:
        """self∘other."""
        if other.group is not self.group and other.key != self.key:
            raise ParameterError(f"cannot compose maps on {self.key} and {other.key}")
        return GroupMap(
            self.group,
            tuple(self.images[i] for i in other.images),
            f"{self.name}*{other.name}" if self.name and other.name else "",
        )

    def inverse(self) -> GroupMap:
        if not self.is_bijective:
            raise NotAnAutomorphismError(f"{self.name or 'map'} is not bijective", "bijective")
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return GroupMap(self.group, tuple(inv), f"{self.name}^-1" if self.name else "")

    @property
    def is_bijective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    @property
    def is_involution(self) -> bool:
        return self.compose(self).is_identity

    def order(self) -> int:
        current, k = self, 1
        while not current.is_identity:
            current = current.compose(self)
            k += 1
        return k

    def generator_images(self) -> tuple[int, ...]:
        """Ordinals of the images of the group's generators; they determine the map."""
        index = self.group.index
        return tuple(self.images[index[s]] for s in self.group.generators)

    def is_multiplicative(self) -> bool:
        """φ(gs) = φ(g)φ(s) for every g and every generator s, hence for all pairs."""
        group = self.group
        index, elements = group.index, group.elements
        for s in group.generators:
            s_image = elements[self.images[index[s]]]
            for i, g in enumerate(elements):
                product = index[multiply(g, s)]
                if elements[self.images[product]] != multiply(elements[self.images[i]], s_image):
                    return False
        return True

    def audit(self) -> None:
        """
        Check bijectivity and multiplicativity on the full table.

        Raises:
            NotAnAutomorphismError: not bijective
            NotAHomomorphismError: not multiplicative
        """
        if not self.is_bijective:
            raise NotAnAutomorphismError(f"{self.name or 'map'} is not bijective", "bijective")
        if not self.is_multiplicative():
            raise NotAHomomorphismError(f"{self.name or 'map'} is not multiplicative")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupMap):
            return NotImplemented
        return self.key == other.key and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.key, self.images))


def inverse_transpose_map(group: GroupData) -> GroupMap:
    """τ(g) = (g⁻¹)^T = ḡ."""
    return GroupMap.from_function(group, WreathElement.bar, "inverse-transpose")
