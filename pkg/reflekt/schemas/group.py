"""Pydantic schemas for group payloads and the group cache file."""
from pydantic import BaseModel, Field

from reflekt.services.group import GroupData, GroupKey, WreathElement


class GroupKeyModel(BaseModel):
    """Parameters of G(r,p,n)."""

    r: int = Field(..., ge=1)
    p: int = Field(..., ge=1)
    n: int = Field(..., ge=1)

    @classmethod
    def from_key(cls, key: GroupKey) -> "GroupKeyModel":
        return cls(r=key.r, p=key.p, n=key.n)

    def to_key(self) -> GroupKey:
        return GroupKey(self.r, self.p, self.n)


class ElementModel(BaseModel):
    """A wreath element; ``perm`` is 1-based one-line notation."""

    phases: list[int]
    perm: list[int]

    @classmethod
    def from_element(cls, g: WreathElement) -> "ElementModel":
        return cls(**g.to_json())

    def to_element(self, r: int) -> WreathElement:
        return WreathElement.from_json(self.model_dump(), r)


class GroupPayload(BaseModel):
    """Serialized GroupData."""

    key: GroupKeyModel
    order: int
    classes: list[list[ElementModel]]
    center: list[ElementModel]

    @classmethod
    def from_group(cls, group: GroupData) -> "GroupPayload":
        return cls(
            key=GroupKeyModel.from_key(group.key),
            order=group.order,
            classes=[[ElementModel.from_element(g) for g in c] for c in group.classes],
            center=[ElementModel.from_element(g) for g in group.center],
        )

    def to_group(self) -> GroupData:
        key = self.key.to_key()
        return GroupData.from_classes(
            key,
            [[e.to_element(key.r) for e in c] for c in self.classes],
            [e.to_element(key.r) for e in self.center],
        )


class GroupCacheFile(GroupPayload):
    """Cache file layout: the payload with the cache format version alongside."""

    version: int


class GroupSummary(BaseModel):
    """Response schema for the ``group`` subcommand."""

    key: GroupKeyModel
    order: int
    expected_order: int
    class_count: int
    center: list[ElementModel]
    center_matches_prediction: bool
    cache_hit: bool
