from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class Verdict:
    """Outcome of a predicate.

    ``witness`` is present exactly when ``holds`` is false and is the
    lexicographically least violating tuple, labelled by ``roles``.
    """

    holds: bool
    witness: Optional[tuple] = None
    roles: tuple = ()
    stats: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ValueError("a holding verdict carries no witness")
        if not self.holds and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    def __bool__(self):
        return self.holds

    def labelled(self):
        if self.witness is None:
            return {}
        return dict(zip(self.roles, self.witness))

    def as_dict(self):
        d = {"holds": self.holds}
        if self.witness is not None:
            d["witness"] = [_plain(w) for w in self.witness]
            d["roles"] = list(self.roles)
        return d


def _plain(value: Any):
    if hasattr(value, "elements"):
        return list(value.elements)
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    return int(value)
