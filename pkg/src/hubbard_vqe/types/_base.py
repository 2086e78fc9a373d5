from typing import TYPE_CHECKING, ClassVar

from pydantic_compat import BaseModel

if TYPE_CHECKING:
    from pydantic import ConfigDict


class _BaseModel(BaseModel):
    """Base model for all value types.

    Instances are frozen (and therefore hashable when every field is), so they can be
    shared between parallel runs and used as cache keys.
    """

    # unknown keys in config documents are ignored rather than rejected, so that
    # result files written by newer versions still load
    model_config: ClassVar["ConfigDict"] = {"frozen": True, "extra": "ignore"}
