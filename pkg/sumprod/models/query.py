from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict


class SelftestLevel(str, Enum):
    QUICK = "quick"
    FULL = "full"


class CheckResult(BaseModel):
    name: str
    passed: bool
    cases: int
    detail: Optional[str] = None

    model_config = ConfigDict(extra="forbid")


class SelftestReport(BaseModel):
    level: SelftestLevel
    checks: list[CheckResult]

    model_config = ConfigDict(extra="forbid")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class QueryRecord(BaseModel):
    """
    One CLI query and its outcome, serialized as a single JSON object.
    """

    command: str
    params: dict[str, Any]
    result: Optional[Any] = None
    status: int = 0
    error: Optional[str] = None

    model_config = ConfigDict(extra="forbid")
