from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict


class FormKind(str, Enum):
    """
    The five families of n for which x^3 + y^3 + n^2 z^3 = nxyz has no
    positive integer solutions, plus NOT_COVERED.
    """

    FORM_16K_MINUS_4 = "16k-4"
    FORM_64K = "64k"
    FORM_32K_MINUS_16 = "32k-16"
    FORM_8K_MINUS_1 = "8k-1"
    FORM_2POW_PLUS_27 = "2^(2m+1)(2k-1)+27"
    NOT_COVERED = "not_covered"


class NForm(BaseModel):
    form: FormKind
    k: Optional[int] = None
    m: Optional[int] = None

    model_config = ConfigDict(extra="forbid", frozen=True)

    @property
    def covered(self) -> bool:
        return self.form is not FormKind.NOT_COVERED

    def reconstruct(self) -> Optional[int]:
        """Evaluate the family formula on the stored witnesses."""
        k, m = self.k, self.m
        if self.form is FormKind.FORM_16K_MINUS_4:
            return 16 * k - 4
        if self.form is FormKind.FORM_64K:
            return 64 * k
        if self.form is FormKind.FORM_32K_MINUS_16:
            return 32 * k - 16
        if self.form is FormKind.FORM_8K_MINUS_1:
            return 8 * k - 1
        if self.form is FormKind.FORM_2POW_PLUS_27:
            return 2 ** (2 * m + 1) * (2 * k - 1) + 27
        return None


class VerdictStatus(str, Enum):
    """
    PROVED_NO_SOLUTIONS: some listed condition applies.
    UNKNOWN: the criteria are silent; this never asserts solvability.
    """

    PROVED_NO_SOLUTIONS = "proved_no_solutions"
    UNKNOWN = "unknown"


class Verdict(BaseModel):
    query: dict[str, int]
    matched: list[str]
    n: int  # a^2 b c^3
    n_form: NForm
    status: VerdictStatus

    model_config = ConfigDict(extra="forbid")


class TableRow(BaseModel):
    n: int
    covered: bool
    form: Optional[FormKind] = None
    k: Optional[int] = None
    m: Optional[int] = None

    model_config = ConfigDict(extra="forbid")
