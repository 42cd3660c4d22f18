"""
Membership in the covered classes of n, and the theorem/corollary checkers
for the system xyz = ab^2, x + y + z = abc.
"""

from typing import Callable

from sumprod.arith import cubefree_decompose, v2_split
from sumprod.exceptions import DomainError
from sumprod.logging_config import get_child_logger, tracer
from sumprod.models.verdict import FormKind, NForm, TableRow, Verdict, VerdictStatus

# Create a child logger for this module
logger = get_child_logger("classify")

NOT_COVERED = NForm(form=FormKind.NOT_COVERED)

# Form set each theorem condition forces on n = a^2 b c^3.
THEOREM_FORM_SETS: dict[str, frozenset[FormKind]] = {
    "T1": frozenset({FormKind.FORM_64K}),
    "T2": frozenset(
        {
            FormKind.FORM_64K,
            FormKind.FORM_32K_MINUS_16,
            FormKind.FORM_16K_MINUS_4,
            FormKind.FORM_8K_MINUS_1,
        }
    ),
    "T3": frozenset({FormKind.FORM_64K, FormKind.FORM_32K_MINUS_16}),
    "T4": frozenset(
        {FormKind.FORM_64K, FormKind.FORM_32K_MINUS_16, FormKind.FORM_16K_MINUS_4}
    ),
    "T5": frozenset({FormKind.FORM_64K, FormKind.FORM_32K_MINUS_16}),
    "T6": frozenset({FormKind.FORM_2POW_PLUS_27}),
}

# With b = 1 the fifth theorem condition can never hold.
COROLLARY_LABELS = {"T1": "C1", "T2": "C2", "T3": "C3", "T4": "C4", "T6": "C5"}

_CONDITIONS: list[tuple[str, Callable[[int, int, int, NForm], bool]]] = [
    ("T1", lambda a, b, c, form: c % 4 == 0),
    ("T2", lambda a, b, c, form: (b * c) % 8 == 7),
    ("T3", lambda a, b, c, form: a % 4 == 0 and b % 2 == 1),
    ("T4", lambda a, b, c, form: a % 2 == 0 and (b * c) % 4 == 3),
    ("T5", lambda a, b, c, form: a % 2 == 1 and b % 4 == 2 and c % 2 == 0),
    ("T6", lambda a, b, c, form: form.form is FormKind.FORM_2POW_PLUS_27),
]


def classify_n(n: int) -> NForm:
    """
    Decide which covered family n belongs to, with exact witnesses.

    The residue tests are pairwise disjoint: 64 | n, n = 16 (mod 32),
    n = 12 (mod 16), n = 7 (mod 8), and odd n > 27 with v2(n - 27) odd
    and at least 3 (so n = 3 (mod 8)).
    """
    if n <= 0:
        raise DomainError(f"classify_n needs a positive integer, got {n}")
    if n % 64 == 0:
        return NForm(form=FormKind.FORM_64K, k=n // 64)
    if n % 32 == 16:
        return NForm(form=FormKind.FORM_32K_MINUS_16, k=(n + 16) // 32)
    if n % 16 == 12:
        return NForm(form=FormKind.FORM_16K_MINUS_4, k=(n + 4) // 16)
    if n % 8 == 7:
        return NForm(form=FormKind.FORM_8K_MINUS_1, k=(n + 1) // 8)
    if n > 27 and n % 2 == 1:
        r, odd = v2_split(n - 27)
        if r >= 3 and r % 2 == 1:
            return NForm(form=FormKind.FORM_2POW_PLUS_27, k=(odd + 1) // 2, m=(r - 1) // 2)
    return NOT_COVERED


def _require_positive(**values: int) -> None:
    for name, value in values.items():
        if value <= 0:
            raise DomainError(f"{name} must be a positive integer, got {value}")


def check_theorem(a: int, b: int, c: int) -> Verdict:
    """
    Evaluate every condition of the theorem for (a, b, c).

    All matching conditions are recorded, not only the first one.
    """
    _require_positive(a=a, b=b, c=c)
    with tracer.start_as_current_span("check_theorem") as span:
        n = a * a * b * c**3
        n_form = classify_n(n)
        matched = [label for label, test in _CONDITIONS if test(a, b, c, n_form)]
        status = VerdictStatus.PROVED_NO_SOLUTIONS if matched else VerdictStatus.UNKNOWN

        span.set_attribute("n", str(n))
        span.set_attribute("matched", ",".join(matched))
        logger.debug(
            "Theorem conditions evaluated",
            extra={"a": a, "b": b, "c": c, "matched": matched, "form": n_form.form.value},
        )
        return Verdict(
            query={"a": a, "b": b, "c": c},
            matched=matched,
            n=n,
            n_form=n_form,
            status=status,
        )


def check_corollary(a: int, n: int) -> Verdict:
    """
    The theorem with b = 1 and c = n, labelled C1..C5.
    """
    _require_positive(a=a, n=n)
    verdict = check_theorem(a, 1, n)
    return Verdict(
        query={"a": a, "n": n},
        matched=[COROLLARY_LABELS[label] for label in verdict.matched],
        n=verdict.n,
        n_form=verdict.n_form,
        status=verdict.status,
    )


def covered_upto(limit: int) -> list[tuple[int, NForm]]:
    """All covered n <= limit in ascending order, with their forms."""
    covered = []
    for n in range(1, limit + 1):
        form = classify_n(n)
        if form.covered:
            covered.append((n, form))
    return covered


def table_rows(limit: int) -> list[TableRow]:
    """One row per n in [1, limit], covered or not."""
    if limit < 1:
        raise DomainError(f"table limit must be positive, got {limit}")
    rows = []
    for n in range(1, limit + 1):
        form = classify_n(n)
        if form.covered:
            rows.append(TableRow(n=n, covered=True, form=form.form, k=form.k, m=form.m))
        else:
            rows.append(TableRow(n=n, covered=False))
    return rows


def case_coefficients(n: int) -> tuple[int, int]:
    """
    The coefficients (A, Bc) of x^3 + y^3 + A z^3 = Bc x y z the case analysis
    writes down for a covered n, pulling the power of two out first:
    n = 4m, 64m, 16m (m odd for 4m and 16m), or n odd.
    """
    form = classify_n(n)
    if form.form is FormKind.FORM_16K_MINUS_4:
        d = cubefree_decompose(n // 4)
        return 2 * d.p1**2 * d.p2, 2 * d.p1 * d.p2 * d.p3
    if form.form is FormKind.FORM_64K:
        d = cubefree_decompose(n // 64)
        return d.p1**2 * d.p2, 4 * d.p1 * d.p2 * d.p3
    if form.form is FormKind.FORM_32K_MINUS_16:
        d = cubefree_decompose(n // 16)
        return 4 * d.p1**2 * d.p2, 4 * d.p1 * d.p2 * d.p3
    if form.covered:
        d = cubefree_decompose(n)
        return d.p1**2 * d.p2, d.p1 * d.p2 * d.p3
    raise DomainError(f"n = {n} is not in a covered class")
