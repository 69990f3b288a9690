"""Wire models shared by the command line and the cache."""

import csv
import io
import json
from fractions import Fraction
from typing import Any, Literal

from pydantic import BaseModel, Field

Quantity = Literal[
    "r",
    "r_star",
    "e_min_ab",
    "e_min_nonab",
    "m_stable",
    "m_ideal",
    "p_exact",
    "p_mc",
    "census",
    "verify",
]


def fraction_text(x: Fraction | int) -> str:
    """Exact rationals travel as ``"num/den"``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


class Provenance(BaseModel):
    """Where a record came from.

    :ivar version: Library version that produced the record.
    :type version: str
    :ivar seed: Seed of the run, ``None`` for seedless commands.
    :type seed: int | None
    """

    version: str = Field(description="Library version that produced the record.")
    seed: int | None = Field(default=None, description="Seed of the run.")


class ResultRecord(BaseModel):
    """One command's output.

    :ivar config: Echo of the run configuration.
    :type config: dict
    :ivar quantity: The computed quantity.
    :type quantity: str
    :ivar ref: The statement the quantity belongs to.
    :type ref: str
    :ivar rows: The table, one mapping per row.
    :type rows: list[dict]
    :ivar provenance: Version and seed.
    :type provenance: Provenance
    :ivar passed: Whether every check carried by the rows holds.
    :type passed: bool
    :ivar notes: Scalar side results, e.g. a finite-range growth exponent.
    :type notes: dict[str, str]
    :ivar wall_ms: Wall time of the computation; not part of the emitted output.
    :type wall_ms: int
    """

    config: dict[str, Any] = Field(description="Echo of the run configuration.")
    quantity: Quantity = Field(description="The computed quantity.")
    ref: str = Field(description="The statement the quantity belongs to.")
    rows: list[dict[str, Any]] = Field(description="The table, one mapping per row.")
    provenance: Provenance = Field(description="Version and seed.")
    passed: bool = Field(default=True, description="Whether every check carried by the rows holds.")
    notes: dict[str, str] = Field(default_factory=dict, description="Scalar side results.")
    wall_ms: int = Field(default=0, description="Wall time of the computation.")

    def canonical(self) -> dict[str, Any]:
        """The deterministic part of the record."""
        return self.model_dump(mode="json", exclude={"wall_ms"})

    def to_json(self) -> str:
        return json.dumps(self.canonical(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        """The rows as CSV, columns in first-row order."""
        if not self.rows:
            return ""
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=list(self.rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: _csv_cell(v) for k, v in row.items()})
        return out.getvalue()


def _csv_cell(value: Any) -> Any:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return value
