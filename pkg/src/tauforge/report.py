"""Machine-readable check results."""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class IdentityReport:
    check: str
    tau: str
    status: str
    parameters: dict[str, Any] = field(default_factory=dict)
    residual_terms: Optional[int] = None
    side_terms: list[int] = field(default_factory=list)
    residual: Optional[float] = None
    tolerance: Optional[float] = None
    elapsed_ms: float = 0.0
    seed: Optional[int] = None
    label: str = "exact"
    notes: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def sort_key(self) -> tuple:
        # natural order on the tau id so staircase-10 sorts after staircase-9
        tau = tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in re.split(r"(\d+)", self.tau))
        return (self.check, tau, json.dumps(self.parameters, sort_keys=True))

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        d = asdict(self)
        if not include_timing:
            d.pop("elapsed_ms")
        return d

    def text_line(self) -> str:
        bits = [f"{self.status.upper():5s}", self.check, f"tau={self.tau}"]
        if self.parameters:
            bits.append(" ".join(f"{k}={v}" for k, v in sorted(self.parameters.items())))
        if self.residual_terms is not None:
            bits.append(f"residual_terms={self.residual_terms}")
        if self.side_terms:
            bits.append("side_terms=" + "/".join(map(str, self.side_terms)))
        if self.residual is not None:
            bits.append(f"residual={self.residual:.3e}")
        if self.label != "exact":
            bits.append(f"[{self.label}]")
        if self.message:
            bits.append(f"-- {self.message}")
        return "  ".join(bits)
