"""
reports.py
Property reports and the machine-readable report document

Every command renders either a human table (pandas) or a versioned JSON
document. JSON output is sorted and carries no timings unless asked for,
so the same command, seed and bounds always give byte-identical output.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from ideals.lattice import distributivity_holds, is_arithmetical, is_valuation_ring, lattice_for, verify_incomparable
from rings.core import CapabilityError, DEFAULT_IDEAL_BOUND, Ring
from rings.factory import construct_ring

logger = logging.getLogger(__name__)

# ---------------------------
# Report format
# ---------------------------
SCHEMA = "ringlab-report/1"
NOT_COMPUTED = "not computed"


# ============================
# PROPERTY REPORT
# ============================

@dataclass
class PropertyReport:
    expression: str
    label: str
    order: Optional[int]
    flags: Dict[str, Optional[bool]] = field(default_factory=dict)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    agreement: Dict[str, Optional[bool]] = field(default_factory=dict)
    local_factors: Optional[List[str]] = None
    ideal_count: Optional[int] = None
    zero_divisor_census: Optional[Dict[str, int]] = None
    notes: Dict[str, str] = field(default_factory=dict)
    witnesses_verified: bool = True

    @property
    def consistent(self) -> bool:
        """Witnesses replayed and independent methods agreed."""
        return self.witnesses_verified and all(v is not False for v in self.agreement.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "expression": self.expression,
            "ring": self.label,
            "order": self.order if self.order is not None else "infinite",
            "flags": {k: (NOT_COMPUTED if v is None else v) for k, v in self.flags.items()},
            "witnesses": self.witnesses,
            "agreement": self.agreement,
            "local_factors": self.local_factors if self.local_factors is not None else NOT_COMPUTED,
            "ideal_count": self.ideal_count if self.ideal_count is not None else NOT_COMPUTED,
            "zero_divisor_census": self.zero_divisor_census or NOT_COMPUTED,
            "notes": self.notes,
            "witnesses_verified": self.witnesses_verified,
        }

    def to_frame(self) -> pd.DataFrame:
        rows = [("ring", self.label), ("order", self.order if self.order is not None else "infinite")]
        for name, value in self.flags.items():
            shown = NOT_COMPUTED if value is None else ("yes" if value else "no")
            if name in self.witnesses:
                shown += f"  witness {self.witnesses[name]}"
            rows.append((name, shown))
        if self.local_factors is not None:
            rows.append(("local factors", " x ".join(self.local_factors)))
        if self.ideal_count is not None:
            rows.append(("ideals", self.ideal_count))
        if self.zero_divisor_census:
            rows.append(("census", ", ".join(f"{k} {v}" for k, v in self.zero_divisor_census.items())))
        for name, note in self.notes.items():
            rows.append((f"note ({name})", note))
        return pd.DataFrame(rows, columns=["property", "value"])


def _pair(ring: Ring, pair) -> List[str]:
    return [ring.format_element(x) for x in pair]


def property_report(ring: Ring, expression: str = "", max_order: int = DEFAULT_IDEAL_BOUND) -> PropertyReport:
    """All applicable checks; capability-limited fields are left as not computed."""
    report = PropertyReport(expression or ring.label, ring.label, ring.order)
    report.flags["finite"] = ring.order is not None

    try:
        locality = ring.is_local()
        report.flags["local"] = locality.is_local
        if not locality.is_local and locality.witness:
            a, b = locality.witness
            report.witnesses["local"] = _pair(ring, locality.witness)
            replay = ring.inverse(a) is None and ring.inverse(b) is None and ring.inverse(ring.add(a, b)) is not None
            report.witnesses_verified &= replay
    except CapabilityError as e:
        report.flags["local"] = None
        report.notes["local"] = str(e)

    try:
        valuation = is_valuation_ring(ring, max_order=max_order)
        report.flags["valuation"] = valuation.holds
        report.agreement["valuation"] = valuation.agreement
        if valuation.closed_form:
            report.notes["valuation"] = f"closed form: {valuation.reason}"
        if not valuation.holds and valuation.witness:
            report.witnesses["valuation"] = _pair(ring, valuation.witness)
            report.witnesses_verified &= verify_incomparable(ring, *valuation.witness)
    except CapabilityError as e:
        report.flags["valuation"] = None
        report.notes["valuation"] = str(e)

    try:
        arithmetical = is_arithmetical(ring, max_order=max_order)
        report.flags["arithmetical"] = arithmetical.holds
        report.agreement["arithmetical"] = arithmetical.agreement
        if arithmetical.witness:
            report.witnesses["arithmetical"] = [ideal.describe() for ideal in arithmetical.witness]
            lattice = lattice_for(ring)
            report.witnesses_verified &= not distributivity_holds(lattice, *(i.elements for i in arithmetical.witness))
    except CapabilityError as e:
        report.flags["arithmetical"] = None
        report.notes["arithmetical"] = str(e)

    if ring.order is not None:
        _finite_sections(ring, report, max_order)
    if not report.witnesses_verified:
        logger.error("A witness for %s did not re-verify", ring.label)
    return report


def _finite_sections(ring: Ring, report: PropertyReport, max_order: int) -> None:
    from rings.decomposition import local_decomposition

    decomposition = local_decomposition(ring)
    report.local_factors = [
        construct_ring(f.recognized).label if f.recognized is not None else f.ring.label
        for f in decomposition.factors
    ]
    if ring.order <= max_order:
        report.ideal_count = len(lattice_for(ring).ideal_sets(max_order))
    else:
        report.notes["ideals"] = f"order {ring.order} above --max-order {max_order}"
    units = zero_divisors = 0
    for a in ring.elements(bound=ring.order):
        if ring.inverse(a) is not None:
            units += 1
        elif ring.is_zero_divisor(a).holds:
            zero_divisors += 1
    report.zero_divisor_census = {
        "units": units,
        "zero_divisors": zero_divisors,
        "other": ring.order - units - zero_divisors,
    }


# ============================
# DOCUMENT OUTPUT
# ============================

def document(command: str, inputs: Dict[str, Any], result: Any, passed: bool) -> Dict[str, Any]:
    return {"schema": SCHEMA, "command": command, "input": inputs, "passed": passed, "result": result}


def render_json(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False, default=str)


def render_table(frame: pd.DataFrame) -> str:
    if frame.empty:
        return "(empty)"
    return frame.to_string(index=False)


def records_frame(records: Sequence[Dict[str, Any]], columns: Optional[Sequence[str]] = None) -> pd.DataFrame:
    return pd.DataFrame(list(records), columns=list(columns) if columns else None)


def write_csv(frame: pd.DataFrame, destination: Path) -> None:
    destination.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(destination, index=False)
    logger.info("Report table written to %s", destination)
