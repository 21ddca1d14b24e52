#!/usr/bin/env python3
"""
Report Module
Assembles the report of every command as an ordered dict and renders it as
deterministic JSON or as plain `key: value` text.
"""

import json
import os
import sys
from typing import Any, Dict, List, Optional, Sequence

from modules import gf2
from modules.arf import arf, arf_majority, chain_form, count_arf, MAJORITY_MAX_RANK, spin_parity_arf, symplectic_basis
from modules.billiard import UnfoldingReport, format_angle
from modules.config import JSON_INDENT
from modules.cover import cover_pattern, spin_defined
from modules.spin import SpinParity, require_agreement, residue_counts, spin_parity_closed, spin_parity_sum, spin_parity_sum_of
from modules.stratum import Pattern, format_pattern, stratum_facts
from modules.utils import ConsistencyError, get_logger

logger = get_logger(__name__)

Report = Dict[str, Any]

_HEADINGS = {
    "stratum info": "📐",
    "cover": "🪞",
    "spin": "🧭",
    "arf chain": "🔗",
    "arf count": "🔢",
    "billiard classify": "🎱",
    "enumerate": "📋",
    "selftest": "🧪",
}


def _parity(parity: Optional[SpinParity]) -> Optional[str]:
    return None if parity is None else str(parity)


def stratum_report(p: Pattern) -> Report:
    facts = stratum_facts(p)
    check = spin_defined(p)
    return {
        "command": "stratum info",
        "pattern": format_pattern(p),
        "flavor": p.flavor.name.lower(),
        "genus": facts.genus,
        "dimension": facts.dimension,
        "nonempty": facts.nonempty,
        "connectedness": facts.connectedness.kind.value,
        "component_count": facts.connectedness.count,
        "spin_defined": check.defined,
        "spin_reason": check.reason,
        "warnings": [],
    }


def cover_report(base: Pattern, keep_marked: bool = False) -> Report:
    data = cover_pattern(base, keep_marked=keep_marked)
    warnings = []
    if data.square_candidate:
        warnings.append("all orders are even: a differential in this stratum may be a global square")
    return {
        "command": "cover",
        "base": format_pattern(data.base),
        "cover": format_pattern(data.cover),
        "ramification_count": data.ramification_count,
        "cover_genus": data.cover_genus,
        "h1_dim": data.h1_dim,
        "square_candidate": data.square_candidate,
        "warnings": warnings,
    }


def spin_report(p: Pattern) -> Report:
    """
    Raises:
        ConsistencyError: the three routes disagree
    """
    routes = {
        "closed": spin_parity_closed(p),
        "sum": spin_parity_sum_of(p),
        "arf": spin_parity_arf(p),
    }
    parity = require_agreement(routes)
    n_plus, n_minus = residue_counts(p.without_marked_points())
    warnings = []
    if not parity.is_defined:
        warnings.append(f"spin structure not defined: {parity.reason}")
    return {
        "command": "spin",
        "pattern": format_pattern(p),
        "defined": parity.is_defined,
        "parity": str(parity),
        "n_plus": n_plus,
        "n_minus": n_minus,
        "route_closed": str(routes["closed"]),
        "route_sum": str(routes["sum"]),
        "route_arf": str(routes["arf"]),
        "routes_agree": True,
        "warnings": warnings,
    }


def arf_chain_report(odd_orders: Sequence[int]) -> Report:
    """
    Chain form of the odd orders (in the given order) with its symplectic
    basis, Arf invariant, and the sum route on the same ordering when the
    orders admit it.

    Raises:
        ConsistencyError: Arf, majority value or sum route disagree
    """
    orders = list(odd_orders)
    form = chain_form(orders)
    basis = symplectic_basis(form.intersection)
    value = arf(form, basis)
    warnings = []

    majority = None
    if form.rank <= MAJORITY_MAX_RANK:
        majority = arf_majority(form)
        if majority != value:
            raise ConsistencyError(f"Arf {value} differs from the majority value {majority}")
    else:
        warnings.append(f"rank {form.rank} above {MAJORITY_MAX_RANK}: majority check skipped")

    route_sum = None
    if min(orders) < -1:
        warnings.append(f"order {min(orders)} is below -1: sum route skipped")
    elif sum(orders) % 4:
        warnings.append("orders do not sum to 0 mod 4: sum route skipped")
    else:
        route_sum = spin_parity_sum(orders)
        if route_sum.bit != value:
            raise ConsistencyError(f"Arf {value} differs from the sum route ({route_sum})")

    return {
        "command": "arf chain",
        "odd_orders": orders,
        "rank": form.rank,
        "values": form.value_list(),
        "intersection": form.matrix(),
        "basis": [
            {"a": [i + 1 for i in gf2.support(a)], "b": [i + 1 for i in gf2.support(b)]}
            for a, b in basis.pairs
        ],
        "arf": value,
        "arf_majority": majority,
        "parity": str(SpinParity.from_bit(value)),
        "route_sum": _parity(route_sum),
        "routes_agree": True,
        "warnings": warnings,
    }


def arf_count_report(g: int) -> Report:
    """
    Raises:
        ConsistencyError: the counts differ from 2^(g-1) (2^g + 1) and 2^(g-1) (2^g - 1)
    """
    arf0, arf1 = count_arf(g)
    expected = (2 ** (g - 1) * (2 ** g + 1), 2 ** (g - 1) * (2 ** g - 1))
    if (arf0, arf1) != expected:
        raise ConsistencyError(f"genus {g}: counted {(arf0, arf1)}, expected {expected}")
    return {
        "command": "arf count",
        "genus": g,
        "count_arf0": arf0,
        "count_arf1": arf1,
        "total": arf0 + arf1,
        "note": "Arf 0 forms are the even spin structures and the more numerous ones",
        "routes_agree": True,
        "warnings": [],
    }


def billiard_report(report: UnfoldingReport) -> Report:
    return {
        "command": "billiard classify",
        "angles": [format_angle(a) for a in report.table.angles],
        "relax_polygon": report.table.relax_polygon,
        "N": report.N,
        "genus": report.genus,
        "abelian_pattern": format_pattern(report.abelian_pattern),
        "fake_zero_count": report.fake_zero_count,
        "quadratic_pattern": format_pattern(report.quadratic_pattern),
        "Q": report.Q,
        "is_abelian_square": report.is_abelian_square,
        "spin": str(report.spin),
        "spin_reason": report.spin.reason,
        "component_label": report.component_label,
        "hyperelliptic_parity": _parity(report.hyperelliptic_parity),
        "verdict": report.verdict.value,
        "routes_agree": report.routes_agree,
        "warnings": list(report.warnings),
    }


def enumerate_row(p: Pattern) -> Report:
    facts = stratum_facts(p)
    check = spin_defined(p)
    parity = None
    if p.is_quadratic:
        parity = require_agreement({"closed": spin_parity_closed(p), "sum": spin_parity_sum_of(p)})
    return {
        "pattern": format_pattern(p),
        "genus": facts.genus,
        "dimension": facts.dimension,
        "nonempty": facts.nonempty,
        "connectedness": facts.connectedness.kind.value,
        "spin_defined": check.defined,
        "parity": _parity(parity),
    }


def enumerate_report(patterns: Sequence[Pattern], flavor_name: str, max_sum: int,
                     max_zero_mass: Optional[int], max_entries: Optional[int]) -> Report:
    rows = [enumerate_row(p) for p in patterns]
    logger.debug("%d pattern(s) enumerated", len(rows))
    return {
        "command": "enumerate",
        "flavor": flavor_name,
        "max_sum": max_sum,
        "max_zero_mass": max_zero_mass,
        "max_entries": max_entries,
        "count": len(rows),
        "patterns": rows,
        "routes_agree": True,
        "warnings": [],
    }


def render_json(report: Report) -> str:
    return json.dumps(report, indent=JSON_INDENT, ensure_ascii=True) + "\n"


def _text_value(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return ",".join(_text_value(v) for v in value) if value else "-"
    return str(value)


def _text_table(rows: List[Dict[str, Any]]) -> List[str]:
    lines = []
    for row in rows:
        lines.append("   " + "  ".join(f"{k}={_text_value(v)}" for k, v in row.items()))
    return lines


def render_text(report: Report) -> str:
    command = report["command"]
    icon = _HEADINGS.get(command, "•")
    lines = [f"{icon} {command}"]
    for key, value in report.items():
        if key in ("command", "warnings"):
            continue
        if key == "intersection":
            lines.append(f"{key}:")
            lines.extend("   " + " ".join(str(bit) for bit in row) for row in value)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            lines.extend(_text_table(value))
        else:
            lines.append(f"{key}: {_text_value(value)}")
    for warning in report.get("warnings", []):
        lines.append(f"⚠️  {warning}")
    return "\n".join(lines) + "\n"


def render(report: Report, as_json: bool) -> str:
    return render_json(report) if as_json else render_text(report)


def export_report(text: str, filepath: str) -> bool:
    """Write a rendered report to a file, creating the directory if needed."""
    if not filepath or filepath.isspace():
        print("❌ Please provide a valid file path.", file=sys.stderr)
        return False

    filepath = filepath.strip()
    if os.path.isdir(filepath):
        print("❌ Please provide a full file path, not a directory.", file=sys.stderr)
        return False

    dir_path = os.path.dirname(filepath)
    if dir_path and not os.path.exists(dir_path):
        try:
            os.makedirs(dir_path, exist_ok=True)
        except OSError as e:
            print(f"❌ Failed to create directory: {e}", file=sys.stderr)
            return False

    try:
        with open(filepath, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        print(f"❌ Failed to write report: {e}", file=sys.stderr)
        return False

    print(f"✅ Report written to '{filepath}'", file=sys.stderr)
    return True
