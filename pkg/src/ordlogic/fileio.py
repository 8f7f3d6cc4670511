"""Text formats for posets, denotation systems, scenarios, cases and distances.

Poset files::

    # comment
    elt a
    elt b
    lt a b
    bottom bot
    top top

Declaring ``bottom`` or ``top`` puts that element below or above every
other one.  Saving writes elements, bounds and covering pairs in sorted
order, so a saved file loads and saves back to the same bytes.

System files hold one ``ATOM = FORMULA`` line per denoted atom and
``free ATOM`` for atoms without a denotation.

Relation files reuse the poset line format: ``lt A B`` reads "A is
preferred to B" and no transitive closure is taken.

Scenario and case files are TOML.
"""

from __future__ import annotations

import csv
import io
import re
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ordlogic import analogy, order_core, reliability, size_logic, yablo
from ordlogic.formula import FormulaSyntaxError, parse


class ParseError(ValueError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class InvariantViolation(ValueError):
    def __init__(self, invariant, message):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield no, raw, line


def _col(raw, token):
    return raw.find(token) + 1 if token in raw else 1


def load_poset(text: str) -> order_core.Poset:
    elements, pairs = [], []
    bottom = top = None
    for no, raw, line in _lines(text):
        parts = line.split()
        key = parts[0]
        want = {"elt": 2, "lt": 3, "bottom": 2, "top": 2}
        if key not in want:
            raise ParseError(f"unknown directive {key!r}", no, _col(raw, key))
        if len(parts) != want[key]:
            raise ParseError(f"{key!r} takes {want[key] - 1} argument(s)", no, _col(raw, key))
        if key == "elt":
            if parts[1] in elements:
                raise InvariantViolation("DuplicateElement", f"line {no}: {parts[1]!r} declared twice")
            elements.append(parts[1])
        elif key == "lt":
            pairs.append((parts[1], parts[2]))
        elif key == "bottom":
            bottom = parts[1]
        else:
            top = parts[1]
    for name, bound in (("bottom", bottom), ("top", top)):
        if bound is not None and bound not in elements:
            raise InvariantViolation("UnknownElement", f"{name} {bound!r} is not declared")
    if bottom is not None:
        pairs += [(bottom, x) for x in elements if x != bottom]
    if top is not None:
        pairs += [(x, top) for x in elements if x != top]
    try:
        return order_core.build_poset(elements, pairs, bottom, top)
    except order_core.OrderError as e:
        raise InvariantViolation(type(e).__name__, str(e)) from None


def save_poset(P: order_core.Poset) -> str:
    out = [f"elt {e}" for e in P.ordered]
    if P.bottom is not None:
        out.append(f"bottom {P.bottom}")
    if P.top is not None:
        out.append(f"top {P.top}")
    out += [f"lt {a} {b}" for a, b in P.covers()]
    return "\n".join(out) + "\n"


def load_relation(text: str) -> size_logic.PrefStructure:
    elements, pairs = [], []
    for no, raw, line in _lines(text):
        parts = line.split()
        if parts[0] == "elt" and len(parts) == 2:
            elements.append(parts[1])
        elif parts[0] == "lt" and len(parts) == 3:
            pairs.append((parts[1], parts[2]))
        else:
            raise ParseError("expected 'elt NAME' or 'lt BETTER WORSE'", no, _col(raw, parts[0]))
    try:
        return size_logic.PrefStructure(elements, pairs)
    except size_logic.SizeError as e:
        raise InvariantViolation("MinimalElements", str(e)) from None


_DEF = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_']*)\s*=(.*)$")
_FREE = re.compile(r"^\s*free\s+([A-Za-z_][A-Za-z0-9_']*)\s*$")


def load_system(text: str) -> yablo.DenotationSystem:
    d, free = {}, []
    for no, raw, line in _lines(text):
        m = _FREE.match(line)
        if m:
            free.append(m.group(1))
            continue
        m = _DEF.match(line)
        if not m:
            raise ParseError("expected 'ATOM = FORMULA' or 'free ATOM'", no, 1)
        name, body = m.group(1), m.group(2)
        if name in d:
            raise InvariantViolation("DuplicateAtom", f"line {no}: {name} is defined twice")
        try:
            d[name] = parse(body)
        except FormulaSyntaxError as e:
            raise ParseError(str(e).rsplit(" at column", 1)[0], no, m.start(2) + e.pos + 1) from None
    try:
        return yablo.DenotationSystem(d, free)
    except yablo.YabloError as e:
        raise InvariantViolation(type(e).__name__, str(e)) from None


def save_system(sys_: yablo.DenotationSystem) -> str:
    return "\n".join(sys_.lines()) + "\n"


_TOML_POS = re.compile(r"\(at line (\d+), column (\d+)\)")


def _toml(text):
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        m = _TOML_POS.search(str(e))
        line, col = (int(m.group(1)), int(m.group(2))) if m else (1, 1)
        raise ParseError(_TOML_POS.sub("", str(e)).strip(), line, col) from None


def load_scenario(text: str) -> reliability.Scenario:
    try:
        return reliability.Scenario.from_dict(_toml(text))
    except (KeyError, TypeError) as e:
        raise InvariantViolation("ScenarioShape", f"missing or malformed field {e}") from None
    except (ValueError, ZeroDivisionError) as e:
        if isinstance(e, ParseError):
            raise
        raise InvariantViolation(type(e).__name__, str(e)) from None


def load_case(text: str) -> analogy.Case:
    try:
        return analogy.case_from_dict(_toml(text))
    except ParseError:
        raise
    except analogy.AnalogyError as e:
        raise InvariantViolation(type(e).__name__, str(e)) from None
    except (KeyError, TypeError, ValueError) as e:
        raise InvariantViolation("CaseShape", str(e)) from None


def load_distances(text: str):
    """Symmetric distance matrix from CSV with a header row of point names.

    Returns ``(points, d)`` where ``d(a, b)`` looks up the matrix.
    """
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
    if not rows:
        raise ParseError("empty distance file", 1)
    header = [h.strip() for h in rows[0][1:]]
    table = {}
    for no, row in enumerate(rows[1:], start=2):
        if len(row) != len(header) + 1:
            raise ParseError(f"expected {len(header) + 1} fields, found {len(row)}", no)
        name = row[0].strip()
        try:
            table[name] = {h: int(v) for h, v in zip(header, row[1:])}
        except ValueError as e:
            raise ParseError(str(e), no) from None
    if set(table) != set(header):
        raise InvariantViolation("SquareMatrix", "row names must match the header")
    for a in header:
        if table[a][a] != 0:
            raise InvariantViolation("ZeroDiagonal", f"d({a},{a}) is not 0")
        for b in header:
            if table[a][b] != table[b][a]:
                raise InvariantViolation("Symmetry", f"d({a},{b}) differs from d({b},{a})")
    return header, lambda a, b: table[a][b]
