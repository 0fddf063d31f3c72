"""Text formats: presentation files, ideal literals and universe descriptions.

Presentation file::

    presentation <label>
    window <w>                  (optional)
    <ring> <rows> <cols>
    <matrix rows>

Blank lines and lines starting with ``#`` before the matrix header are
ignored.  A universe description is JSON::

    {"ring": "Z",
     "modules": [{"name": "Z/2", "presentation": "<presentation text>"}, ...],
     "maps": [{"source": "Z/4", "target": "Z/2", "kind": "surjection",
               "matrix": "<matrix text>"}, ...]}
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import ParseError, RingMismatchError
from .linalg.matrix import parse_matrix, parse_matrix_lines
from .modules.presentation import Presentation
from .rings import RingId, parse_u
from .torsion import ModuleUniverse
from .unitification import IdealFG


def format_presentation(P: Presentation) -> str:
    lines = [f"presentation {P.label}".rstrip()]
    if P.window is not None:
        lines.append(f"window {P.window}")
    return "\n".join(lines) + "\n" + P.relations.to_text()


def parse_presentation(text: str) -> Presentation:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    label, window = "", None
    i = 0
    seen_header = False
    while i < len(lines):
        raw = lines[i]
        s = raw.strip()
        if not s or s.startswith("#"):
            i += 1
            continue
        if s.startswith("presentation"):
            if seen_header:
                raise ParseError("duplicate 'presentation' line", i + 1, 1)
            seen_header = True
            label = s[len("presentation"):].strip()
            i += 1
            continue
        if s.startswith("window"):
            m = re.fullmatch(r"window\s+(\d+)", s)
            if not m:
                raise ParseError("expected 'window <positive integer>'", i + 1, 1)
            window = int(m.group(1))
            i += 1
            continue
        break
    if i >= len(lines):
        raise ParseError("missing relations matrix", i + 1, 1)
    matrix, used = parse_matrix_lines(lines[i:], i + 1)
    rest = [k for k in range(i + used, len(lines)) if lines[k].strip()]
    if rest:
        raise ParseError("trailing content after relations matrix", rest[0] + 1, 1)
    return Presentation(matrix.ring, matrix.rows, matrix, label, window)


def load_presentation(path) -> Presentation:
    return parse_presentation(Path(path).read_text())


def dump_presentation(P: Presentation, path) -> None:
    Path(path).write_text(format_presentation(P))


_IDEAL_ITEM = re.compile(r"\([^()]*\)")


def parse_ideal(text: str, line: int = 1) -> IdealFG:
    """``<(m; i,j), (n; ), ...>`` to an :class:`IdealFG`."""
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if not (s.startswith("<") and s.endswith(">")):
        raise ParseError("an ideal literal is '<(m; supp), ...>'", line, lead + 1)
    body = s[1:-1]
    pos = 0
    gens = []
    expect_item = True
    while pos < len(body):
        ch = body[pos]
        if ch.isspace():
            pos += 1
            continue
        col = lead + 2 + pos
        if expect_item:
            m = _IDEAL_ITEM.match(body, pos)
            if not m:
                raise ParseError("expected a generator '(m; supp)'", line, col)
            gens.append(parse_u(m.group(0), line, col))
            pos = m.end()
            expect_item = False
        else:
            if ch != ",":
                raise ParseError("expected ',' between generators", line, col)
            pos += 1
            expect_item = True
    if not gens:
        raise ParseError("an ideal needs at least one generator", line, lead + 1)
    if expect_item:
        raise ParseError("trailing ',' in ideal literal", line, lead + len(s))
    return IdealFG(tuple(gens))


def format_ideal(I: IdealFG) -> str:
    return str(I)


def universe_to_json(U: ModuleUniverse) -> str:
    doc = {
        "ring": str(U.ring),
        "modules": [{"name": n, "presentation": format_presentation(P)}
                    for n, P in U.modules.items()],
        "maps": [{"source": s, "target": t, "kind": f.kind, "matrix": f.matrix.to_text()}
                 for s, t, f in U.maps],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def universe_from_json(text: str) -> ModuleUniverse:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    for key in ("ring", "modules"):
        if key not in doc:
            raise ParseError(f"universe description lacks {key!r}", 1, 1)
    ring = RingId.parse(doc["ring"])
    U = ModuleUniverse(ring)
    for entry in doc["modules"]:
        P = parse_presentation(entry["presentation"])
        if P.ring != ring:
            raise RingMismatchError(f"module {entry['name']} is over {P.ring}, universe over {ring}")
        U.add(entry["name"], P)
    for entry in doc.get("maps", []):
        M = parse_matrix(entry["matrix"])
        if M.ring != ring:
            raise RingMismatchError(f"map {entry['source']}->{entry['target']} is over {M.ring}")
        U.declare(entry["source"], entry["target"], M, entry["kind"])
    return U


__all__ = [
    "dump_presentation", "format_ideal", "format_presentation",
    "load_presentation", "parse_ideal", "parse_presentation", "universe_from_json",
    "universe_to_json",
]
