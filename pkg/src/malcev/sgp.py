"""The .sgp text format.

Grammar (UTF-8, '#' starts a comment anywhere in a line):

  header:            "cayley <order>" | "transformations <degree>"
                     | "rees0 <n> <m>" | "rees <n> <m>"
  cayley body:       <order> lines of <order> space-separated 0-based ids,
                     then optional lines "zero <id>", "identity <id>",
                     "names <order tokens>"
  transformations:   one generator per line: <degree> integers, 1-based
                     point images, 0 denoting theta
  rees body:         a line "group", a nested cayley block, then <m> lines of
                     <n> entries: 0 for theta, else 1-based group element id

Parsing is deterministic: the same file always produces the same element
numbering.
"""
from __future__ import annotations

from .core import (
    FiniteSemigroup,
    ReesMatrixSpec,
    Transformation,
    from_rees,
    from_table,
    from_transformations,
)
from .errors import SemigroupError


def _logical_lines(text):
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_sgp(text):
    lines = _logical_lines(text)
    if not lines:
        raise SemigroupError("empty .sgp input")
    head = lines[0].split()
    body = lines[1:]
    if head[0] == "cayley":
        sg, rest = _parse_cayley(head, body)
        if rest:
            raise SemigroupError(f"trailing content after cayley block: {rest[0]!r}")
        return sg
    if head[0] == "transformations":
        if len(head) != 2:
            raise SemigroupError("transformations header needs a degree")
        degree = int(head[1])
        gens = []
        for line in body:
            vals = [int(v) for v in line.split()]
            if len(vals) != degree:
                raise SemigroupError(f"generator line has {len(vals)} images, "
                                     f"expected {degree}")
            gens.append(Transformation.from_one_based(vals))
        return from_transformations(degree, gens)
    if head[0] in ("rees", "rees0"):
        if len(head) != 3:
            raise SemigroupError("rees header needs n and m")
        n, m = int(head[1]), int(head[2])
        if not body or body[0] != "group":
            raise SemigroupError("rees body must start with a 'group' section")
        if len(body) < 2:
            raise SemigroupError("missing nested cayley block")
        group, rest = _parse_cayley(body[1].split(), body[2:])
        if len(rest) != m:
            raise SemigroupError(f"expected {m} sandwich rows, got {len(rest)}")
        P = []
        for line in rest:
            vals = [int(v) for v in line.split()]
            if len(vals) != n:
                raise SemigroupError("sandwich row has wrong width")
            P.append(tuple(None if v == 0 else v - 1 for v in vals))
        spec = ReesMatrixSpec(group, n, m, tuple(P),
                              with_zero=(head[0] == "rees0"))
        return from_rees(spec)
    raise SemigroupError(f"unknown .sgp header {head[0]!r}")


def _parse_cayley(head, body):
    if len(head) != 2 or head[0] != "cayley":
        raise SemigroupError(f"bad cayley header {' '.join(head)!r}")
    order = int(head[1])
    if len(body) < order:
        raise SemigroupError("cayley block shorter than its declared order")
    table = []
    for line in body[:order]:
        row = [int(v) for v in line.split()]
        if len(row) != order:
            raise SemigroupError("cayley row has wrong width")
        table.append(row)
    zero = identity = names = None
    k = order
    while k < len(body):
        toks = body[k].split()
        if toks[0] == "zero" and len(toks) == 2:
            zero = int(toks[1])
        elif toks[0] == "identity" and len(toks) == 2:
            identity = int(toks[1])
        elif toks[0] == "names":
            if len(toks) != order + 1:
                raise SemigroupError("names line needs one token per element")
            names = toks[1:]
        else:
            break
        k += 1
    return from_table(table, zero=zero, identity=identity, names=names), body[k:]


def write_sgp(S, comment=None):
    """Serialize as a cayley block (round-trips to an equal semigroup)."""
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append("# " + part)
    lines.append(f"cayley {S.order}")
    for row in S.table:
        lines.append(" ".join(str(int(v)) for v in row))
    if S.zero is not None:
        lines.append(f"zero {S.zero}")
    if S.identity is not None:
        lines.append(f"identity {S.identity}")
    if S.names is not None and all(" " not in nm for nm in S.names):
        lines.append("names " + " ".join(S.names))
    return "\n".join(lines) + "\n"
