"""Bit-exact alist reader/writer.

Format: line 1 "n m"; line 2 "max_dv max_dc"; line 3 the n variable degrees;
line 4 the m check degrees; then n lines of check neighbors per variable
(1-indexed, zero-padded to max_dv) and m lines of variable neighbors per
check (zero-padded to max_dc).  Whitespace-separated decimal integers with
LF line endings.  The writer emits neighbors in ascending order, so files it
produces round-trip byte-for-byte.
"""

from __future__ import annotations

from collections import Counter

from .errors import AlistParseError
from .graph import TannerGraph


def _parse_int_line(lines: list[str], idx: int, expect: int | None = None) -> list[int]:
    if idx >= len(lines):
        raise AlistParseError("unexpected end of file", line=idx + 1)
    parts = lines[idx].split()
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise AlistParseError(f"non-integer token in {parts!r}", line=idx + 1) from None
    if expect is not None and len(values) != expect:
        raise AlistParseError(f"expected {expect} integers, got {len(values)}", line=idx + 1)
    return values


def read_alist(text: str) -> TannerGraph:
    """Parse alist text; raises AlistParseError naming the offending line."""
    lines = text.splitlines()
    header = _parse_int_line(lines, 0, expect=2)
    n, m = header
    if n < 0 or m < 0:
        raise AlistParseError("negative dimensions", line=1)
    maxes = _parse_int_line(lines, 1, expect=2)
    max_dv, max_dc = maxes
    var_degs = _parse_int_line(lines, 2, expect=n)
    check_degs = _parse_int_line(lines, 3, expect=m)
    if var_degs and max(var_degs) > max_dv:
        raise AlistParseError("variable degree exceeds declared maximum", line=3)
    if check_degs and max(check_degs) > max_dc:
        raise AlistParseError("check degree exceeds declared maximum", line=4)
    if sum(var_degs) != sum(check_degs):
        raise AlistParseError("variable and check degree sums differ", line=4)

    edges: list[tuple[int, int]] = []
    for v in range(1, n + 1):
        lineno = 4 + v
        entries = _parse_int_line(lines, lineno - 1)
        if len(entries) != max_dv:
            raise AlistParseError(f"expected {max_dv} entries (zero-padded)", line=lineno)
        deg = var_degs[v - 1]
        neighbors = entries[:deg]
        if any(e == 0 for e in neighbors) or any(e != 0 for e in entries[deg:]):
            raise AlistParseError(f"degree {deg} inconsistent with zero padding", line=lineno)
        for c in neighbors:
            if not (1 <= c <= m):
                raise AlistParseError(f"check index {c} out of range 1..{m}", line=lineno)
            edges.append((v, c))

    check_mult: dict[int, Counter] = {}
    for c in range(1, m + 1):
        lineno = 4 + n + c
        entries = _parse_int_line(lines, lineno - 1)
        if len(entries) != max_dc:
            raise AlistParseError(f"expected {max_dc} entries (zero-padded)", line=lineno)
        deg = check_degs[c - 1]
        neighbors = entries[:deg]
        if any(e == 0 for e in neighbors) or any(e != 0 for e in entries[deg:]):
            raise AlistParseError(f"degree {deg} inconsistent with zero padding", line=lineno)
        for v in neighbors:
            if not (1 <= v <= n):
                raise AlistParseError(f"variable index {v} out of range 1..{n}", line=lineno)
        check_mult[c] = Counter(neighbors)

    # the two adjacency sections must describe the same edge multiset
    from_vars: dict[int, Counter] = {c: Counter() for c in range(1, m + 1)}
    for v, c in edges:
        from_vars[c][v] += 1
    for c in range(1, m + 1):
        if from_vars[c] != check_mult[c]:
            raise AlistParseError(
                f"check {c} neighbor list disagrees with the variable section",
                line=4 + n + c)
    return TannerGraph(n, m, tuple(edges))


def write_alist(g: TannerGraph) -> str:
    """Serialize to canonical alist text (sorted neighbor lists, LF endings)."""
    max_dv = max(g.var_degrees, default=0)
    max_dc = max(g.check_degrees, default=0)
    out = [f"{g.n_vars} {g.n_checks}", f"{max_dv} {max_dc}"]
    out.append(" ".join(str(d) for d in g.var_degrees))
    out.append(" ".join(str(d) for d in g.check_degrees))
    for adj in g.var_adj:
        row = sorted(adj) + [0] * (max_dv - len(adj))
        out.append(" ".join(str(x) for x in row))
    for adj in g.check_adj:
        row = sorted(adj) + [0] * (max_dc - len(adj))
        out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"
