"""Dense graph6 encoding and decoding.

Only the dense (graph6) variant is supported; sparse6 and digraph6 are not.
"""

from __future__ import annotations

from .errors import CapacityError, Graph6Error
from .graph import MAX_ORDER, Graph

HEADER = ">>graph6<<"


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def upper_triangle_bits(g: Graph) -> list[int]:
    """Upper-triangle adjacency bits in graph6 order: (0,1), (0,2), (1,2), (0,3), ..."""
    return [g.adj[i] >> j & 1 for j in range(1, g.n) for i in range(j)]


def to_graph6(g: Graph) -> str:
    out = [_encode_order(g.n)]
    bitlist = upper_triangle_bits(g)
    bitlist += [0] * (-len(bitlist) % 6)
    for k in range(0, len(bitlist), 6):
        v = 0
        for b in bitlist[k:k + 6]:
            v = v << 1 | b
        out.append(chr(v + 63))
    return "".join(out)


def from_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise Graph6Error("non-ASCII byte", exc.start) from None
    text = text.rstrip("\n")
    base = 0
    if text.startswith(HEADER):
        base = len(HEADER)
    data = text[base:]
    if not data:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid character {ch!r}", base + i)

    vals = [ord(ch) - 63 for ch in data]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated order field", base + len(vals))
        n, pos = 0, 8
        for v in vals[2:8]:
            n = n << 6 | v
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated order field", base + len(vals))
        n, pos = 0, 4
        for v in vals[1:4]:
            n = n << 6 | v
    if n > MAX_ORDER:
        raise CapacityError(f"graph6 order {n} exceeds limit {MAX_ORDER}")

    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    body = vals[pos:]
    if len(body) != need:
        off = base + pos + min(len(body), need)
        raise Graph6Error(f"expected {need} data bytes for n={n}, found {len(body)}", off)
    pad = need * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("non-zero padding bits", base + pos + need - 1)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))
